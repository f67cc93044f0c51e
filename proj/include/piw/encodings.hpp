#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "piw/process.hpp"

namespace piw {

enum class Scheme : std::uint8_t { boudol, honda_tokoro };

std::string scheme_name(Scheme s);
std::optional<Scheme> parse_scheme(const std::string& text);

/// An encoding scheme together with its renaming policy (the identity on
/// names, arity 1) and its generator of fresh protocol names.
struct EncodingScheme {
  Scheme tag = Scheme::boudol;

  /// Renaming policy: every name maps to the singleton tuple of itself.
  std::vector<Name> renaming_policy(const Name& n) const { return {n}; }
};

/// Two distinct reserved names (%uK, %vK) for the smallest K with neither
/// in `avoid`.
std::pair<Name, Name> fresh_pair(const NameSet& avoid);

/// Translation into the asynchronous fragment. Success translates to
/// itself. Throws std::invalid_argument when p has reserved free names,
/// unless allow_reserved is set.
Process encode(Scheme scheme, const Process& p, bool allow_reserved = false);

/// A term with numbered holes [_1]..[_k].
struct Context {
  Process term;
  std::size_t holes = 0;
  /// Binders of the operator itself (input object, restricted name). They
  /// are meant to capture names of the arguments.
  NameSet operator_binders;

  bool univariate() const;
};

/// Replaces each hole verbatim, without renaming context binders.
Process fill(const Context& c, const std::vector<Process>& args);
/// Alpha-converts protocol binders of the context that would capture free
/// names of an argument before filling.
Process fill_capture_avoiding(const Context& c, const std::vector<Process>& args);

enum class OperatorKind : std::uint8_t { nil, output, input, par, restrict, repl, success };

struct Operator {
  OperatorKind kind = OperatorKind::nil;
  Name x;  // channel (output/input) or binder (restrict)
  Name y;  // datum (output) or binder (input)

  std::size_t arity() const;
  /// op(S1..Sk)
  Process apply(const std::vector<Process>& args) const;
  std::string describe() const;
};

/// Top-level operator of p and its arguments.
std::pair<Operator, std::vector<Process>> decompose(const Process& p);

/// The context C_op^N: encode(op(S1..Sk)) equals it filled with the
/// encoded arguments, for all Si whose free names are `names`.
Context encoding_context(Scheme scheme, const Operator& op, const NameSet& names);

/// The name-independent context, using the first fresh pair.
Context fixed_encoding_context(Scheme scheme, const Operator& op);

}  // namespace piw
