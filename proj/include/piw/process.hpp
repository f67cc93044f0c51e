#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace piw {

enum class Namespace : std::uint8_t { source, reserved };

/// A channel name. Reserved names are never produced by the parser unless
/// explicitly allowed and render with a leading '%'.
struct Name {
  std::string id;
  Namespace ns = Namespace::source;

  bool reserved() const { return ns == Namespace::reserved; }
  std::string str() const { return reserved() ? "%" + id : id; }

  auto operator<=>(const Name&) const = default;
};

inline Name source_name(std::string id) { return Name{std::move(id), Namespace::source}; }
inline Name reserved_name(std::string id) { return Name{std::move(id), Namespace::reserved}; }

using NameSet = std::set<Name>;
using NameMap = std::map<Name, Name>;

enum class Kind : std::uint8_t { nil, output, input, par, restrict, repl, success, hole };

class Process;

namespace detail {
struct Node;
}

/// Immutable π-term with structural sharing. Copying is cheap.
class Process {
 public:
  Process();

  static Process nil();
  static Process success();
  static Process output(Name chan, Name datum, Process cont = Process());
  static Process input(Name chan, Name binder, Process cont);
  static Process par(Process left, Process right);
  static Process restrict(Name binder, Process body);
  static Process repl(Process body);
  /// Numbered hole, only meaningful inside a Context.
  static Process hole(int index);

  Kind kind() const;
  bool is_nil() const { return kind() == Kind::nil; }

  // output / input
  const Name& channel() const;
  // output
  const Name& datum() const;
  // input / restrict
  const Name& binder() const;
  // output / input continuation, restrict / repl body
  const Process& body() const;
  // par
  const Process& left() const;
  const Process& right() const;
  int hole_index() const;

  bool operator==(const Process& other) const;
  bool operator!=(const Process& other) const { return !(*this == other); }

 private:
  explicit Process(std::shared_ptr<const detail::Node> node);
  std::shared_ptr<const detail::Node> node_;
};

namespace detail {
struct Node {
  Kind kind = Kind::nil;
  Name a;  // channel (output/input) or binder (restrict)
  Name b;  // datum (output) or binder (input)
  Process p;
  Process q;
  int hole = 0;
};
}  // namespace detail

struct NameSets {
  NameSet free;
  NameSet bound;
  NameSet all;
};

NameSets free_names(const Process& p);
NameSet fn(const Process& p);
/// Every name occurring in p, free or bound.
NameSet names(const Process& p);

/// Node count; Nil continuations of prefixes and Nil operands are not
/// counted, so a lone prefix has size 1. The empty process has size 1.
std::size_t size(const Process& p);

/// True iff every output has the empty continuation.
bool is_asynchronous(const Process& p);
bool is_replication_free(const Process& p);
bool uses_only_source_names(const Process& p);
bool has_reserved_free_names(const Process& p);

/// A name in the namespace of `hint` that is not in `avoid`, obtained by
/// appending primes to the hint.
Name fresh_variant(const Name& hint, const NameSet& avoid);

/// Capture-avoiding simultaneous renaming of free names.
Process rename(const Process& p, const NameMap& sigma);

/// P{w/y}: replace each free y by w, alpha-converting on capture.
Process substitute(const Process& p, const Name& y, const Name& w);

/// Canonical alpha-representative: the i-th binder in depth-first,
/// left-to-right order is renamed to the reserved name "a<i>".
Process alpha_normalize(const Process& p);
bool alpha_eq(const Process& p, const Process& q);

}  // namespace piw
