#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "piw/process.hpp"

namespace piw {

/// Structural-congruence normal form. At every parallel level all
/// restrictions are extruded to a single block whose binders occur free in
/// the level, the components (prefixes, replications, success) are sorted
/// by rendered text, and binders are named by nesting depth.
struct CongruenceNF {
  Process canonical;
  std::size_t unfold_budget = 0;

  bool operator==(const CongruenceNF& other) const { return canonical == other.canonical; }
};

CongruenceNF normalize(const Process& p, std::size_t unfold_budget = 0);

/// Shorthand for normalize(p).canonical.
Process canonical(const Process& p);

/// Canonical text of a normal form; equal keys iff equal normal forms.
std::string canonical_key(const Process& p);

/// Normal forms reachable from p by at most `budget` replication unfoldings
/// (!P to P | !P) at any position; always contains normalize(p).
std::vector<Process> unfoldings(const Process& p, std::size_t budget);

/// Sound for structural congruence; complete for replication-free terms.
bool congruent(const Process& p, const Process& q, std::size_t unfold_budget);

/// Top-level parallel components of a normal form together with its
/// restriction block.
struct Level {
  std::vector<Name> binders;
  std::vector<Process> components;
};

Level split_level(const Process& canonical_form);
Process assemble_level(const Level& level);

}  // namespace piw
