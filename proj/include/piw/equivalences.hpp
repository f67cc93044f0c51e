#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "piw/observables.hpp"
#include "piw/process.hpp"
#include "piw/semantics.hpp"

namespace piw {

enum class Equivalence : std::uint8_t { ewb, wot, wab, wbb, awbb, wcb, srwrb };

std::string equivalence_name(Equivalence e);
std::optional<Equivalence> parse_equivalence(const std::string& text);

/// Label-based kinds compare transitions; the rest compare reductions and
/// barbs.
bool is_label_based(Equivalence e);

struct RelationKind {
  Equivalence tag = Equivalence::wbb;
  bool divergence_preserving = false;
  bool branching = false;  // reduction-based kinds only
};

std::string describe(const RelationKind& kind);

/// Barbs compared by a reduction-based kind (empty for label-based kinds).
std::set<BarbKind> observed_barbs(Equivalence e);

enum class Outcome : std::uint8_t { related, not_related, unknown };

std::string outcome_name(Outcome o);

struct WitnessStep {
  std::string text;
  Process left;
  Process right;
};

struct Verdict {
  Outcome outcome = Outcome::unknown;
  /// Related: the relation found, as canonical pairs.
  std::vector<std::pair<Process, Process>> relation;
  /// NotRelated: moves from the root pair down to an unmatchable obligation.
  std::vector<WitnessStep> witness;
  /// Unknown: why no exact answer was reached.
  std::string reason;
  std::vector<std::string> notes;
  std::size_t pairs_explored = 0;
};

struct CheckOptions {
  /// Overrides the observed barbs of a reduction-based kind. SRWRB accepts
  /// only {succ}.
  std::optional<std::set<BarbKind>> barbs;
  /// Give up (Unknown) beyond this many candidate pairs.
  std::size_t max_pairs = 200000;
};

/// Greatest relation of the given kind between the bounded state spaces of p
/// and q. Exact when the explored spaces have no frontier. Throws
/// std::invalid_argument on a misconfigured barb override or branching on a
/// label-based kind.
Verdict check_bisim(const RelationKind& kind, const Process& p, const Process& q, std::size_t depth,
                    const CheckOptions& options = {});

/// Pairs of `relation` with a clause of `kind` that cannot be matched inside
/// the relation. Empty for a genuine bisimulation.
std::vector<std::string> audit(const RelationKind& kind, const std::vector<std::pair<Process, Process>>& relation,
                               std::size_t depth, const CheckOptions& options = {});

enum class SaturationMode : std::uint8_t { weak, branching };

struct SaturatedFragment {
  LtsFragment fragment;
  /// tau* successors of every state, including itself.
  std::vector<std::vector<std::size_t>> tau_reach;
  /// States whose weak moves may be missing because a frontier is reachable.
  std::vector<bool> incomplete;
};

/// Weak mode replaces the edges by weak ones (tau* and tau* a tau*; tau
/// edges are the reflexive-transitive closure). Branching mode keeps the
/// single steps.
SaturatedFragment saturate(const LtsFragment& f, SaturationMode mode);

}  // namespace piw
