#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piw/encodings.hpp"
#include "piw/equivalences.hpp"
#include "piw/process.hpp"

namespace piw {

enum class Criterion : std::uint8_t { c, cprime, i, s, w, g };

std::string criterion_name(Criterion c);
std::optional<Criterion> parse_criterion(const std::string& text);

enum class LemmaId : std::uint8_t { l1, l2, l2star, postponed_barbs, l5, l6 };

std::string lemma_name(LemmaId id);
std::optional<LemmaId> parse_lemma(const std::string& text);

enum class CheckOutcome : std::uint8_t { pass, fail, unknown };

std::string check_outcome_name(CheckOutcome o);

struct CheckReport {
  std::string id;
  std::map<std::string, std::string> instance;
  CheckOutcome outcome = CheckOutcome::unknown;
  std::optional<Verdict> verdict;
  std::vector<std::string> witness;
  std::map<std::string, std::string> details;
};

/// All Q with P inert-reducing to Q in one step (canonical, sorted).
/// Throws std::invalid_argument if P is not asynchronous.
std::vector<Process> inert_steps(const Process& p);

/// Terms reachable by at most `depth` inert steps, p included.
std::vector<Process> inert_closure(const Process& p, std::size_t depth);

/// Instance check of an appendix lemma. For L1, L2, L2star and
/// PostponedBarbs `p` is an asynchronous term; for L5 and L6 it is a source
/// term and `scheme` selects the translation.
CheckReport check_lemma(LemmaId id, const Process& p, std::size_t depth, Scheme scheme = Scheme::boudol);

/// Criterion (c): every reduct P' of P is matched by a path of at most
/// `step_bound` target reductions from encode(P) to a term congruent to
/// encode(P').
CheckReport check_completeness(Scheme scheme, const Process& p, std::size_t step_bound);

/// Soundness criteria I, S, W and G over every T with encode(P) ==> T within
/// `depth`. `equivalence` stands for the target equivalence; nullopt means
/// structural congruence. W and G default to SRWRB.
CheckReport check_soundness(Criterion criterion, Scheme scheme, const Process& p, std::size_t depth,
                            std::optional<RelationKind> equivalence = std::nullopt);

/// Any of the six criteria; c and cprime range over all source states
/// reachable within `depth`.
CheckReport check_criterion(Criterion criterion, Scheme scheme, const Process& p, std::size_t depth,
                            std::optional<RelationKind> equivalence = std::nullopt);

/// Success sensitiveness: P reaches ok iff encode(P) does. For
/// replication-free P the target is explored 3x (Boudol) or 2x
/// (Honda-Tokoro) deeper.
CheckReport check_success_sensitiveness(Scheme scheme, const Process& p, std::size_t depth);

/// Exact alpha-equality for sigma injective on fn(P), WBB otherwise.
/// Throws std::invalid_argument when sigma mentions reserved names.
CheckReport check_name_invariance(Scheme scheme, const Process& p, const NameMap& sigma, std::size_t depth);

/// Direct translation against the filled operator context. The "regime"
/// detail is "exact" when the fixed context fills to the same term and
/// "up_to_alpha" when only the name-dependent context is exact.
CheckReport check_compositionality(Scheme scheme, const Operator& op, const std::vector<Process>& args);

/// Divergence reflection and preservation: diverges(P) and
/// diverges(encode(P)) agree. Target depth as for success sensitiveness.
CheckReport check_divergence(Scheme scheme, const Process& p, std::size_t depth);

/// Validity up to an equivalence: P related to encode(P).
CheckReport check_validity(Scheme scheme, const RelationKind& kind, const Process& p, std::size_t depth);

}  // namespace piw
