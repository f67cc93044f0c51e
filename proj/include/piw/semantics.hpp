#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "piw/process.hpp"

namespace piw {

enum class LabelKind : std::uint8_t { tau, free_output, bound_output, input };

/// Transition label. `subject` is the channel; `object` is the transmitted
/// (free output) or bound name.
struct Label {
  LabelKind kind = LabelKind::tau;
  Name subject;
  Name object;

  static Label tau() { return {}; }
  static Label free_output(Name x, Name z) { return {LabelKind::free_output, std::move(x), std::move(z)}; }
  static Label bound_output(Name x, Name y) { return {LabelKind::bound_output, std::move(x), std::move(y)}; }
  static Label input(Name x, Name y) { return {LabelKind::input, std::move(x), std::move(y)}; }

  bool is_tau() const { return kind == LabelKind::tau; }
  bool is_output() const { return kind == LabelKind::free_output || kind == LabelKind::bound_output; }
  bool binds() const { return kind == LabelKind::bound_output || kind == LabelKind::input; }

  NameSet free() const;
  NameSet bound() const;

  auto operator<=>(const Label&) const = default;
};

/// "tau", "x!z", "x!(c)" or "x?(c)".
std::string render_label(const Label& l);

using Step = std::pair<Label, Process>;

/// Raw transitions of `p` using `fresh` for every bound label name; `fresh`
/// must not occur in p. Targets are not normalized.
std::vector<Step> transitions(const Process& p, const Name& fresh);

/// Transitions with canonical targets. Bound names are instantiated with the
/// first universe name not occurring in p (reserved names first).
/// Throws std::invalid_argument unless universe covers fn(p) and has a name
/// outside n(p).
std::vector<Step> step_labels(const Process& p, const NameSet& universe);

/// Canonical tau-successors, sorted by canonical text.
std::vector<Process> reduce_once(const Process& p);

enum class LabelMode : std::uint8_t { tau_only, all_labels };

struct Transition {
  Label label;
  std::size_t target;
};

/// Lazily expanded transition graph over canonical states. States whose
/// depth reaches the bound are not expanded; they become frontier states when
/// they have at least one transition.
class StateSpace {
 public:
  /// `fresh_limit` bounds the reserved names %c1..%cN used for bound labels.
  StateSpace(LabelMode mode, std::size_t depth_bound, std::size_t fresh_limit = 64);

  /// Interns the canonical form of p; an existing state keeps the smaller
  /// depth unless it was already expanded.
  std::size_t add(const Process& p, std::size_t depth);
  /// Breadth-first expansion of everything reachable from `root`.
  void explore(std::size_t root);

  const std::vector<Transition>& successors(std::size_t s);
  bool is_frontier(std::size_t s);

  const Process& term(std::size_t s) const { return states_[s].term; }
  const std::string& key(std::size_t s) const { return states_[s].key; }
  std::size_t depth(std::size_t s) const { return states_[s].depth; }
  bool expanded(std::size_t s) const { return states_[s].expanded; }
  std::size_t size() const { return states_.size(); }
  std::size_t depth_bound() const { return depth_bound_; }
  LabelMode mode() const { return mode_; }

  /// First reserved %cK not free in the given names, K <= fresh_limit.
  bool pick_fresh(const NameSet& avoid, Name& out) const;

 private:
  struct State {
    Process term;
    std::string key;
    std::size_t depth = 0;
    bool expanded = false;
    bool frontier = false;
    std::vector<Transition> out;
  };

  void expand(std::size_t s);

  LabelMode mode_;
  std::size_t depth_bound_;
  std::size_t fresh_limit_;
  std::vector<State> states_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct FragmentEdge {
  std::size_t source;
  Label label;
  std::size_t target;
};

struct LtsFragment {
  std::vector<Process> states;
  std::vector<FragmentEdge> transitions;
  std::size_t root = 0;
  std::vector<bool> frontier;
  std::size_t depth_bound = 0;
  NameSet universe;
  LabelMode mode = LabelMode::all_labels;

  bool frontier_free() const;
};

/// Breadth-first fragment to `depth`; the universe is fn(p) plus
/// `universe_extra` reserved names %c1..%cK used for bound labels.
LtsFragment build_fragment(const Process& p, std::size_t depth, LabelMode mode,
                           std::size_t universe_extra);

enum class Tristate : std::uint8_t { no, yes, unknown };

struct Diverges {
  Tristate value = Tristate::unknown;
  std::vector<Process> cycle;  // witness when value == yes
};

/// Whether a tau-cycle is reachable within `depth` reductions.
Diverges diverges(const Process& p, std::size_t depth);

}  // namespace piw
