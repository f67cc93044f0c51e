#include "piw/equivalences.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "piw/congruence.hpp"
#include "piw/syntax.hpp"

namespace piw {

std::string equivalence_name(Equivalence e) {
  switch (e) {
    case Equivalence::ewb:
      return "ewb";
    case Equivalence::wot:
      return "wot";
    case Equivalence::wab:
      return "wab";
    case Equivalence::wbb:
      return "wbb";
    case Equivalence::awbb:
      return "awbb";
    case Equivalence::wcb:
      return "wcb";
    case Equivalence::srwrb:
      return "srwrb";
  }
  return "?";
}

std::optional<Equivalence> parse_equivalence(const std::string& text) {
  for (Equivalence e : {Equivalence::ewb, Equivalence::wot, Equivalence::wab, Equivalence::wbb, Equivalence::awbb,
                        Equivalence::wcb, Equivalence::srwrb})
    if (equivalence_name(e) == text) return e;
  return std::nullopt;
}

bool is_label_based(Equivalence e) {
  return e == Equivalence::ewb || e == Equivalence::wot || e == Equivalence::wab;
}

std::string describe(const RelationKind& kind) {
  std::string s = equivalence_name(kind.tag);
  if (kind.branching) s += "+branching";
  if (kind.divergence_preserving) s += "+div";
  return s;
}

std::set<BarbKind> observed_barbs(Equivalence e) {
  switch (e) {
    case Equivalence::wbb:
      return {BarbKind::in, BarbKind::out};
    case Equivalence::awbb:
      return {BarbKind::out};
    case Equivalence::wcb:
      return {BarbKind::chan};
    case Equivalence::srwrb:
      return {BarbKind::succ};
    default:
      return {};
  }
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::related:
      return "related";
    case Outcome::not_related:
      return "not_related";
    case Outcome::unknown:
      return "unknown";
  }
  return "?";
}

namespace {

struct Closure {
  std::vector<std::size_t> states;
  bool complete = true;
};

struct WeakMove {
  Label label;
  std::size_t target;
};

struct Obligation {
  std::string text;
  bool complete = true;
  // Disjunction of conjunctions of pair ids. An empty conjunction is true.
  std::vector<std::vector<std::size_t>> alts;
};

struct PairInfo {
  std::size_t p = 0;
  std::size_t q = 0;
  bool generated = false;
  bool moves_complete = true;
  std::vector<Obligation> obligations;
};

class Checker {
 public:
  Checker(const RelationKind& kind, std::size_t depth, const CheckOptions& options, bool match_objects)
      : kind_(kind),
        space_(is_label_based(kind.tag) ? LabelMode::all_labels : LabelMode::tau_only, depth),
        options_(options),
        match_objects_(match_objects) {
    if (kind.branching && is_label_based(kind.tag))
      throw std::invalid_argument("branching applies only to reduction-based kinds");
    observed_ = observed_barbs(kind.tag);
    if (options.barbs) {
      if (is_label_based(kind.tag)) throw std::invalid_argument("barb override on a label-based kind");
      if (kind.tag == Equivalence::srwrb && *options.barbs != std::set<BarbKind>{BarbKind::succ})
        throw std::invalid_argument("srwrb observes only the success barb");
      observed_ = *options.barbs;
    }
  }

  std::size_t state(const Process& p, std::size_t depth) { return space_.add(p, depth); }
  void explore(std::size_t s) { space_.explore(s); }

  std::size_t pair(std::size_t p, std::size_t q) {
    auto key = std::make_pair(p, q);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    std::size_t id = pairs_.size();
    PairInfo info;
    info.p = p;
    info.q = q;
    pairs_.push_back(std::move(info));
    index_.emplace(key, id);
    queue_.push_back(id);
    return id;
  }

  std::optional<std::size_t> find_pair(std::size_t p, std::size_t q) const {
    auto it = index_.find({p, q});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  enum class RunState { done, paused, limit };

  // Generates obligations breadth-first until the queue drains, `pause_at`
  // pairs have been generated, or the pair limit is hit.
  RunState run(std::size_t pause_at) {
    while (!queue_.empty()) {
      if (generated_count_ >= options_.max_pairs) return RunState::limit;
      if (generated_count_ >= pause_at) return RunState::paused;
      std::size_t id = queue_.front();
      queue_.pop_front();
      generate(id);
    }
    return RunState::done;
  }

  void generate(std::size_t id) {
    if (pairs_[id].generated) return;
    pairs_[id].generated = true;
    std::size_t p = pairs_[id].p;
    std::size_t q = pairs_[id].q;
    // The identity is a bisimulation of every kind.
    if (p == q) return;
    ++generated_count_;
    std::vector<Obligation> obs;
    bool complete = true;
    generate_side(p, q, false, obs, complete);
    generate_side(q, p, true, obs, complete);
    if (kind_.divergence_preserving) {
      Tristate dp = divergence(p);
      Tristate dq = divergence(q);
      if (dp == Tristate::unknown || dq == Tristate::unknown) {
        complete = false;
      } else {
        Obligation o;
        o.text = std::string("divergence: left ") + (dp == Tristate::yes ? "diverges" : "converges") + ", right " +
                 (dq == Tristate::yes ? "diverges" : "converges");
        if (dp == dq) o.alts.push_back({});
        obs.push_back(std::move(o));
      }
    }
    pairs_[id].moves_complete = complete;
    pairs_[id].obligations = std::move(obs);
  }

  const std::vector<PairInfo>& pairs() const { return pairs_; }
  std::size_t generated_count() const { return generated_count_; }
  StateSpace& space() { return space_; }

 private:
  std::vector<Transition> succ(std::size_t s) { return space_.successors(s); }

  const Closure& closure(std::size_t s) {
    auto it = closures_.find(s);
    if (it != closures_.end()) return it->second;
    Closure c;
    std::set<std::size_t> seen{s};
    std::deque<std::size_t> todo{s};
    while (!todo.empty()) {
      std::size_t u = todo.front();
      todo.pop_front();
      c.states.push_back(u);
      if (space_.is_frontier(u)) c.complete = false;
      for (const Transition& t : succ(u))
        if (t.label.is_tau() && seen.insert(t.target).second) todo.push_back(t.target);
    }
    return closures_.emplace(s, std::move(c)).first->second;
  }

  // tau* a tau* moves whose visible label satisfies `want`.
  std::vector<WeakMove> weak_moves(std::size_t s, const std::function<bool(const Label&)>& want, bool& complete) {
    std::vector<WeakMove> out;
    std::set<std::pair<Label, std::size_t>> seen;
    Closure before = closure(s);
    if (!before.complete) complete = false;
    for (std::size_t u : before.states) {
      for (const Transition& t : succ(u)) {
        if (t.label.is_tau() || !want(t.label)) continue;
        Closure after = closure(t.target);
        if (!after.complete) complete = false;
        for (std::size_t v : after.states)
          if (seen.insert({t.label, v}).second) out.push_back({t.label, v});
      }
    }
    return out;
  }

  Tristate divergence(std::size_t s) {
    auto it = divergence_.find(s);
    if (it != divergence_.end()) return it->second;
    const Closure c = closure(s);
    std::set<std::size_t> in_reach(c.states.begin(), c.states.end());
    // Colour-based cycle search restricted to the tau-reachable states.
    std::map<std::size_t, int> colour;
    bool cycle = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t u) {
      colour[u] = 1;
      for (const Transition& t : succ(u)) {
        if (cycle) return;
        if (!t.label.is_tau() || !in_reach.count(t.target)) continue;
        int col = colour[t.target];
        if (col == 1) {
          cycle = true;
          return;
        }
        if (col == 0) dfs(t.target);
      }
      colour[u] = 2;
    };
    dfs(s);
    Tristate r = cycle ? Tristate::yes : (c.complete ? Tristate::no : Tristate::unknown);
    divergence_[s] = r;
    return r;
  }

  void finish(Obligation& o, bool flipped) const {
    o.text += o.alts.empty() ? "; no matching " + other(flipped) + " move" : "; every " + other(flipped) + " response fails";
  }

  std::size_t oriented(std::size_t mine, std::size_t theirs, bool flipped) {
    return flipped ? pair(theirs, mine) : pair(mine, theirs);
  }

  std::string side(bool flipped) const { return flipped ? "right" : "left"; }
  std::string other(bool flipped) const { return flipped ? "left" : "right"; }

  std::string move_text(bool flipped, std::size_t from, const Label& l, std::size_t to) {
    return side(flipped) + " " + render_term(space_.term(from)) + " --" + render_label(l) + "--> " +
           render_term(space_.term(to));
  }

  Name fresh_for(const NameSet& avoid) {
    Name n;
    if (!space_.pick_fresh(avoid, n)) throw std::runtime_error("out of fresh names");
    return n;
  }

  std::size_t derived(std::size_t s, const Name& from, const Name& to) {
    if (from == to) return s;
    return state(substitute(space_.term(s), from, to), space_.depth(s));
  }

  std::size_t with_message(std::size_t s, const Name& x, const Name& w) {
    return state(Process::par(space_.term(s), Process::output(x, w)), space_.depth(s));
  }

  NameSet pair_names(std::size_t mine, std::size_t theirs) {
    NameSet ns = fn(space_.term(mine));
    for (const Name& n : fn(space_.term(theirs))) ns.insert(n);
    return ns;
  }

  // Instantiation universe for input clauses: the pair's free names plus one
  // fresh name.
  std::vector<Name> input_universe(std::size_t mine, std::size_t theirs) {
    NameSet ns = pair_names(mine, theirs);
    ns.insert(fresh_for(ns));
    return {ns.begin(), ns.end()};
  }

  void generate_side(std::size_t mine, std::size_t theirs, bool flipped, std::vector<Obligation>& obs,
                     bool& complete) {
    if (space_.is_frontier(mine)) complete = false;
    const std::vector<Transition> moves = succ(mine);
    if (!is_label_based(kind_.tag)) {
      for (const Barb& b : filter_barbs(strong_barbs(space_.term(mine)), observed_)) {
        Obligation o;
        o.text = side(flipped) + " " + render_term(space_.term(mine)) + " has barb " + render_barb(b) + "; " +
                 other(flipped) + " cannot reach it";
        const Closure& c = closure(theirs);
        o.complete = c.complete;
        for (std::size_t t : c.states)
          if (strong_barbs(space_.term(t)).count(b)) {
            o.alts.push_back({});
            break;
          }
        obs.push_back(std::move(o));
      }
    }
    for (const Transition& t : moves) {
      if (t.label.is_tau()) {
        Obligation o;
        o.text = move_text(flipped, mine, t.label, t.target);
        const Closure c = closure(theirs);
        o.complete = c.complete;
        if (kind_.branching) {
          o.alts.push_back({oriented(t.target, theirs, flipped)});
          for (std::size_t mid : c.states)
            for (const Transition& u : succ(mid))
              if (u.label.is_tau())
                o.alts.push_back({oriented(mine, mid, flipped), oriented(t.target, u.target, flipped)});
        } else {
          for (std::size_t r : c.states) o.alts.push_back({oriented(t.target, r, flipped)});
        }
        finish(o, flipped);
        obs.push_back(std::move(o));
        continue;
      }
      if (!is_label_based(kind_.tag)) continue;
      if (t.label.is_output()) {
        obs.push_back(output_obligation(mine, theirs, t, flipped));
      } else if (kind_.tag == Equivalence::ewb) {
        for (Obligation& o : input_obligations(mine, theirs, t.label, t.target, flipped, false))
          obs.push_back(std::move(o));
      }
    }
    if (kind_.tag == Equivalence::wab) {
      bool weak_complete = true;
      auto inputs = weak_moves(
          mine, [](const Label& l) { return l.kind == LabelKind::input; }, weak_complete);
      if (!weak_complete) complete = false;
      for (const WeakMove& m : inputs)
        for (Obligation& o : input_obligations(mine, theirs, m.label, m.target, flipped, true))
          obs.push_back(std::move(o));
    }
  }

  Obligation output_obligation(std::size_t mine, std::size_t theirs, const Transition& t, bool flipped) {
    const Label& l = t.label;
    Obligation o;
    o.text = move_text(flipped, mine, l, t.target);
    bool complete = true;
    auto responses = weak_moves(
        theirs,
        [&](const Label& r) {
          if (!r.is_output() || r.subject != l.subject) return false;
          if (!match_objects_) return true;
          if (l.kind == LabelKind::free_output) return r == l;
          return r.kind == LabelKind::bound_output;
        },
        complete);
    o.complete = complete;
    NameSet avoid = pair_names(mine, theirs);
    Name d = fresh_for(avoid);
    std::size_t left = l.kind == LabelKind::bound_output ? derived(t.target, l.object, d) : t.target;
    for (const WeakMove& m : responses) {
      std::size_t right = m.label.kind == LabelKind::bound_output ? derived(m.target, m.label.object, d) : m.target;
      o.alts.push_back({oriented(left, right, flipped)});
    }
    finish(o, flipped);
    return o;
  }

  // One obligation per instantiation w of the bound input name.
  std::vector<Obligation> input_obligations(std::size_t mine, std::size_t theirs, const Label& l, std::size_t target,
                                            bool flipped, bool asynchronous) {
    std::vector<Obligation> out;
    bool complete = true;
    auto responses = weak_moves(
        theirs, [&](const Label& r) { return r.kind == LabelKind::input && r.subject == l.subject; }, complete);
    const Closure* idle = asynchronous ? &closure(theirs) : nullptr;
    for (const Name& w : input_universe(mine, theirs)) {
      Obligation o;
      o.text = side(flipped) + " " + render_term(space_.term(mine)) + (asynchronous ? " ==" : " --") +
               render_label(l) + (asynchronous ? "==> " : "--> ") + render_term(space_.term(target)) + " with " +
               l.object.str() + ":=" + w.str();
      o.complete = complete && (!idle || idle->complete);
      std::size_t left = derived(target, l.object, w);
      for (const WeakMove& m : responses)
        o.alts.push_back({oriented(left, derived(m.target, m.label.object, w), flipped)});
      if (idle) {
        std::vector<std::size_t> idle_states = idle->states;
        for (std::size_t r : idle_states) o.alts.push_back({oriented(left, with_message(r, l.subject, w), flipped)});
      }
      finish(o, flipped);
      out.push_back(std::move(o));
    }
    return out;
  }

  RelationKind kind_;
  StateSpace space_;
  CheckOptions options_;
  bool match_objects_;
  std::set<BarbKind> observed_;
  std::vector<PairInfo> pairs_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index_;
  std::deque<std::size_t> queue_;
  std::size_t generated_count_ = 0;
  std::unordered_map<std::size_t, Closure> closures_;
  std::unordered_map<std::size_t, Tristate> divergence_;
};

struct Solution {
  std::vector<bool> sure;        // survives the pessimistic fixpoint
  std::vector<bool> dead;        // killed by the optimistic fixpoint
  std::vector<std::size_t> round;
  std::vector<std::size_t> reason;  // obligation index that killed the pair
};

Solution solve(const std::vector<PairInfo>& pairs) {
  const std::size_t n = pairs.size();
  Solution s;
  s.sure.assign(n, false);
  s.dead.assign(n, false);
  s.round.assign(n, 0);
  s.reason.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    s.sure[i] = pairs[i].generated && (pairs[i].p == pairs[i].q || pairs[i].moves_complete);

  auto all_of_pairs = [](const std::vector<std::size_t>& conj, const std::vector<bool>& flag, bool want) {
    return std::all_of(conj.begin(), conj.end(), [&](std::size_t j) { return flag[j] == want; });
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.sure[i]) continue;
      for (const Obligation& o : pairs[i].obligations) {
        bool ok = std::any_of(o.alts.begin(), o.alts.end(),
                              [&](const std::vector<std::size_t>& c) { return all_of_pairs(c, s.sure, true); });
        if (!ok) {
          s.sure[i] = false;
          changed = true;
          break;
        }
      }
    }
  }

  std::size_t r = 0;
  for (bool changed = true; changed;) {
    changed = false;
    ++r;
    std::vector<std::size_t> killed;
    for (std::size_t i = 0; i < n; ++i) {
      if (s.dead[i] || !pairs[i].generated) continue;
      for (std::size_t k = 0; k < pairs[i].obligations.size(); ++k) {
        const Obligation& o = pairs[i].obligations[k];
        if (!o.complete) continue;
        bool refuted = std::all_of(o.alts.begin(), o.alts.end(), [&](const std::vector<std::size_t>& c) {
          return std::any_of(c.begin(), c.end(), [&](std::size_t j) { return s.dead[j]; });
        });
        if (refuted) {
          killed.push_back(i);
          s.reason[i] = k;
          break;
        }
      }
    }
    // Kill in rounds so that witnesses descend to strictly earlier rounds.
    for (std::size_t i : killed) {
      s.dead[i] = true;
      s.round[i] = r;
      changed = true;
    }
  }
  return s;
}

std::vector<WitnessStep> trace(const std::vector<PairInfo>& pairs, const Solution& s, StateSpace& space,
                               std::size_t root) {
  std::vector<WitnessStep> out;
  std::size_t cur = root;
  while (true) {
    const PairInfo& info = pairs[cur];
    const Obligation& o = info.obligations[s.reason[cur]];
    out.push_back({o.text, space.term(info.p), space.term(info.q)});
    if (o.alts.empty()) break;
    // Follow the response whose refutation happened earliest.
    std::optional<std::size_t> next;
    for (const auto& conj : o.alts)
      for (std::size_t j : conj)
        if (s.dead[j] && s.round[j] < s.round[cur] && (!next || s.round[j] < s.round[*next])) next = j;
    if (!next) break;
    cur = *next;
  }
  return out;
}

Verdict decide(const RelationKind& kind, const Process& p, const Process& q, std::size_t depth,
               const CheckOptions& options, bool match_objects) {
  Checker c(kind, depth, options, match_objects);
  std::size_t sp = c.state(p, 0);
  std::size_t sq = c.state(q, 0);
  c.explore(sp);
  c.explore(sq);
  std::size_t root = c.pair(sp, sq);
  // Refutations found on a partial product are final, so solve at growing
  // checkpoints and stop early once the root pair is refuted.
  Checker::RunState state;
  Solution s;
  for (std::size_t pause_at = 16;; pause_at *= 4) {
    state = c.run(pause_at);
    s = solve(c.pairs());
    if (state != Checker::RunState::paused || s.dead[root]) break;
  }
  bool finished = state != Checker::RunState::limit;
  Verdict v;
  v.pairs_explored = c.generated_count();
  if (s.sure[root]) {
    v.outcome = Outcome::related;
    for (std::size_t i = 0; i < c.pairs().size(); ++i)
      if (s.sure[i]) v.relation.push_back({c.space().term(c.pairs()[i].p), c.space().term(c.pairs()[i].q)});
  } else if (s.dead[root]) {
    v.outcome = Outcome::not_related;
    v.witness = trace(c.pairs(), s, c.space(), root);
  } else {
    v.outcome = Outcome::unknown;
    v.reason = finished ? "state space frontier reached at depth " + std::to_string(depth)
                        : "pair limit " + std::to_string(options.max_pairs) + " reached";
  }
  return v;
}

}  // namespace

Verdict check_bisim(const RelationKind& kind, const Process& p, const Process& q, std::size_t depth,
                    const CheckOptions& options) {
  Verdict v = decide(kind, p, q, depth, options, true);
  if (kind.tag == Equivalence::ewb || kind.tag == Equivalence::wab)
    v.notes.push_back("input clause instantiated over the pair's free names plus one fresh name");
  if (v.outcome == Outcome::not_related && is_label_based(kind.tag)) {
    // Matching outputs on their channel alone can expose a deeper difference
    // than the first mismatching object; prefer that witness when it exists.
    Verdict relaxed = decide(kind, p, q, depth, options, false);
    if (relaxed.outcome == Outcome::not_related) {
      v.witness = relaxed.witness;
      v.notes.push_back("witness found with outputs matched by channel only");
    }
  }
  return v;
}

std::vector<std::string> audit(const RelationKind& kind, const std::vector<std::pair<Process, Process>>& relation,
                               std::size_t depth, const CheckOptions& options) {
  Checker c(kind, depth, options, true);
  std::vector<std::size_t> ids;
  for (const auto& [p, q] : relation) {
    std::size_t sp = c.state(p, 0);
    std::size_t sq = c.state(q, 0);
    c.explore(sp);
    c.explore(sq);
    ids.push_back(c.pair(sp, sq));
  }
  std::set<std::size_t> members(ids.begin(), ids.end());
  std::vector<std::string> violations;
  for (std::size_t id : ids) c.generate(id);
  for (std::size_t id : ids) {
    const PairInfo& info = c.pairs()[id];
    if (info.p == info.q) continue;
    std::string pair_text = render_term(c.space().term(info.p)) + " ~ " + render_term(c.space().term(info.q));
    if (!info.moves_complete) violations.push_back(pair_text + ": moves not fully explored");
    for (const Obligation& o : info.obligations) {
      bool ok = std::any_of(o.alts.begin(), o.alts.end(), [&](const std::vector<std::size_t>& conj) {
        return std::all_of(conj.begin(), conj.end(), [&](std::size_t j) {
          return members.count(j) > 0 || c.pairs()[j].p == c.pairs()[j].q;
        });
      });
      if (!ok) violations.push_back(pair_text + ": " + o.text);
    }
  }
  return violations;
}

SaturatedFragment saturate(const LtsFragment& f, SaturationMode mode) {
  const std::size_t n = f.states.size();
  std::vector<std::vector<std::pair<Label, std::size_t>>> out(n);
  for (const FragmentEdge& e : f.transitions) out[e.source].push_back({e.label, e.target});

  SaturatedFragment s;
  s.tau_reach.resize(n);
  s.incomplete.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> todo{i};
    seen[i] = true;
    while (!todo.empty()) {
      std::size_t u = todo.front();
      todo.pop_front();
      s.tau_reach[i].push_back(u);
      if (f.frontier[u]) s.incomplete[i] = true;
      for (const auto& [l, v] : out[u])
        if (l.is_tau() && !seen[v]) {
          seen[v] = true;
          todo.push_back(v);
        }
    }
    std::sort(s.tau_reach[i].begin(), s.tau_reach[i].end());
  }

  s.fragment = f;
  if (mode == SaturationMode::branching) return s;

  std::set<std::tuple<std::size_t, Label, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t u : s.tau_reach[i]) {
      edges.insert({i, Label::tau(), u});
      for (const auto& [l, v] : out[u]) {
        if (l.is_tau()) continue;
        if (s.incomplete[v]) s.incomplete[i] = true;
        for (std::size_t w : s.tau_reach[v]) edges.insert({i, l, w});
      }
    }
  }
  s.fragment.transitions.clear();
  for (const auto& [a, l, b] : edges) s.fragment.transitions.push_back({a, l, b});
  return s;
}

}  // namespace piw
