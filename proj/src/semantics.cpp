#include "piw/semantics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "piw/congruence.hpp"
#include "piw/syntax.hpp"

namespace piw {

NameSet Label::free() const {
  switch (kind) {
    case LabelKind::tau:
      return {};
    case LabelKind::free_output:
      return {subject, object};
    default:
      return {subject};
  }
}

NameSet Label::bound() const {
  if (binds()) return {object};
  return {};
}

std::string render_label(const Label& l) {
  switch (l.kind) {
    case LabelKind::tau:
      return "tau";
    case LabelKind::free_output:
      return l.subject.str() + "!" + l.object.str();
    case LabelKind::bound_output:
      return l.subject.str() + "!(" + l.object.str() + ")";
    case LabelKind::input:
      return l.subject.str() + "?(" + l.object.str() + ")";
  }
  return "?";
}

namespace {

bool disjoint(const NameSet& a, const NameSet& b) {
  for (const Name& n : a)
    if (b.count(n)) return false;
  return true;
}

// COM / CLOSE between an acting side and a receiving side. `compose` builds
// the parallel composition in the right orientation.
template <typename Compose>
void communications(const std::vector<Step>& senders, const std::vector<Step>& receivers,
                    const Name& fresh, Compose compose, std::vector<Step>& out) {
  for (const auto& [out_label, sender] : senders) {
    if (!out_label.is_output()) continue;
    for (const auto& [in_label, receiver] : receivers) {
      if (in_label.kind != LabelKind::input || in_label.subject != out_label.subject) continue;
      if (out_label.kind == LabelKind::free_output) {
        out.emplace_back(Label::tau(), compose(sender, substitute(receiver, fresh, out_label.object)));
      } else {
        out.emplace_back(Label::tau(), Process::restrict(fresh, compose(sender, receiver)));
      }
    }
  }
}

}  // namespace

std::vector<Step> transitions(const Process& p, const Name& fresh) {
  std::vector<Step> out;
  switch (p.kind()) {
    case Kind::nil:
    case Kind::success:
    case Kind::hole:
      break;
    case Kind::output:
      out.emplace_back(Label::free_output(p.channel(), p.datum()), p.body());
      break;
    case Kind::input:
      out.emplace_back(Label::input(p.channel(), fresh), substitute(p.body(), p.binder(), fresh));
      break;
    case Kind::par: {
      const Process& l = p.left();
      const Process& r = p.right();
      std::vector<Step> tl = transitions(l, fresh);
      std::vector<Step> tr = transitions(r, fresh);
      NameSet fl = fn(l);
      NameSet fr = fn(r);
      for (const auto& [a, l2] : tl)
        if (disjoint(a.bound(), fr)) out.emplace_back(a, Process::par(l2, r));
      for (const auto& [a, r2] : tr)
        if (disjoint(a.bound(), fl)) out.emplace_back(a, Process::par(l, r2));
      communications(tl, tr, fresh, [](const Process& s, const Process& t) { return Process::par(s, t); }, out);
      communications(tr, tl, fresh, [](const Process& s, const Process& t) { return Process::par(t, s); }, out);
      break;
    }
    case Kind::restrict: {
      const Name& y = p.binder();
      for (auto& [a, b2] : transitions(p.body(), fresh)) {
        NameSet n = a.free();
        for (const Name& b : a.bound()) n.insert(b);
        if (!n.count(y)) {
          out.emplace_back(a, Process::restrict(y, b2));
        } else if (a.kind == LabelKind::free_output && a.object == y && a.subject != y) {
          out.emplace_back(Label::bound_output(a.subject, fresh), substitute(b2, y, fresh));
        }
      }
      break;
    }
    case Kind::repl: {
      std::vector<Step> tb = transitions(p.body(), fresh);
      for (const auto& [a, b2] : tb) out.emplace_back(a, Process::par(b2, p));
      std::vector<Step> comm;
      communications(tb, tb, fresh, [](const Process& s, const Process& t) { return Process::par(s, t); }, comm);
      for (auto& [a, t] : comm) out.emplace_back(a, Process::par(t, p));
      break;
    }
  }
  return out;
}

namespace {

std::vector<Step> canonical_steps(const std::vector<Step>& raw) {
  std::map<std::pair<Label, std::string>, Process> unique;
  for (const auto& [a, t] : raw) {
    Process nf = canonical(t);
    unique.emplace(std::make_pair(a, render_term(nf)), nf);
  }
  std::vector<Step> out;
  out.reserve(unique.size());
  for (auto& [k, t] : unique) out.emplace_back(k.first, t);
  return out;
}

Name internal_fresh(const Process& p) { return fresh_variant(reserved_name("w"), names(p)); }

}  // namespace

std::vector<Step> step_labels(const Process& p, const NameSet& universe) {
  for (const Name& n : fn(p))
    if (!universe.count(n)) throw std::invalid_argument("universe does not cover free name " + n.str());
  NameSet occurring = names(p);
  const Name* chosen = nullptr;
  for (const Name& n : universe) {
    if (occurring.count(n)) continue;
    if (!chosen || (n.reserved() && !chosen->reserved())) chosen = &n;
    if (chosen->reserved()) break;
  }
  if (!chosen) throw std::invalid_argument("universe has no name outside n(P)");
  return canonical_steps(transitions(p, *chosen));
}

std::vector<Process> reduce_once(const Process& p) {
  std::map<std::string, Process> unique;
  for (const auto& [a, t] : transitions(p, internal_fresh(p))) {
    if (!a.is_tau()) continue;
    Process nf = canonical(t);
    unique.emplace(render_term(nf), nf);
  }
  std::vector<Process> out;
  for (auto& [k, t] : unique) out.push_back(t);
  return out;
}

StateSpace::StateSpace(LabelMode mode, std::size_t depth_bound, std::size_t fresh_limit)
    : mode_(mode), depth_bound_(depth_bound), fresh_limit_(fresh_limit) {}

std::size_t StateSpace::add(const Process& p, std::size_t depth) {
  Process nf = canonical(p);
  std::string key = render_term(nf);
  auto it = index_.find(key);
  if (it != index_.end()) {
    State& s = states_[it->second];
    if (!s.expanded && depth < s.depth) s.depth = depth;
    return it->second;
  }
  std::size_t id = states_.size();
  states_.push_back(State{nf, key, depth, false, false, {}});
  index_.emplace(std::move(key), id);
  return id;
}

bool StateSpace::pick_fresh(const NameSet& avoid, Name& out) const {
  for (std::size_t k = 1; k <= fresh_limit_; ++k) {
    Name n = reserved_name("c" + std::to_string(k));
    if (!avoid.count(n)) {
      out = n;
      return true;
    }
  }
  return false;
}

void StateSpace::expand(std::size_t s) {
  if (states_[s].expanded) return;
  Process term = states_[s].term;
  std::size_t depth = states_[s].depth;
  std::vector<Step> raw;
  bool complete = true;
  if (mode_ == LabelMode::tau_only) {
    for (auto& st : transitions(term, internal_fresh(term)))
      if (st.first.is_tau()) raw.push_back(std::move(st));
  } else {
    NameSet avoid = names(term);
    Name fresh;
    if (pick_fresh(avoid, fresh)) {
      raw = transitions(term, fresh);
    } else {
      // No bound name left: only tau steps can be listed.
      for (auto& st : transitions(term, internal_fresh(term)))
        if (st.first.is_tau()) raw.push_back(std::move(st));
      complete = false;
    }
  }
  std::vector<Step> steps = canonical_steps(raw);
  states_[s].expanded = true;
  if (depth >= depth_bound_) {
    states_[s].frontier = !steps.empty() || !complete;
    return;
  }
  std::vector<Transition> out;
  out.reserve(steps.size());
  for (const auto& [a, t] : steps) {
    std::size_t target = add(t, depth + 1);
    out.push_back(Transition{a, target});
  }
  states_[s].out = std::move(out);
  states_[s].frontier = !complete;
}

const std::vector<Transition>& StateSpace::successors(std::size_t s) {
  expand(s);
  return states_[s].out;
}

bool StateSpace::is_frontier(std::size_t s) {
  expand(s);
  return states_[s].frontier;
}

void StateSpace::explore(std::size_t root) {
  std::deque<std::size_t> queue{root};
  std::vector<bool> seen(size(), false);
  auto mark = [&](std::size_t s) {
    if (s >= seen.size()) seen.resize(s + 1, false);
    if (seen[s]) return false;
    seen[s] = true;
    return true;
  };
  mark(root);
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (const Transition& t : successors(s))
      if (mark(t.target)) queue.push_back(t.target);
  }
}

bool LtsFragment::frontier_free() const {
  return std::none_of(frontier.begin(), frontier.end(), [](bool b) { return b; });
}

LtsFragment build_fragment(const Process& p, std::size_t depth, LabelMode mode,
                           std::size_t universe_extra) {
  StateSpace space(mode, depth, universe_extra);
  std::size_t root = space.add(p, 0);
  space.explore(root);

  LtsFragment f;
  f.depth_bound = depth;
  f.mode = mode;
  f.universe = fn(p);
  for (std::size_t k = 1; k <= universe_extra; ++k) f.universe.insert(reserved_name("c" + std::to_string(k)));
  f.root = root;
  for (std::size_t s = 0; s < space.size(); ++s) {
    f.states.push_back(space.term(s));
    f.frontier.push_back(space.is_frontier(s));
    for (const Transition& t : space.successors(s)) f.transitions.push_back(FragmentEdge{s, t.label, t.target});
  }
  return f;
}

Diverges diverges(const Process& p, std::size_t depth) {
  StateSpace space(LabelMode::tau_only, depth);
  std::size_t root = space.add(p, 0);
  space.explore(root);

  // Iterative DFS with colours; a grey successor closes a cycle.
  enum Colour : std::uint8_t { white, grey, black };
  std::vector<Colour> colour(space.size(), white);
  std::vector<std::size_t> parent(space.size(), SIZE_MAX);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
  colour[root] = grey;
  while (!stack.empty()) {
    auto& [s, i] = stack.back();
    const auto& out = space.successors(s);
    if (i < out.size()) {
      std::size_t t = out[i++].target;
      if (colour[t] == grey) {
        Diverges d{Tristate::yes, {}};
        std::vector<Process> rev;
        for (std::size_t u = s; u != t; u = parent[u]) rev.push_back(space.term(u));
        rev.push_back(space.term(t));
        d.cycle.assign(rev.rbegin(), rev.rend());
        return d;
      }
      if (colour[t] == white) {
        colour[t] = grey;
        parent[t] = s;
        stack.emplace_back(t, 0);
      }
    } else {
      colour[s] = black;
      stack.pop_back();
    }
  }
  for (std::size_t s = 0; s < space.size(); ++s)
    if (space.is_frontier(s)) return Diverges{Tristate::unknown, {}};
  return Diverges{Tristate::no, {}};
}

}  // namespace piw
