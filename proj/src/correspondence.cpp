#include "piw/correspondence.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "piw/congruence.hpp"
#include "piw/observables.hpp"
#include "piw/semantics.hpp"
#include "piw/syntax.hpp"

namespace piw {

std::string criterion_name(Criterion c) {
  switch (c) {
    case Criterion::c:
      return "c";
    case Criterion::cprime:
      return "cp";
    case Criterion::i:
      return "i";
    case Criterion::s:
      return "s";
    case Criterion::w:
      return "w";
    case Criterion::g:
      return "g";
  }
  return "?";
}

std::optional<Criterion> parse_criterion(const std::string& text) {
  for (Criterion c : {Criterion::c, Criterion::cprime, Criterion::i, Criterion::s, Criterion::w, Criterion::g})
    if (criterion_name(c) == text) return c;
  if (text == "cprime") return Criterion::cprime;
  return std::nullopt;
}

std::string lemma_name(LemmaId id) {
  switch (id) {
    case LemmaId::l1:
      return "l1";
    case LemmaId::l2:
      return "l2";
    case LemmaId::l2star:
      return "l2star";
    case LemmaId::postponed_barbs:
      return "pb";
    case LemmaId::l5:
      return "l5";
    case LemmaId::l6:
      return "l6";
  }
  return "?";
}

std::optional<LemmaId> parse_lemma(const std::string& text) {
  for (LemmaId id : {LemmaId::l1, LemmaId::l2, LemmaId::l2star, LemmaId::postponed_barbs, LemmaId::l5, LemmaId::l6})
    if (lemma_name(id) == text) return id;
  return std::nullopt;
}

std::string check_outcome_name(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::pass:
      return "pass";
    case CheckOutcome::fail:
      return "fail";
    case CheckOutcome::unknown:
      return "unknown";
  }
  return "?";
}

namespace {

// Congruence with one replication unfolding; plain normal-form comparison
// suffices for replication-free terms.
bool same(const Process& a, const Process& b) {
  if (canonical_key(a) == canonical_key(b)) return true;
  if (is_replication_free(a) && is_replication_free(b)) return false;
  return congruent(a, b, 1);
}

std::size_t protocol_factor(Scheme s) { return s == Scheme::boudol ? 3 : 2; }

// Target exploration depth. Replicated terms have unbounded spaces, so the
// protocol factor applies only to replication-free ones.
std::size_t target_depth(Scheme s, const Process& p, std::size_t depth) {
  return is_replication_free(p) ? depth * protocol_factor(s) : depth;
}

// Combines per-instance outcomes: any failure wins, then unknown.
void merge(CheckOutcome& acc, CheckOutcome o) {
  if (acc == CheckOutcome::fail || o == CheckOutcome::fail)
    acc = CheckOutcome::fail;
  else if (o == CheckOutcome::unknown)
    acc = CheckOutcome::unknown;
}

CheckReport report(const std::string& id, Scheme scheme, const Process& p) {
  CheckReport r;
  r.id = id;
  r.instance["term"] = render_term(p);
  r.instance["scheme"] = scheme_name(scheme);
  r.outcome = CheckOutcome::pass;
  return r;
}

// Reflexive-transitive tau reachability inside a state space.
struct Reach {
  std::vector<std::size_t> states;
  bool complete = true;
};

Reach reach(StateSpace& space, std::size_t from) {
  Reach r;
  std::set<std::size_t> seen{from};
  std::deque<std::size_t> todo{from};
  while (!todo.empty()) {
    std::size_t u = todo.front();
    todo.pop_front();
    r.states.push_back(u);
    if (space.is_frontier(u)) r.complete = false;
    std::vector<Transition> out = space.successors(u);
    for (const Transition& t : out)
      if (seen.insert(t.target).second) todo.push_back(t.target);
  }
  return r;
}

std::vector<std::size_t> direct_successors(StateSpace& space, std::size_t s) {
  std::vector<std::size_t> out;
  for (const Transition& t : space.successors(s)) out.push_back(t.target);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Target equivalence: congruence when no kind is given, otherwise a bisim
// check; reflexive kinds are tried on congruence first.
class Matcher {
 public:
  Matcher(std::optional<RelationKind> kind, std::size_t depth) : kind_(kind), depth_(depth) {}

  CheckOutcome operator()(const Process& t, const Process& e) {
    if (same(t, e)) return CheckOutcome::pass;
    if (!kind_) return CheckOutcome::fail;
    std::string key = canonical_key(t) + "\n~\n" + canonical_key(e);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Verdict v = check_bisim(*kind_, t, e, depth_);
    CheckOutcome o = v.outcome == Outcome::related       ? CheckOutcome::pass
                     : v.outcome == Outcome::not_related ? CheckOutcome::fail
                                                         : CheckOutcome::unknown;
    cache_.emplace(std::move(key), o);
    return o;
  }

 private:
  std::optional<RelationKind> kind_;
  std::size_t depth_;
  std::unordered_map<std::string, CheckOutcome> cache_;
};

std::string describe_eq(const std::optional<RelationKind>& k) { return k ? describe(*k) : "congruence"; }

// Shortest reduction path, of at most `bound` steps, from `from` to a term
// congruent with `goal`.
std::optional<std::size_t> path_length(const Process& from, const Process& goal, std::size_t bound) {
  StateSpace space(LabelMode::tau_only, bound);
  std::size_t root = space.add(from, 0);
  space.explore(root);
  std::vector<std::size_t> dist(space.size(), SIZE_MAX);
  dist[root] = 0;
  std::deque<std::size_t> todo{root};
  while (!todo.empty()) {
    std::size_t u = todo.front();
    todo.pop_front();
    if (same(space.term(u), goal)) return dist[u];
    for (const Transition& t : space.successors(u))
      if (dist[t.target] == SIZE_MAX) {
        dist[t.target] = dist[u] + 1;
        if (dist[t.target] <= bound) todo.push_back(t.target);
      }
  }
  return std::nullopt;
}

bool contains_same(const std::vector<Process>& xs, const Process& y) {
  return std::any_of(xs.begin(), xs.end(), [&](const Process& x) { return same(x, y); });
}

// Inert closure together with whether it reached a fixpoint.
std::pair<std::vector<Process>, bool> inert_closure_ex(const Process& p, std::size_t depth) {
  std::vector<Process> out;
  std::set<std::string> seen;
  std::vector<Process> layer{canonical(p)};
  seen.insert(canonical_key(p));
  out.push_back(layer.front());
  for (std::size_t d = 0; d < depth && !layer.empty(); ++d) {
    std::vector<Process> next;
    for (const Process& t : layer)
      for (const Process& q : inert_steps(t))
        if (seen.insert(render_term(q)).second) {
          out.push_back(q);
          next.push_back(q);
        }
    layer = std::move(next);
  }
  bool closed = true;
  for (const Process& t : layer)
    if (!inert_steps(t).empty()) {
      // Only unexplored successors count as truncation.
      for (const Process& q : inert_steps(t))
        if (!seen.count(render_term(q))) closed = false;
    }
  return {out, closed};
}

}  // namespace

std::vector<Process> inert_steps(const Process& p) {
  if (!is_asynchronous(p)) throw std::invalid_argument("inert_steps: term is not asynchronous");
  std::map<std::string, Process> found;
  for (const Process& u : unfoldings(canonical(p), 1)) {
    Level level = split_level(u);
    for (std::size_t bi = 0; bi < level.binders.size(); ++bi) {
      const Name& v = level.binders[bi];
      std::vector<std::size_t> users;
      for (std::size_t c = 0; c < level.components.size(); ++c)
        if (fn(level.components[c]).count(v)) users.push_back(c);
      if (users.size() != 2) continue;
      for (int flip = 0; flip < 2; ++flip) {
        const Process& out = level.components[users[flip]];
        const Process& in = level.components[users[1 - flip]];
        if (out.kind() != Kind::output || out.channel() != v) continue;
        if (in.kind() != Kind::input || in.channel() != v) continue;
        Process residue = substitute(in.body(), in.binder(), out.datum());
        if (fn(residue).count(v)) continue;
        Level next;
        for (std::size_t j = 0; j < level.binders.size(); ++j)
          if (j != bi) next.binders.push_back(level.binders[j]);
        for (std::size_t c = 0; c < level.components.size(); ++c)
          if (c != users[0] && c != users[1]) next.components.push_back(level.components[c]);
        next.components.push_back(residue);
        Process q = canonical(assemble_level(next));
        found.emplace(render_term(q), q);
      }
    }
  }
  std::vector<Process> result;
  for (auto& [k, q] : found) result.push_back(q);
  return result;
}

std::vector<Process> inert_closure(const Process& p, std::size_t depth) { return inert_closure_ex(p, depth).first; }

CheckReport check_completeness(Scheme scheme, const Process& p, std::size_t step_bound) {
  CheckReport r = report("criterion:c", scheme, p);
  r.instance["step_bound"] = std::to_string(step_bound);
  Process target = encode(scheme, p, true);
  std::vector<Process> reducts = reduce_once(p);
  if (reducts.empty()) r.details["vacuous"] = "true";
  std::size_t longest = 0;
  for (std::size_t k = 0; k < reducts.size(); ++k) {
    Process goal = encode(scheme, reducts[k], true);
    auto len = path_length(target, goal, step_bound);
    std::string key = "reduct " + std::to_string(k) + " " + render_term(reducts[k]);
    if (len) {
      r.details[key] = "matched in " + std::to_string(*len);
      longest = std::max(longest, *len);
    } else {
      r.details[key] = "unmatched";
      r.outcome = CheckOutcome::fail;
      r.witness.push_back("no path of length <= " + std::to_string(step_bound) + " from " + render_term(target) +
                          " to " + render_term(goal));
    }
  }
  r.details["longest_path"] = std::to_string(longest);
  return r;
}

CheckReport check_soundness(Criterion criterion, Scheme scheme, const Process& p, std::size_t depth,
                            std::optional<RelationKind> equivalence) {
  if (criterion != Criterion::i && criterion != Criterion::s && criterion != Criterion::w && criterion != Criterion::g)
    throw std::invalid_argument("check_soundness: criterion must be i, s, w or g");
  if ((criterion == Criterion::w || criterion == Criterion::g) && !equivalence)
    equivalence = RelationKind{Equivalence::srwrb, false, false};
  if (criterion == Criterion::s) equivalence.reset();

  CheckReport r = report("criterion:" + criterion_name(criterion), scheme, p);
  r.instance["depth"] = std::to_string(depth);
  r.instance["equivalence"] = describe_eq(equivalence);

  StateSpace source(LabelMode::tau_only, depth);
  std::size_t sroot = source.add(p, 0);
  source.explore(sroot);
  std::vector<std::size_t> candidates;
  bool candidates_complete = true;
  if (criterion == Criterion::i) {
    candidates = direct_successors(source, sroot);
    candidates_complete = !source.is_frontier(sroot);
  } else {
    Reach all = reach(source, sroot);
    candidates = all.states;
    candidates_complete = all.complete;
  }
  std::vector<Process> images;
  for (std::size_t s : candidates) images.push_back(encode(scheme, source.term(s), true));

  StateSpace target(LabelMode::tau_only, depth);
  std::size_t troot = target.add(encode(scheme, p, true), 0);
  target.explore(troot);
  std::vector<std::size_t> targets;
  if (criterion == Criterion::i) {
    targets = direct_successors(target, troot);
    if (target.is_frontier(troot)) merge(r.outcome, CheckOutcome::unknown);
  } else {
    Reach all = reach(target, troot);
    targets = all.states;
    if (!all.complete) merge(r.outcome, CheckOutcome::unknown);
  }

  Matcher match(equivalence, depth);
  std::size_t checked = 0;
  for (std::size_t t : targets) {
    ++checked;
    CheckOutcome best = CheckOutcome::fail;
    std::vector<std::size_t> sides{t};
    bool sides_complete = true;
    if (criterion == Criterion::s || criterion == Criterion::g) {
      Reach rt = reach(target, t);
      sides = rt.states;
      sides_complete = rt.complete;
    }
    for (std::size_t k = 0; k < images.size() && best != CheckOutcome::pass; ++k) {
      for (std::size_t u : sides) {
        CheckOutcome o = match(target.term(u), images[k]);
        if (o == CheckOutcome::pass) {
          best = CheckOutcome::pass;
          break;
        }
        if (o == CheckOutcome::unknown) best = CheckOutcome::unknown;
      }
    }
    if (best == CheckOutcome::fail && (!candidates_complete || !sides_complete)) best = CheckOutcome::unknown;
    if (best == CheckOutcome::fail)
      r.witness.push_back("target state " + render_term(target.term(t)) + " has no matching source state");
    merge(r.outcome, best);
  }
  r.details["targets_checked"] = std::to_string(checked);
  r.details["source_candidates"] = std::to_string(candidates.size());
  return r;
}

CheckReport check_criterion(Criterion criterion, Scheme scheme, const Process& p, std::size_t depth,
                            std::optional<RelationKind> equivalence) {
  if (criterion == Criterion::i || criterion == Criterion::s || criterion == Criterion::w ||
      criterion == Criterion::g)
    return check_soundness(criterion, scheme, p, depth, equivalence);

  CheckReport r = report("criterion:" + criterion_name(criterion), scheme, p);
  r.instance["depth"] = std::to_string(depth);
  StateSpace source(LabelMode::tau_only, depth);
  std::size_t sroot = source.add(p, 0);
  source.explore(sroot);
  Reach all = reach(source, sroot);
  if (!all.complete) merge(r.outcome, CheckOutcome::unknown);

  if (criterion == Criterion::c) {
    r.instance["equivalence"] = "congruence";
    for (std::size_t s : all.states) {
      if (source.is_frontier(s)) continue;
      CheckReport one = check_completeness(scheme, source.term(s), depth);
      merge(r.outcome, one.outcome);
      r.witness.insert(r.witness.end(), one.witness.begin(), one.witness.end());
    }
    r.details["source_states"] = std::to_string(all.states.size());
    return r;
  }

  // c': S ==> S' implies encode(S) ==> T with T equivalent to encode(S').
  r.instance["equivalence"] = describe_eq(equivalence);
  StateSpace target(LabelMode::tau_only, target_depth(scheme, p, depth));
  std::size_t troot = target.add(encode(scheme, p, true), 0);
  target.explore(troot);
  Reach treach = reach(target, troot);
  Matcher match(equivalence, depth);
  for (std::size_t s : all.states) {
    Process image = encode(scheme, source.term(s), true);
    CheckOutcome best = CheckOutcome::fail;
    for (std::size_t t : treach.states) {
      CheckOutcome o = match(target.term(t), image);
      if (o == CheckOutcome::pass) {
        best = CheckOutcome::pass;
        break;
      }
      if (o == CheckOutcome::unknown) best = CheckOutcome::unknown;
    }
    if (best == CheckOutcome::fail && !treach.complete) best = CheckOutcome::unknown;
    if (best == CheckOutcome::fail) r.witness.push_back("source state " + render_term(source.term(s)) + " unmatched");
    merge(r.outcome, best);
  }
  r.details["source_states"] = std::to_string(all.states.size());
  r.details["target_states"] = std::to_string(treach.states.size());
  return r;
}

CheckReport check_success_sensitiveness(Scheme scheme, const Process& p, std::size_t depth) {
  CheckReport r = report("success", scheme, p);
  r.instance["depth"] = std::to_string(depth);
  WeakBarbs src = weak_barbs(p, depth);
  WeakBarbs tgt = weak_barbs(encode(scheme, p, true), target_depth(scheme, p, depth));
  bool s = src.definite.count(Barb::succ()) > 0;
  bool t = tgt.definite.count(Barb::succ()) > 0;
  r.details["source_reaches_ok"] = s ? "true" : (src.exhaustive ? "false" : "unknown");
  r.details["target_reaches_ok"] = t ? "true" : (tgt.exhaustive ? "false" : "unknown");
  if (s && t)
    r.outcome = CheckOutcome::pass;
  else if ((s && tgt.exhaustive) || (t && src.exhaustive))
    r.outcome = CheckOutcome::fail;
  else if (src.exhaustive && tgt.exhaustive)
    r.outcome = CheckOutcome::pass;
  else
    r.outcome = CheckOutcome::unknown;
  if (r.outcome == CheckOutcome::fail)
    r.witness.push_back(std::string(s ? "source" : "target") + " reaches ok, the other side cannot");
  return r;
}

CheckReport check_name_invariance(Scheme scheme, const Process& p, const NameMap& sigma, std::size_t depth) {
  for (const auto& [a, b] : sigma)
    if (a.reserved() || b.reserved()) throw std::invalid_argument("substitution mentions reserved names");
  CheckReport r = report("name-invariance", scheme, p);
  std::string text;
  for (const auto& [a, b] : sigma) text += (text.empty() ? "" : ",") + a.str() + "->" + b.str();
  r.instance["sigma"] = text;

  auto image = [&](const Name& n) {
    auto it = sigma.find(n);
    return it == sigma.end() ? n : it->second;
  };
  std::set<Name> seen;
  bool injective = true;
  for (const Name& n : fn(p))
    if (!seen.insert(image(n)).second) injective = false;
  r.details["injective"] = injective ? "true" : "false";

  Process lhs = encode(scheme, rename(p, sigma));
  Process rhs = rename(encode(scheme, p), sigma);
  if (injective) {
    r.outcome = alpha_eq(lhs, rhs) ? CheckOutcome::pass : CheckOutcome::fail;
    if (r.outcome == CheckOutcome::fail) r.witness.push_back(render_term(lhs) + " differs from " + render_term(rhs));
    return r;
  }
  Verdict v = check_bisim(RelationKind{Equivalence::wbb, false, false}, lhs, rhs, depth);
  r.outcome = v.outcome == Outcome::related       ? CheckOutcome::pass
              : v.outcome == Outcome::not_related ? CheckOutcome::fail
                                                  : CheckOutcome::unknown;
  for (const WitnessStep& w : v.witness) r.witness.push_back(w.text);
  r.verdict = std::move(v);
  return r;
}

CheckReport check_compositionality(Scheme scheme, const Operator& op, const std::vector<Process>& args) {
  CheckReport r;
  r.id = "compositionality";
  r.instance["scheme"] = scheme_name(scheme);
  r.instance["operator"] = op.describe();
  for (std::size_t i = 0; i < args.size(); ++i) r.instance["arg" + std::to_string(i + 1)] = render_term(args[i]);

  Process direct = encode(scheme, op.apply(args), true);
  std::vector<Process> encoded;
  NameSet n;
  for (const Process& a : args) {
    encoded.push_back(encode(scheme, a, true));
    for (const Name& x : fn(a)) n.insert(x);
  }
  Context dependent = encoding_context(scheme, op, n);
  Context fixed = fixed_encoding_context(scheme, op);
  bool exact_dependent = fill(dependent, encoded) == direct;
  bool exact_fixed = fill(fixed, encoded) == direct;
  bool alpha_fixed = alpha_eq(fill_capture_avoiding(fixed, encoded), direct);

  r.details["context"] = render_term(dependent.term);
  r.details["fixed_context"] = render_term(fixed.term);
  r.details["exact_with_name_dependent_context"] = exact_dependent ? "true" : "false";
  r.details["exact_with_fixed_context"] = exact_fixed ? "true" : "false";
  r.details["alpha_with_fixed_context"] = alpha_fixed ? "true" : "false";
  r.details["regime"] = exact_fixed ? "exact" : (exact_dependent && alpha_fixed ? "up_to_alpha" : "none");
  r.outcome = exact_dependent && alpha_fixed ? CheckOutcome::pass : CheckOutcome::fail;
  if (r.outcome == CheckOutcome::fail) r.witness.push_back("direct translation " + render_term(direct));
  return r;
}

CheckReport check_divergence(Scheme scheme, const Process& p, std::size_t depth) {
  CheckReport r = report("divergence", scheme, p);
  r.instance["depth"] = std::to_string(depth);
  Diverges s = diverges(p, depth);
  Diverges t = diverges(encode(scheme, p, true), target_depth(scheme, p, depth));
  auto name = [](Tristate x) { return x == Tristate::yes ? "yes" : x == Tristate::no ? "no" : "unknown"; };
  r.details["source"] = name(s.value);
  r.details["target"] = name(t.value);
  if (s.value == Tristate::unknown || t.value == Tristate::unknown)
    r.outcome = CheckOutcome::unknown;
  else
    r.outcome = s.value == t.value ? CheckOutcome::pass : CheckOutcome::fail;
  return r;
}

CheckReport check_validity(Scheme scheme, const RelationKind& kind, const Process& p, std::size_t depth) {
  CheckReport r = report("validity:" + describe(kind), scheme, p);
  r.instance["depth"] = std::to_string(depth);
  Verdict v = check_bisim(kind, p, encode(scheme, p, true), depth);
  r.outcome = v.outcome == Outcome::related       ? CheckOutcome::pass
              : v.outcome == Outcome::not_related ? CheckOutcome::fail
                                                  : CheckOutcome::unknown;
  for (const WitnessStep& w : v.witness) r.witness.push_back(w.text);
  if (v.outcome == Outcome::unknown) r.details["reason"] = v.reason;
  r.details["pairs"] = std::to_string(v.pairs_explored);
  r.verdict = std::move(v);
  return r;
}

CheckReport check_lemma(LemmaId id, const Process& p, std::size_t depth, Scheme scheme) {
  CheckReport r;
  r.id = "lemma:" + lemma_name(id);
  r.instance["term"] = render_term(p);
  r.instance["depth"] = std::to_string(depth);
  r.outcome = CheckOutcome::pass;

  switch (id) {
    case LemmaId::l1: {
      std::vector<Process> reducts = reduce_once(p);
      for (const Process& q : inert_steps(p))
        if (!contains_same(reducts, q)) {
          r.outcome = CheckOutcome::fail;
          r.witness.push_back("inert step to " + render_term(q) + " is not a reduction");
        }
      return r;
    }
    case LemmaId::l2: {
      for (const Process& q : inert_steps(p)) {
        std::vector<Process> q_reducts = reduce_once(q);
        for (const Process& p1 : reduce_once(p)) {
          if (same(p1, q)) continue;
          std::vector<Process> targets = inert_steps(p1);
          bool ok = std::any_of(q_reducts.begin(), q_reducts.end(),
                                [&](const Process& q1) { return contains_same(targets, q1); });
          if (!ok) {
            r.outcome = CheckOutcome::fail;
            r.witness.push_back("inert " + render_term(q) + ", reduct " + render_term(p1) + ": no closing diamond");
          }
        }
      }
      return r;
    }
    case LemmaId::l2star: {
      auto [closure, closed] = inert_closure_ex(p, depth);
      if (!closed) r.details["truncated"] = "true";
      for (const Process& q : closure) {
        std::vector<Process> q_reducts = reduce_once(q);
        for (const Process& p1 : reduce_once(p)) {
          auto [from_p1, p1_closed] = inert_closure_ex(p1, depth);
          if (contains_same(from_p1, q)) continue;
          bool ok = std::any_of(q_reducts.begin(), q_reducts.end(),
                                [&](const Process& q1) { return contains_same(from_p1, q1); });
          if (!ok) {
            merge(r.outcome, p1_closed ? CheckOutcome::fail : CheckOutcome::unknown);
            r.witness.push_back("inert* " + render_term(q) + ", reduct " + render_term(p1) + ": no closing diamond");
          }
        }
      }
      return r;
    }
    case LemmaId::postponed_barbs: {
      const std::set<BarbKind> io{BarbKind::in, BarbKind::out};
      BarbSet before = filter_barbs(strong_barbs(p), io);
      for (const Process& q : inert_steps(p)) {
        BarbSet after = filter_barbs(strong_barbs(q), io);
        for (const Barb& b : before)
          if (!after.count(b)) {
            r.outcome = CheckOutcome::fail;
            r.witness.push_back("barb " + render_barb(b) + " lost in inert step to " + render_term(q));
          }
      }
      return r;
    }
    case LemmaId::l5: {
      CheckReport c = check_completeness(scheme, p, 3);
      c.id = r.id;
      c.instance["depth"] = r.instance["depth"];
      return c;
    }
    case LemmaId::l6: {
      r.instance["scheme"] = scheme_name(scheme);
      std::vector<Process> reducts = reduce_once(p);
      std::vector<Process> images;
      for (const Process& p1 : reducts) images.push_back(encode(scheme, p1, true));
      for (const Process& q : reduce_once(encode(scheme, p, true))) {
        auto [closure, closed] = inert_closure_ex(q, depth);
        bool ok = std::any_of(images.begin(), images.end(),
                              [&](const Process& img) { return contains_same(closure, img); });
        if (!ok) {
          merge(r.outcome, closed ? CheckOutcome::fail : CheckOutcome::unknown);
          r.witness.push_back("target reduct " + render_term(q) + " reaches no translated source reduct");
        }
      }
      return r;
    }
  }
  return r;
}

}  // namespace piw
