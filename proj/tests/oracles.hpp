#pragma once
// Test-side oracles. They share only the term representation, rendering,
// substitution and alpha_normalize with the library; reductions, barbs,
// congruence closure and bisimulation are recomputed naively here.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "piw/congruence.hpp"
#include "piw/observables.hpp"
#include "piw/process.hpp"
#include "piw/syntax.hpp"

namespace oracle {

using piw::Kind;
using piw::Name;
using piw::NameSet;
using piw::Process;

// ---- enumeration ---------------------------------------------------------

// All terms whose size is exactly n. By default Nil continuations are free;
// with `count_nil` every node counts, Nil included. Binders get
// depth-indexed names, Par operands are unordered (i <= j), no Par has a
// Nil operand. With `success` the leaf ok is included.
class Enumerator {
 public:
  Enumerator(std::vector<Name> pool, bool success, bool restriction = true, bool count_nil = false)
      : pool_(std::move(pool)), success_(success), restriction_(restriction), nil_cost_(count_nil ? 1 : 0) {}

  std::vector<Process> exactly(std::size_t n) { return terms(n, pool_, 0); }

  std::vector<Process> up_to(std::size_t n) {
    std::vector<Process> out{Process::nil()};
    for (std::size_t k = 1; k <= n; ++k) {
      auto ts = exactly(k);
      out.insert(out.end(), ts.begin(), ts.end());
    }
    return out;
  }

 private:
  std::vector<Name> pool_;
  bool success_;
  bool restriction_;
  std::size_t nil_cost_;

  std::vector<Process> cont(std::size_t n, const std::vector<Name>& scope, std::size_t depth) {
    std::vector<Process> out;
    if (n == nil_cost_) out.push_back(Process::nil());
    for (const Process& t : terms(n, scope, depth)) out.push_back(t);
    return out;
  }

  std::vector<Process> terms(std::size_t n, const std::vector<Name>& scope, std::size_t depth) {
    std::vector<Process> out;
    if (n == 0) return out;
    if (n == 1 && success_) out.push_back(Process::success());
    for (const Name& x : scope)
      for (const Name& y : scope)
        for (const Process& k : cont(n - 1, scope, depth)) out.push_back(Process::output(x, y, k));
    Name b = piw::source_name("v" + std::to_string(depth + 1));
    std::vector<Name> inner = scope;
    inner.push_back(b);
    for (const Name& x : scope)
      for (const Process& k : cont(n - 1, inner, depth + 1)) out.push_back(Process::input(x, b, k));
    if (restriction_ && n >= 2)
      for (const Process& k : terms(n - 1, inner, depth + 1)) out.push_back(Process::restrict(b, k));
    for (std::size_t i = 1; i + i <= n - 1; ++i) {
      auto ls = terms(i, scope, depth);
      auto rs = terms(n - 1 - i, scope, depth);
      for (const Process& l : ls)
        for (const Process& r : rs) out.push_back(Process::par(l, r));
    }
    return out;
  }
};

// One representative per canonical class, in enumeration order.
inline std::vector<Process> distinct_classes(const std::vector<Process>& ts) {
  std::vector<Process> out;
  std::unordered_set<std::string> seen;
  for (const Process& t : ts)
    if (seen.insert(piw::canonical_key(t)).second) out.push_back(t);
  return out;
}

// ---- reductions ------------------------------------------------------------

inline void collect_names(const Process& p, NameSet& out) {
  for (const Name& n : piw::names(p)) out.insert(n);
}

// Flattens Par and pulls restrictions outward, renaming each restricted name
// to a reserved name unused anywhere in the term.
inline void flatten(const Process& p, std::vector<Name>& binders, std::vector<Process>& comps, NameSet& used,
                    std::size_t& counter) {
  switch (p.kind()) {
    case Kind::nil:
      return;
    case Kind::par:
      flatten(p.left(), binders, comps, used, counter);
      flatten(p.right(), binders, comps, used, counter);
      return;
    case Kind::restrict: {
      Name r;
      do r = piw::reserved_name("r" + std::to_string(++counter));
      while (used.count(r));
      used.insert(r);
      binders.push_back(r);
      flatten(piw::substitute(p.body(), p.binder(), r), binders, comps, used, counter);
      return;
    }
    case Kind::repl:
      throw std::logic_error("oracle reducer: replication not supported");
    default:
      comps.push_back(p);
  }
}

inline Process rebuild(const std::vector<Name>& binders, const std::vector<Process>& comps) {
  Process body = Process::nil();
  bool first = true;
  for (const Process& c : comps) {
    if (c.is_nil()) continue;
    body = first ? c : Process::par(body, c);
    first = false;
  }
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Process::restrict(*it, body);
  return body;
}

// Every one-step communication of a replication-free term.
inline std::vector<Process> reductions(const Process& p) {
  std::vector<Name> binders;
  std::vector<Process> comps;
  NameSet used;
  collect_names(p, used);
  std::size_t counter = 0;
  flatten(p, binders, comps, used, counter);
  std::vector<Process> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].kind() != Kind::output) continue;
    for (std::size_t j = 0; j < comps.size(); ++j) {
      if (comps[j].kind() != Kind::input || comps[j].channel() != comps[i].channel()) continue;
      std::vector<Process> next;
      for (std::size_t k = 0; k < comps.size(); ++k)
        if (k != i && k != j) next.push_back(comps[k]);
      next.push_back(comps[i].body());
      next.push_back(piw::substitute(comps[j].body(), comps[j].binder(), comps[i].datum()));
      out.push_back(rebuild(binders, next));
    }
  }
  return out;
}

// ---- barbs -------------------------------------------------------------------

struct Barbs {
  std::set<std::string> in, out, chan;
  bool succ = false;
};

inline void barbs_into(const Process& p, const NameSet& hidden, Barbs& b) {
  switch (p.kind()) {
    case Kind::output:
      if (!hidden.count(p.channel())) b.out.insert(p.channel().str()), b.chan.insert(p.channel().str());
      return;
    case Kind::input:
      if (!hidden.count(p.channel())) b.in.insert(p.channel().str()), b.chan.insert(p.channel().str());
      return;
    case Kind::success:
      b.succ = true;
      return;
    case Kind::par:
      barbs_into(p.left(), hidden, b);
      barbs_into(p.right(), hidden, b);
      return;
    case Kind::restrict: {
      NameSet h = hidden;
      h.insert(p.binder());
      barbs_into(p.body(), h, b);
      return;
    }
    case Kind::repl:
      barbs_into(p.body(), hidden, b);
      return;
    default:
      return;
  }
}

inline Barbs barbs(const Process& p) {
  Barbs b;
  barbs_into(p, {}, b);
  return b;
}

// ---- tau graph and bisimulation ---------------------------------------------

struct Graph {
  std::vector<Process> states;
  std::vector<std::vector<std::size_t>> succ;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t add(const Process& p, std::deque<std::size_t>& todo) {
    std::string k = piw::canonical_key(p);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    index.emplace(k, states.size());
    states.push_back(p);
    succ.emplace_back();
    todo.push_back(states.size() - 1);
    return states.size() - 1;
  }

  std::size_t explore(const Process& root) {
    std::deque<std::size_t> todo;
    std::size_t r = add(root, todo);
    while (!todo.empty()) {
      std::size_t s = todo.front();
      todo.pop_front();
      std::vector<std::size_t> next;
      for (const Process& t : reductions(states[s])) next.push_back(add(t, todo));
      succ[s] = std::move(next);
    }
    return r;
  }
};

enum class Kind2 { wbb, awbb, wcb, srwrb };

inline std::set<std::string> observed(Kind2 k, const Barbs& b) {
  std::set<std::string> out;
  auto add = [&](const std::set<std::string>& s, const char* tag) {
    for (const auto& x : s) out.insert(x + tag);
  };
  switch (k) {
    case Kind2::wbb:
      add(b.in, "?"), add(b.out, "!");
      break;
    case Kind2::awbb:
      add(b.out, "!");
      break;
    case Kind2::wcb:
      add(b.chan, "");
      break;
    case Kind2::srwrb:
      if (b.succ) out.insert("ok");
      break;
  }
  return out;
}

// Greatest weak barbed bisimulation over the full reduction graphs of p and q,
// refined from the complete cross product.
inline bool bisimilar(Kind2 kind, const Process& p, const Process& q) {
  Graph g;
  std::size_t rp = g.explore(p);
  std::size_t rq = g.explore(q);
  const std::size_t n = g.states.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = 1;
    while (!stack.empty()) {
      std::size_t t = stack.back();
      stack.pop_back();
      for (std::size_t u : g.succ[t])
        if (!reach[s][u]) reach[s][u] = 1, stack.push_back(u);
    }
  }
  std::vector<std::set<std::string>> strong(n), weak(n);
  for (std::size_t s = 0; s < n; ++s) strong[s] = observed(kind, barbs(g.states[s]));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      if (reach[s][t]) weak[s].insert(strong[t].begin(), strong[t].end());

  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 1));
  auto half = [&](std::size_t s, std::size_t t) {
    for (const auto& b : strong[s])
      if (!weak[t].count(b)) return false;
    for (std::size_t s2 : g.succ[s]) {
      bool ok = false;
      for (std::size_t t2 = 0; t2 < n && !ok; ++t2) ok = reach[t][t2] && rel[s2][t2];
      if (!ok) return false;
    }
    return true;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t t = 0; t < n; ++t)
        if (rel[s][t] && !(half(s, t) && half(t, s))) rel[s][t] = 0, changed = true;
  }
  return rel[rp][rq];
}

// ---- structural congruence closure --------------------------------------------

// Node count with Nil counted, the measure bounding the closure.
inline std::size_t raw_size(const Process& p) {
  switch (p.kind()) {
    case Kind::output:
    case Kind::input:
    case Kind::restrict:
    case Kind::repl:
      return 1 + raw_size(p.body());
    case Kind::par:
      return 1 + raw_size(p.left()) + raw_size(p.right());
    default:
      return 1;
  }
}

// Rules (1)-(3) and (5)-(7) applied once at the root, both directions.
inline void root_rewrites(const Process& t, std::vector<Process>& out) {
  NameSet all = piw::names(t);
  Name fresh = piw::fresh_variant(piw::reserved_name("w"), all);
  if (t.kind() == Kind::par) {
    const Process &l = t.left(), &r = t.right();
    out.push_back(Process::par(r, l));  // (2)
    if (r.kind() == Kind::par) out.push_back(Process::par(Process::par(l, r.left()), r.right()));  // (1)
    if (l.kind() == Kind::par) out.push_back(Process::par(l.left(), Process::par(l.right(), r)));  // (1) reversed
    if (r.is_nil()) out.push_back(l);  // (3)
    if (r.kind() == Kind::restrict) {  // (7) reversed, alpha-converting the binder away from l
      Process body = piw::substitute(r.body(), r.binder(), fresh);
      out.push_back(Process::restrict(fresh, Process::par(l, body)));
    }
  }
  out.push_back(Process::par(t, Process::nil()));  // (3) reversed
  if (t.is_nil()) out.push_back(Process::restrict(fresh, Process::nil()));  // (5) reversed
  if (t.kind() == Kind::restrict) {
    const Process& b = t.body();
    if (b.is_nil()) out.push_back(Process::nil());  // (5)
    if (b.kind() == Kind::restrict) out.push_back(Process::restrict(b.binder(), Process::restrict(t.binder(), b.body())));  // (6)
    if (b.kind() == Kind::par && !piw::fn(b.left()).count(t.binder()))  // (7)
      out.push_back(Process::par(b.left(), Process::restrict(t.binder(), b.right())));
  }
}

inline void rewrites(const Process& t, std::vector<Process>& out) {
  root_rewrites(t, out);
  std::vector<Process> sub;
  switch (t.kind()) {
    case Kind::output:
      rewrites(t.body(), sub);
      for (const Process& s : sub) out.push_back(Process::output(t.channel(), t.datum(), s));
      return;
    case Kind::input:
      rewrites(t.body(), sub);
      for (const Process& s : sub) out.push_back(Process::input(t.channel(), t.binder(), s));
      return;
    case Kind::restrict:
      rewrites(t.body(), sub);
      for (const Process& s : sub) out.push_back(Process::restrict(t.binder(), s));
      return;
    case Kind::repl:
      rewrites(t.body(), sub);
      for (const Process& s : sub) out.push_back(Process::repl(s));
      return;
    case Kind::par: {
      rewrites(t.left(), sub);
      for (const Process& s : sub) out.push_back(Process::par(s, t.right()));
      sub.clear();
      rewrites(t.right(), sub);
      for (const Process& s : sub) out.push_back(Process::par(t.left(), s));
      return;
    }
    default:
      return;
  }
}

// Partition of `terms` into classes of the rewrite graph restricted to terms of
// raw size <= bound, keyed modulo alpha (rules (8), (9)). Returns class ids.
inline std::vector<std::size_t> congruence_classes(const std::vector<Process>& terms, std::size_t bound) {
  std::unordered_map<std::string, std::size_t> cls;
  std::vector<std::size_t> ids;
  std::size_t next = 0;
  for (const Process& t0 : terms) {
    Process t = piw::alpha_normalize(t0);
    std::string k = piw::render_term(t);
    auto it = cls.find(k);
    if (it != cls.end()) {
      ids.push_back(it->second);
      continue;
    }
    std::size_t id = next++;
    cls.emplace(k, id);
    std::vector<Process> stack{t};
    while (!stack.empty()) {
      Process u = stack.back();
      stack.pop_back();
      std::vector<Process> out;
      rewrites(u, out);
      for (const Process& v0 : out) {
        if (raw_size(v0) > bound) continue;
        Process v = piw::alpha_normalize(v0);
        if (cls.emplace(piw::render_term(v), id).second) stack.push_back(v);
      }
    }
    ids.push_back(id);
  }
  return ids;
}

}  // namespace oracle
