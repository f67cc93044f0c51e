#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "piw/encodings.hpp"
#include "piw/harness.hpp"
#include "piw/semantics.hpp"
#include "support.hpp"

using namespace piw;
using test::P;
using test::n;

namespace {

NameSet universe_of(const Process& p, const Name& extra = reserved_name("c1")) {
  NameSet u = fn(p);
  u.insert(extra);
  return u;
}

std::set<std::string> keys(const std::vector<Process>& ps) {
  std::set<std::string> out;
  for (const Process& p : ps) out.insert(canonical_key(p));
  return out;
}

std::vector<std::string> rendered(const std::vector<Step>& steps) {
  std::vector<std::string> out;
  for (const auto& [l, q] : steps) out.push_back(render_label(l) + " -> " + render_term(q));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("Label: free and bound names") {
  CHECK(Label::tau().free().empty());
  CHECK(Label::tau().bound().empty());
  CHECK(Label::free_output(n("x"), n("z")).free() == NameSet{n("x"), n("z")});
  CHECK(Label::free_output(n("x"), n("z")).bound().empty());
  CHECK(Label::bound_output(n("x"), n("y")).bound() == NameSet{n("y")});
  CHECK(Label::bound_output(n("x"), n("y")).free() == NameSet{n("x")});
  CHECK(Label::input(n("x"), n("y")).bound() == NameSet{n("y")});
  CHECK(render_label(Label::tau()) == "tau");
  CHECK(render_label(Label::free_output(n("x"), n("z"))) == "x!z");
  CHECK(render_label(Label::bound_output(n("x"), n("c"))) == "x!(c)");
  CHECK(render_label(Label::input(n("x"), n("c"))) == "x?(c)");
}

TEST_CASE("step_labels: spec examples") {
  Process out = P("x!z.0");
  auto s = step_labels(out, universe_of(out));
  REQUIRE(s.size() == 1);
  CHECK(s[0].first == Label::free_output(n("x"), n("z")));
  CHECK(s[0].second.is_nil());

  Process b = P("(nu u)(x!u | u?(v).(v!z|0))");
  auto t = step_labels(b, universe_of(b));
  REQUIRE(t.size() == 1);
  CHECK(t[0].first.kind == LabelKind::bound_output);
  CHECK(t[0].first.subject == n("x"));
  Name c = t[0].first.object;
  CHECK(c.reserved());
  CHECK(congruent(t[0].second, P("(nu u)(0 | " + c.str() + "?(v).(v!z|0))"), 0));

  CHECK(step_labels(P("0"), {reserved_name("c1")}).empty());
}

TEST_CASE("step_labels: Table 1 rules") {
  // COM, PAR both sides, INPUT-ACT.
  CHECK(rendered(step_labels(P("x!z | x?(y).y!w"), universe_of(P("x!z | x?(y).y!w")))) ==
        std::vector<std::string>{"tau -> z!w", "x!z -> x?(%b1).%b1!w", "x?(%c1) -> %c1!w | x!z"});
  // CLOSE: the extruded name stays private after the communication.
  auto close = step_labels(P("(nu y)x!y | x?(q).q!a"), universe_of(P("(nu y)x!y | x?(q).q!a")));
  CHECK(rendered(close).front() == "tau -> (nu %b1)%b1!a");
  // RES blocks the restricted channel.
  CHECK(step_labels(P("(nu x)x!z"), universe_of(P("(nu x)x!z"))).empty());
  // REP-ACT, REP-COMM.
  auto rep = rendered(step_labels(P("!(x!a | x?(y).0)"), universe_of(P("!(x!a | x?(y).0)"))));
  CHECK(std::count_if(rep.begin(), rep.end(), [](const std::string& s) { return s.rfind("tau", 0) == 0; }) == 2);
  // REP-CLOSE: two copies of a replicated bound output and input.
  auto rc = step_labels(P("!((nu y)x!y | x?(q).q!a)"), universe_of(P("!((nu y)x!y | x?(q).q!a)")));
  CHECK(std::any_of(rc.begin(), rc.end(), [](const Step& s) { return s.first.is_tau(); }));
  // Success has no transitions.
  CHECK(step_labels(P("ok"), {reserved_name("c1")}).empty());
}

TEST_CASE("step_labels: precondition on the universe") {
  CHECK_THROWS_AS(step_labels(P("x!z"), {n("x")}), std::invalid_argument);
  CHECK_THROWS_AS(step_labels(P("x!z"), {n("x"), n("z")}), std::invalid_argument);
}

TEST_CASE("reduce_once: spec examples") {
  auto r = reduce_once(P("x!z.0 | x?(y).y!w.0"));
  REQUIRE(r.size() == 1);
  CHECK(r[0] == canonical(P("z!w.0")));
  CHECK(reduce_once(P("0")).empty());

  Process tb = encode(Scheme::boudol, P("x!z.0 | x?(y).0"));
  auto s = reduce_once(tb);
  REQUIRE(s.size() == 1);
  CHECK(congruent(s[0], P("(nu u)(u?(v).(v!z|0) | (nu v)(u!v | v?(y).0))"), 0));
}

TEST_CASE("oracle: reduce_once agrees with a direct top-level reducer") {
  oracle::Enumerator e({n("a"), n("b")}, true);
  std::vector<Process> terms = e.up_to(4);
  GenConfig cfg;
  cfg.seed = 31;
  cfg.max_size = 10;
  cfg.communication_bias = 0.6;
  cfg.insert_success_probability = 0.2;
  for (const Process& p : generate_corpus(cfg, 400)) terms.push_back(p);
  std::size_t mismatches = 0, reducing = 0;
  for (const Process& p : terms) {
    auto lib = keys(reduce_once(p));
    auto ora = keys(oracle::reductions(p));
    reducing += !ora.empty();
    if (lib != ora && ++mismatches < 5) MESSAGE("reducts differ for " << render_term(p));
  }
  CHECK(mismatches == 0);
  CHECK(reducing > 300);
}

TEST_CASE("property: Harmony clause 1 on congruent rewrites") {
  GenConfig cfg;
  cfg.seed = 17;
  cfg.max_size = 8;
  cfg.allow_replication = true;
  cfg.communication_bias = 0.5;
  std::mt19937_64 rng(2);
  for (const Process& p : generate_corpus(cfg, 200)) {
    Process q = p;
    for (int i = 0; i < 6; ++i) {
      std::vector<Process> next;
      oracle::rewrites(q, next);
      q = next[rng() % next.size()];
    }
    REQUIRE(congruent(p, q, 0));
    NameSet u = universe_of(p);
    auto ps = step_labels(p, u);
    auto qs = step_labels(q, u);
    CAPTURE(render_term(p));
    CAPTURE(render_term(q));
    for (const auto& [a, p2] : ps) {
      bool found = std::any_of(qs.begin(), qs.end(),
                               [&](const Step& s) { return s.first == a && congruent(p2, s.second, 1); });
      CHECK(found);
    }
  }
}

TEST_CASE("property: step_labels does not depend on the fresh name chosen") {
  GenConfig cfg;
  cfg.seed = 19;
  cfg.max_size = 8;
  cfg.allow_replication = true;
  for (const Process& p : generate_corpus(cfg, 200)) {
    Name f1 = reserved_name("c1"), f2 = reserved_name("c9");
    auto a = step_labels(p, universe_of(p, f1));
    auto b = step_labels(p, universe_of(p, f2));
    REQUIRE(a.size() == b.size());
    std::multiset<std::string> ra, rb;
    for (const auto& [l, q] : a) {
      Label m = l;
      Process t = q;
      if (l.binds() && l.object == f1) m.object = f2, t = substitute(q, f1, f2);
      ra.insert(render_label(m) + " " + canonical_key(t));
    }
    for (const auto& [l, q] : b) rb.insert(render_label(l) + " " + canonical_key(q));
    CAPTURE(render_term(p));
    CHECK(ra == rb);
  }
}

TEST_CASE("build_fragment: spec examples") {
  LtsFragment a = build_fragment(P("x!z.0"), 1, LabelMode::all_labels, 1);
  CHECK(a.states.size() == 2);
  CHECK(a.transitions.size() == 1);

  LtsFragment b = build_fragment(encode(Scheme::boudol, P("x!z.0")), 3, LabelMode::all_labels, 2);
  CHECK(b.states.size() == 4);
  REQUIRE(b.transitions.size() == 3);
  CHECK(render_label(b.transitions[0].label) == "x!(%c1)");
  CHECK(render_label(b.transitions[1].label) == "%c1?(%c2)");
  CHECK(render_label(b.transitions[2].label) == "%c2!z");
  CHECK(b.frontier_free());

  LtsFragment c = build_fragment(P("0"), 5, LabelMode::all_labels, 1);
  CHECK(c.states.size() == 1);
  CHECK(c.transitions.empty());
}

TEST_CASE("build_fragment: frontier and invariants") {
  LtsFragment f = build_fragment(P("!x?(y).y!a"), 2, LabelMode::all_labels, 1);
  CHECK_FALSE(f.frontier_free());
  LtsFragment t = build_fragment(P("x!b | x?(y).y!a | b?(q).ok"), 5, LabelMode::tau_only, 1);
  CHECK(t.frontier_free());
  CHECK(t.states.size() == 3);
  for (const FragmentEdge& e : t.transitions) CHECK(e.label.is_tau());

  GenConfig cfg;
  cfg.seed = 23;
  cfg.max_size = 8;
  cfg.allow_replication = true;
  cfg.communication_bias = 0.5;
  for (const Process& p : generate_corpus(cfg, 60)) {
    LtsFragment g = build_fragment(p, 3, LabelMode::all_labels, 1);
    LtsFragment h = build_fragment(p, 3, LabelMode::all_labels, 1);
    CHECK(g.transitions.size() == h.transitions.size());
    CHECK(g.states == h.states);
    for (const Process& s : g.states) CHECK(canonical(s) == s);
    for (std::size_t s = 0; s < g.states.size(); ++s) {
      if (g.frontier[s]) continue;
      // Every tau successor of an expanded state is present as an edge.
      std::set<std::string> edges;
      for (const FragmentEdge& e : g.transitions)
        if (e.source == s && e.label.is_tau()) edges.insert(canonical_key(g.states[e.target]));
      CHECK(edges == keys(reduce_once(g.states[s])));
    }
  }
}

TEST_CASE("diverges: spec examples") {
  CHECK(diverges(P("0"), 5).value == Tristate::no);
  Diverges d = diverges(P("!(x!a | x?(y).0)"), 4);
  CHECK(d.value == Tristate::yes);
  CHECK_FALSE(d.cycle.empty());
  CHECK(diverges(P("x!z.0 | x?(y).y!w.0"), 3).value == Tristate::no);
  // A replicated sender alone never reduces.
  CHECK(diverges(P("!x!a"), 3).value == Tristate::no);
  // Unbounded growth without a cycle is not decided.
  CHECK(diverges(P("!x!a | !x?(y).(x!y | x!y)"), 3).value != Tristate::no);
}

TEST_CASE("property: replication-free terms do not diverge") {
  GenConfig cfg;
  cfg.seed = 29;
  cfg.max_size = 10;
  cfg.communication_bias = 0.7;
  for (const Process& p : generate_corpus(cfg, 200)) {
    CAPTURE(render_term(p));
    CHECK(diverges(p, 20).value == Tristate::no);
  }
}
