// Command-line front end: parse, encode, explore and check terms.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "piw/congruence.hpp"
#include "piw/correspondence.hpp"
#include "piw/encodings.hpp"
#include "piw/equivalences.hpp"
#include "piw/harness.hpp"
#include "piw/observables.hpp"
#include "piw/report.hpp"
#include "piw/semantics.hpp"
#include "piw/syntax.hpp"

using namespace piw;

namespace {

constexpr int usage_error = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A path to an existing file, or else the term text itself.
std::string load(const std::string& arg) {
  if (arg == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return arg;
}

Process term_arg(const std::string& arg, bool allow_reserved = false) {
  std::string text = load(arg);
  try {
    return parse_term(text, allow_reserved);
  } catch (const ParseError& e) {
    throw UsageError(std::string("parse error at offset ") + std::to_string(e.offset()) + ": " + e.what());
  }
}

Scheme scheme_of(const std::string& s) {
  auto r = parse_scheme(s);
  if (!r) throw UsageError("unknown scheme '" + s + "'");
  return *r;
}

RelationKind kind_of(const std::string& s, bool div, bool branching) {
  auto e = parse_equivalence(s);
  if (!e) throw UsageError("unknown equivalence '" + s + "'");
  if (branching && is_label_based(*e)) throw UsageError("--branching needs wbb, awbb, wcb or srwrb");
  return {*e, div, branching};
}

std::vector<std::string> names_of(const NameSet& s) {
  std::vector<std::string> out;
  for (const Name& n : s) out.push_back(n.str());
  return out;
}

std::vector<std::string> barbs_of(const BarbSet& s) {
  std::vector<std::string> out;
  for (const Barb& b : s) out.push_back(render_barb(b));
  return out;
}

int emit(const std::map<std::string, std::string>& config, const SuiteReport& suite) {
  std::cout << render_report(config, suite);
  return exit_code(suite);
}

SuiteReport single(CheckReport r) {
  SuiteReport s;
  if (r.outcome == CheckOutcome::pass)
    ++s.passed;
  else if (r.outcome == CheckOutcome::fail)
    ++s.failed;
  else
    ++s.unknown;
  s.reports.push_back(std::move(r));
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pi-calculus encoding workbench"};
  app.require_subcommand(1);

  std::string file, lhs, rhs, scheme = "boudol", kind = "wbb", labels = "all", dot_out, criterion, lemma;
  std::size_t depth = 8, fresh = 1, seed = 1, corpus_size = 10, max_size = 8;
  bool weak = false, div = false, branching = false, replication = false, reserved = false;
  double success = 0.0;
  app.add_flag("--allow-reserved", reserved, "Accept %-prefixed protocol names in input terms");

  auto* parse = app.add_subcommand("parse", "Parse a term and print its forms");
  parse->add_option("FILE", file, "Term file or inline term")->required();

  auto* enc = app.add_subcommand("encode", "Translate into the asynchronous calculus");
  enc->add_option("--scheme", scheme, "boudol or ht");
  enc->add_option("FILE", file)->required();

  auto* lts = app.add_subcommand("lts", "Bounded labelled transition system");
  lts->add_option("--depth", depth);
  lts->add_option("--labels", labels, "tau or all");
  lts->add_option("--fresh", fresh, "Extra fresh names in the universe");
  lts->add_option("--dot", dot_out, "Write Graphviz output here ('-' for stdout)");
  lts->add_option("FILE", file)->required();

  auto* barbs = app.add_subcommand("barbs", "Strong or weak barbs");
  barbs->add_flag("--weak", weak);
  barbs->add_option("--depth", depth);
  barbs->add_option("FILE", file)->required();

  auto* check = app.add_subcommand("check", "Compare two terms");
  check->add_option("--kind", kind, "ewb wot wab wbb awbb wcb srwrb");
  check->add_flag("--div", div, "Divergence preserving");
  check->add_flag("--branching", branching);
  check->add_option("--depth", depth);
  check->add_option("LHS", lhs)->required();
  check->add_option("RHS", rhs)->required();

  auto* validate = app.add_subcommand("validate", "Validity of an encoding on a generated corpus");
  validate->add_option("--scheme", scheme);
  validate->add_option("--kind", kind);
  validate->add_flag("--div", div);
  validate->add_flag("--branching", branching);
  validate->add_option("--depth", depth);
  validate->add_option("--corpus-seed", seed);
  validate->add_option("--corpus-size", corpus_size);
  validate->add_option("--max-size", max_size);
  validate->add_flag("--replication", replication);
  validate->add_option("--success", success, "Probability of ok leaves");

  auto* corr = app.add_subcommand("correspondence", "Operational correspondence criterion");
  corr->add_option("--criterion", criterion, "c cp i s w g")->required();
  corr->add_option("--scheme", scheme);
  corr->add_option("--kind", kind, "Target equivalence for cp, w, g");
  corr->add_option("--depth", depth);
  corr->add_option("FILE", file)->required();

  auto* lem = app.add_subcommand("lemma", "Appendix lemma on one instance");
  lem->add_option("--id", lemma, "l1 l2 l2star pb l5 l6")->required();
  lem->add_option("--scheme", scheme);
  lem->add_option("--depth", depth);
  lem->add_option("FILE", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage_error;
  }

  try {
    if (parse->parsed()) {
      Process p = term_arg(file, reserved);
      nlohmann::json j;
      j["term"] = render_term(p);
      j["canonical"] = canonical_key(p);
      j["size"] = size(p);
      j["free_names"] = names_of(fn(p));
      j["asynchronous"] = is_asynchronous(p);
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (enc->parsed()) {
      Process p = term_arg(file, reserved);
      nlohmann::json j;
      j["scheme"] = scheme_name(scheme_of(scheme));
      j["term"] = render_term(p);
      j["encoding"] = render_term(encode(scheme_of(scheme), p, reserved));
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (lts->parsed()) {
      Process p = term_arg(file, reserved);
      if (labels != "tau" && labels != "all") throw UsageError("--labels must be tau or all");
      if (fresh < 1) throw UsageError("--fresh must be at least 1");
      LtsFragment f = build_fragment(p, depth, labels == "tau" ? LabelMode::tau_only : LabelMode::all_labels, fresh);
      if (!dot_out.empty()) {
        std::string dot = export_dot(f);
        if (dot_out == "-") {
          std::cout << dot;
          return 0;
        }
        std::ofstream(dot_out) << dot;
      }
      nlohmann::json j;
      j["states"] = f.states.size();
      j["transitions"] = f.transitions.size();
      j["frontier_free"] = f.frontier_free();
      j["universe"] = names_of(f.universe);
      nlohmann::json edges = nlohmann::json::array();
      for (const FragmentEdge& e : f.transitions)
        edges.push_back({{"from", e.source}, {"label", render_label(e.label)}, {"to", e.target}});
      j["edges"] = edges;
      nlohmann::json states = nlohmann::json::array();
      for (const Process& s : f.states) states.push_back(render_term(s));
      j["state_terms"] = states;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (barbs->parsed()) {
      Process p = term_arg(file, reserved);
      nlohmann::json j;
      j["term"] = render_term(p);
      if (weak) {
        WeakBarbs w = weak_barbs(p, depth);
        j["weak"] = barbs_of(w.definite);
        j["exhaustive"] = w.exhaustive;
      } else {
        j["strong"] = barbs_of(strong_barbs(p));
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (check->parsed()) {
      RelationKind k = kind_of(kind, div, branching);
      Process p = term_arg(lhs, reserved);
      Process q = term_arg(rhs, reserved);
      Verdict v = check_bisim(k, p, q, depth);
      CheckReport r;
      r.id = "check:" + describe(k);
      r.instance = {{"lhs", render_term(p)}, {"rhs", render_term(q)}, {"depth", std::to_string(depth)}};
      r.outcome = v.outcome == Outcome::related       ? CheckOutcome::pass
                  : v.outcome == Outcome::not_related ? CheckOutcome::fail
                                                      : CheckOutcome::unknown;
      r.verdict = v;
      return emit({{"command", "check"}, {"kind", describe(k)}, {"depth", std::to_string(depth)}}, single(r));
    }
    if (validate->parsed()) {
      RelationKind k = kind_of(kind, div, branching);
      Scheme s = scheme_of(scheme);
      GenConfig cfg;
      cfg.seed = seed;
      cfg.max_size = max_size;
      cfg.allow_replication = replication;
      cfg.insert_success_probability = success;
      std::vector<Process> corpus = generate_corpus(cfg, corpus_size);
      SuiteLimits limits;
      limits.depth = depth;
      CheckSpec spec = make_check("validity:" + scheme_name(s) + ":" + describe(k), limits);
      SuiteReport suite = run_suite(corpus, {spec}, limits);
      return emit({{"command", "validate"},
                   {"scheme", scheme_name(s)},
                   {"kind", describe(k)},
                   {"depth", std::to_string(depth)},
                   {"corpus_seed", std::to_string(seed)},
                   {"corpus_size", std::to_string(corpus_size)},
                   {"max_size", std::to_string(max_size)},
                   {"replication", replication ? "true" : "false"}},
                  suite);
    }
    if (corr->parsed()) {
      auto c = parse_criterion(criterion);
      if (!c) throw UsageError("unknown criterion '" + criterion + "'");
      Scheme s = scheme_of(scheme);
      std::optional<RelationKind> k;
      if (corr->count("--kind")) k = kind_of(kind, false, false);
      Process p = term_arg(file, reserved);
      CheckReport r = check_criterion(*c, s, p, depth, k);
      return emit({{"command", "correspondence"},
                   {"criterion", criterion_name(*c)},
                   {"scheme", scheme_name(s)},
                   {"depth", std::to_string(depth)}},
                  single(std::move(r)));
    }
    if (lem->parsed()) {
      auto id = parse_lemma(lemma);
      if (!id) throw UsageError("unknown lemma '" + lemma + "'");
      Scheme s = scheme_of(scheme);
      Process p = term_arg(file, reserved);
      CheckReport r = check_lemma(*id, p, depth, s);
      return emit({{"command", "lemma"}, {"id", lemma_name(*id)}, {"depth", std::to_string(depth)}},
                  single(std::move(r)));
    }
  } catch (const UsageError& e) {
    std::cerr << "piw: " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    std::cerr << "piw: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}
