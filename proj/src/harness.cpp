#include "piw/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "piw/observables.hpp"
#include "piw/syntax.hpp"

namespace piw {

std::vector<Name> name_pool(std::size_t n) {
  static const char* ids[] = {"x", "y", "z", "w", "a", "b", "c", "d"};
  n = std::min<std::size_t>(n, 8);
  std::vector<Name> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(source_name(ids[i]));
  return out;
}

namespace {

class Generator {
 public:
  explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed), pool_(name_pool(cfg.pool_size)) {}

  Process term() {
    std::size_t budget = std::uniform_int_distribution<std::size_t>(1, cfg_.max_size)(rng_);
    return gen(budget);
  }

 private:
  bool coin(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }
  const Name& name() { return pool_[std::uniform_int_distribution<std::size_t>(0, pool_.size() - 1)(rng_)]; }
  std::size_t upto(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  Process leaf() {
    if (coin(cfg_.insert_success_probability)) return Process::success();
    const GenWeights& w = cfg_.weights;
    std::discrete_distribution<int> pick({w.output, w.input, w.leaf});
    switch (pick(rng_)) {
      case 0:
        return Process::output(name(), name());
      case 1:
        return Process::input(name(), name(), Process::nil());
      default:
        return Process::nil();
    }
  }

  Process output(std::size_t budget) {
    if (cfg_.asynchronous || budget <= 1) return Process::output(name(), name());
    return Process::output(name(), name(), gen(budget - 1));
  }

  Process input(std::size_t budget) {
    if (budget <= 1) return Process::input(name(), name(), Process::nil());
    return Process::input(name(), name(), gen(budget - 1));
  }

  // Budget counts the size still available, including this node.
  Process gen(std::size_t budget) {
    if (budget <= 1) return leaf();
    if (budget >= 3 && coin(cfg_.communication_bias)) {
      // An output and an input on one channel, side by side.
      bool hide = budget >= 4 && cfg_.restrict_communication > 0 && coin(cfg_.restrict_communication);
      std::size_t rest = budget - 1 - (hide ? 1 : 0);
      std::size_t left = cfg_.asynchronous ? 1 : upto(1, rest - 1);
      std::size_t right = rest - left;
      Name x = name();
      Process out = cfg_.asynchronous || left == 1 ? Process::output(x, name()) : Process::output(x, name(), gen(left - 1));
      Process in = Process::input(x, name(), right > 1 ? gen(right - 1) : Process::nil());
      Process pair = coin(0.5) ? Process::par(out, in) : Process::par(in, out);
      return hide ? Process::restrict(x, pair) : pair;
    }
    const GenWeights& w = cfg_.weights;
    std::discrete_distribution<int> pick({w.output, w.input, budget >= 3 ? w.par : 0.0, w.restrict,
                                          cfg_.allow_replication ? w.repl : 0.0, w.leaf});
    switch (pick(rng_)) {
      case 0:
        return output(budget);
      case 1:
        return input(budget);
      case 2: {
        std::size_t rest = budget - 1;
        std::size_t left = upto(1, rest - 1);
        return Process::par(gen(left), gen(rest - left));
      }
      case 3: {
        Name y = name();
        return Process::restrict(y, gen(budget - 1));
      }
      case 4:
        return Process::repl(gen(budget - 1));
      default:
        return leaf();
    }
  }

  const GenConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<Name> pool_;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

Scheme scheme_arg(const std::string& text, const std::string& spec) {
  auto s = parse_scheme(text);
  if (!s) throw std::invalid_argument("check '" + spec + "': unknown scheme '" + text + "'");
  return *s;
}

RelationKind kind_arg(const std::string& text, const std::string& spec) {
  std::vector<std::string> parts = split(text, '+');
  auto e = parts.empty() ? std::nullopt : parse_equivalence(parts[0]);
  if (!e) throw std::invalid_argument("check '" + spec + "': unknown equivalence '" + text + "'");
  RelationKind k{*e, false, false};
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] == "div")
      k.divergence_preserving = true;
    else if (parts[i] == "branching")
      k.branching = true;
    else
      throw std::invalid_argument("check '" + spec + "': unknown flag '" + parts[i] + "'");
  }
  if (k.branching && is_label_based(k.tag))
    throw std::invalid_argument("check '" + spec + "': branching needs a reduction-based kind");
  return k;
}

CheckReport barbs_report(Scheme scheme, const Process& p) {
  CheckReport r;
  r.id = "barbs";
  r.instance["term"] = render_term(p);
  r.instance["scheme"] = scheme_name(scheme);
  std::set<BarbKind> kinds = scheme == Scheme::boudol ? std::set<BarbKind>{BarbKind::in, BarbKind::out}
                                                      : std::set<BarbKind>{BarbKind::chan};
  BarbSet src = filter_barbs(strong_barbs(p), kinds);
  BarbSet tgt = filter_barbs(strong_barbs(encode(scheme, p)), kinds);
  r.outcome = src == tgt ? CheckOutcome::pass : CheckOutcome::fail;
  auto text = [](const BarbSet& b) {
    std::string s;
    for (const Barb& x : b) s += (s.empty() ? "" : " ") + render_barb(x);
    return s;
  };
  r.details["source"] = text(src);
  r.details["target"] = text(tgt);
  return r;
}

CheckReport success_barb_report(Scheme scheme, const Process& p) {
  CheckReport r;
  r.id = "success-barb";
  r.instance["term"] = render_term(p);
  r.instance["scheme"] = scheme_name(scheme);
  bool s = strong_barbs(p).count(Barb::succ()) > 0;
  bool t = strong_barbs(encode(scheme, p)).count(Barb::succ()) > 0;
  r.outcome = s == t ? CheckOutcome::pass : CheckOutcome::fail;
  r.details["source"] = s ? "true" : "false";
  r.details["target"] = t ? "true" : "false";
  return r;
}

}  // namespace

std::vector<Process> generate_corpus(const GenConfig& cfg, std::size_t count) {
  if (cfg.max_size < 1) throw std::invalid_argument("max_size must be at least 1");
  if (cfg.pool_size < 1) throw std::invalid_argument("pool_size must be at least 1");
  for (double p : {cfg.insert_success_probability, cfg.communication_bias, cfg.restrict_communication})
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("probabilities must lie in [0,1]");
  Generator g(cfg);
  std::vector<Process> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(g.term());
  return out;
}

CheckSpec make_check(const std::string& name, const SuiteLimits& limits) {
  std::vector<std::string> parts = split(name, ':');
  if (parts.empty()) throw std::invalid_argument("empty check specification");
  const std::string& head = parts[0];
  const std::size_t depth = limits.depth;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo || parts.size() > hi)
      throw std::invalid_argument("check '" + name + "': wrong number of fields");
  };
  auto sources_only = [](const Process& p) { return uses_only_source_names(p); };

  if (head == "barbs") {
    need(2, 2);
    Scheme s = scheme_arg(parts[1], name);
    return {name, sources_only, [s](const Process& p) { return barbs_report(s, p); }};
  }
  if (head == "success-barb") {
    need(2, 2);
    Scheme s = scheme_arg(parts[1], name);
    return {name, sources_only, [s](const Process& p) { return success_barb_report(s, p); }};
  }
  if (head == "validity") {
    need(3, 3);
    Scheme s = scheme_arg(parts[1], name);
    RelationKind k = kind_arg(parts[2], name);
    return {name, sources_only, [=](const Process& p) { return check_validity(s, k, p, depth); }};
  }
  if (head == "criterion") {
    need(3, 4);
    auto c = parse_criterion(parts[1]);
    if (!c) throw std::invalid_argument("check '" + name + "': unknown criterion '" + parts[1] + "'");
    Scheme s = scheme_arg(parts[2], name);
    std::optional<RelationKind> k;
    if (parts.size() == 4) k = kind_arg(parts[3], name);
    Criterion crit = *c;
    return {name, sources_only, [=](const Process& p) { return check_criterion(crit, s, p, depth, k); }};
  }
  if (head == "lemma") {
    need(2, 3);
    auto id = parse_lemma(parts[1]);
    if (!id) throw std::invalid_argument("check '" + name + "': unknown lemma '" + parts[1] + "'");
    Scheme s = parts.size() == 3 ? scheme_arg(parts[2], name) : Scheme::boudol;
    LemmaId lemma = *id;
    bool on_target = lemma == LemmaId::l1 || lemma == LemmaId::l2 || lemma == LemmaId::l2star ||
                     lemma == LemmaId::postponed_barbs;
    std::function<bool(const Process&)> applies = on_target ? std::function<bool(const Process&)>(
                                                                  [](const Process& p) { return is_asynchronous(p); })
                                                            : std::function<bool(const Process&)>(sources_only);
    return {name, applies, [=](const Process& p) { return check_lemma(lemma, p, depth, s); }};
  }
  if (head == "completeness") {
    need(2, 2);
    Scheme s = scheme_arg(parts[1], name);
    std::size_t bound = s == Scheme::boudol ? 3 : 2;
    return {name, sources_only, [=](const Process& p) { return check_completeness(s, p, bound); }};
  }
  if (head == "success") {
    need(2, 2);
    Scheme s = scheme_arg(parts[1], name);
    return {name, sources_only, [=](const Process& p) { return check_success_sensitiveness(s, p, depth); }};
  }
  if (head == "divergence") {
    need(2, 2);
    Scheme s = scheme_arg(parts[1], name);
    return {name, sources_only, [=](const Process& p) { return check_divergence(s, p, depth); }};
  }
  throw std::invalid_argument("unknown check '" + name + "'");
}

std::size_t worker_count(const SuiteLimits& limits) {
  if (limits.threads > 0) return limits.threads;
  if (const char* env = std::getenv("WORKBENCH_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport run_suite(const std::vector<Process>& corpus, const std::vector<CheckSpec>& checks,
                      const SuiteLimits& limits) {
  struct Job {
    std::string id;
    const CheckSpec* check;
    const Process* term;
  };
  std::vector<Job> jobs;
  const std::size_t width = std::to_string(corpus.empty() ? 0 : corpus.size() - 1).size();
  for (const CheckSpec& c : checks)
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (c.applies && !c.applies(corpus[i])) continue;
      std::string index = std::to_string(i);
      index.insert(0, width - index.size(), '0');
      jobs.push_back({c.id + "#" + index, &c, &corpus[i]});
    }

  std::vector<CheckReport> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      CheckReport r;
      try {
        r = jobs[k].check->run(*jobs[k].term);
      } catch (const std::exception& e) {
        r.outcome = CheckOutcome::fail;
        r.instance["term"] = render_term(*jobs[k].term);
        r.witness.push_back(std::string("check raised: ") + e.what());
      }
      r.id = jobs[k].id;
      results[k] = std::move(r);
    }
  };
  std::size_t n = std::min(worker_count(limits), std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::sort(results.begin(), results.end(), [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  SuiteReport out;
  for (CheckReport& r : results) {
    if (r.outcome == CheckOutcome::pass)
      ++out.passed;
    else if (r.outcome == CheckOutcome::fail)
      ++out.failed;
    else
      ++out.unknown;
    out.reports.push_back(std::move(r));
  }
  out.config["depth"] = std::to_string(limits.depth);
  out.config["corpus_size"] = std::to_string(corpus.size());
  std::string names;
  for (const CheckSpec& c : checks) names += (names.empty() ? "" : ",") + c.id;
  out.config["checks"] = names;
  return out;
}

}  // namespace piw
