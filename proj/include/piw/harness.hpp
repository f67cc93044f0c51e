#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "piw/correspondence.hpp"
#include "piw/process.hpp"

namespace piw {

struct GenWeights {
  double output = 3;
  double input = 3;
  double par = 3;
  double restrict = 1.5;
  double repl = 0.5;
  double leaf = 1;
};

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_size = 8;
  std::size_t pool_size = 4;  // names drawn from x y z w a b c d
  GenWeights weights;
  bool allow_replication = false;
  double insert_success_probability = 0.0;
  /// Probability that a parallel composition is an output and an input on
  /// the same channel.
  double communication_bias = 0.0;
  /// Probability that such a pair is placed under a restriction of its
  /// channel.
  double restrict_communication = 0.0;
  /// Outputs without continuation only.
  bool asynchronous = false;
};

/// Deterministic for a fixed config. Throws std::invalid_argument for an
/// invalid config.
std::vector<Process> generate_corpus(const GenConfig& cfg, std::size_t count);

/// The first `n` names of the generator pool.
std::vector<Name> name_pool(std::size_t n);

struct CheckSpec {
  std::string id;
  std::function<bool(const Process&)> applies;
  std::function<CheckReport(const Process&)> run;
};

struct SuiteLimits {
  std::size_t depth = 8;
  std::size_t threads = 0;  // 0: WORKBENCH_THREADS or hardware concurrency
};

/// Check specification by name:
///   barbs:<scheme>            strong barbs preserved (In/Out for boudol, Chan for ht)
///   success-barb:<scheme>     strong success barb preserved
///   validity:<scheme>:<kind>[+div][+branching]
///   criterion:<c|cp|i|s|w|g>:<scheme>[:<kind>]
///   lemma:<l1|l2|l2star|pb|l5|l6>[:<scheme>]
///   completeness:<scheme>     criterion c with the protocol step bound
///   success:<scheme>          success sensitiveness
///   divergence:<scheme>
/// Throws std::invalid_argument on a malformed name.
CheckSpec make_check(const std::string& name, const SuiteLimits& limits);

struct SuiteReport {
  std::vector<CheckReport> reports;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t unknown = 0;
  std::map<std::string, std::string> config;
};

/// Runs every applicable check on every corpus term on a worker pool.
/// Reports are ordered by their stable id "<check>#<index>"; a throwing
/// check is recorded as a failure.
SuiteReport run_suite(const std::vector<Process>& corpus, const std::vector<CheckSpec>& checks,
                      const SuiteLimits& limits);

std::size_t worker_count(const SuiteLimits& limits);

}  // namespace piw
