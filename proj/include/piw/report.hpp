#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "piw/correspondence.hpp"
#include "piw/equivalences.hpp"
#include "piw/harness.hpp"
#include "piw/semantics.hpp"

namespace piw {

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const SuiteReport& s);

/// Whole-run document: config echo plus the suite. Keys are sorted.
std::string render_report(const std::map<std::string, std::string>& config, const SuiteReport& suite);

/// 0 all pass, 1 any failure, 2 unknowns but no failure.
int exit_code(const SuiteReport& suite);

/// Graphviz rendering; frontier states are dashed.
std::string export_dot(const LtsFragment& f);

}  // namespace piw
