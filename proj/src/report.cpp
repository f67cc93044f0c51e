#include "piw/report.hpp"

#include <sstream>

#include "piw/syntax.hpp"

namespace piw {

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json j;
  j["outcome"] = outcome_name(v.outcome);
  j["pairs_explored"] = v.pairs_explored;
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (!v.notes.empty()) j["notes"] = v.notes;
  if (v.outcome == Outcome::related) j["relation_size"] = v.relation.size();
  if (!v.witness.empty()) {
    nlohmann::json w = nlohmann::json::array();
    for (const WitnessStep& s : v.witness)
      w.push_back({{"step", s.text}, {"left", render_term(s.left)}, {"right", render_term(s.right)}});
    j["witness"] = w;
  }
  return j;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["id"] = r.id;
  j["instance"] = r.instance;
  j["outcome"] = check_outcome_name(r.outcome);
  if (!r.details.empty()) j["details"] = r.details;
  if (!r.witness.empty()) j["witness"] = r.witness;
  if (r.verdict) j["verdict"] = to_json(*r.verdict);
  return j;
}

nlohmann::json to_json(const SuiteReport& s) {
  nlohmann::json j;
  nlohmann::json reports = nlohmann::json::array();
  for (const CheckReport& r : s.reports) reports.push_back(to_json(r));
  j["reports"] = reports;
  j["summary"] = {{"pass", s.passed}, {"fail", s.failed}, {"unknown", s.unknown}};
  j["config"] = s.config;
  return j;
}

std::string render_report(const std::map<std::string, std::string>& config, const SuiteReport& suite) {
  nlohmann::json j;
  j["config"] = config;
  j["suite"] = to_json(suite);
  return j.dump(2) + "\n";
}

int exit_code(const SuiteReport& suite) {
  if (suite.failed > 0) return 1;
  if (suite.unknown > 0) return 2;
  return 0;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const LtsFragment& f) {
  std::ostringstream out;
  out << "digraph lts {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < f.states.size(); ++i) {
    out << "  s" << i << " [label=" << quoted(render_term(f.states[i]));
    if (i == f.root) out << ", penwidth=2";
    if (f.frontier[i]) out << ", style=dashed";
    out << "];\n";
  }
  for (const FragmentEdge& e : f.transitions)
    out << "  s" << e.source << " -> s" << e.target << " [label=" << quoted(render_label(e.label)) << "];\n";
  out << "}\n";
  return out.str();
}

}  // namespace piw
