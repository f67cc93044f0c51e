#pragma once
// Small helpers shared by the test binaries.

#include <string>

#include "piw/congruence.hpp"
#include "piw/process.hpp"
#include "piw/syntax.hpp"

namespace test {

inline piw::Process P(const std::string& text) { return piw::parse_term(text, true); }
inline piw::Name n(const std::string& id) { return piw::source_name(id); }
inline piw::Process canon(const piw::Process& p) { return piw::canonical(p); }
inline std::string key(const std::string& text) { return piw::canonical_key(P(text)); }

}  // namespace test
