#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "piw/process.hpp"

namespace piw {

/// Raised for malformed input; `offset` and `length` locate the offending
/// span in the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::size_t length)
      : std::runtime_error(message + " at offset " + std::to_string(offset)),
        offset_(offset),
        length_(length) {}

  std::size_t offset() const { return offset_; }
  std::size_t length() const { return length_; }

 private:
  std::size_t offset_;
  std::size_t length_;
};

// Grammar:
//   process := factor ("|" factor)*
//   factor  := "0" | "ok" | "!" factor | "(nu" name ")" factor
//            | name "!" name ["." factor] | name "?" "(" name ")" "." factor
//            | "(" process ")"
Process parse_term(std::string_view text, bool allow_reserved = false);

std::string render_term(const Process& p);

}  // namespace piw
