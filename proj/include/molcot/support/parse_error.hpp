//
// Project Molcot - Copyright 2026 Molcot Contributors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLCOT_SUPPORT_PARSE_ERROR_HPP_
#define MOLCOT_SUPPORT_PARSE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace molcot {

// Positioned diagnostic thrown by the text parsers. `position` is a
// 0-based character offset for single-line formats (SMILES) and a
// 1-based line number for line-oriented formats (molfile, CoT text);
// the message always spells out which.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, std::size_t position)
      : std::runtime_error(message), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace molcot

#endif  // MOLCOT_SUPPORT_PARSE_ERROR_HPP_
