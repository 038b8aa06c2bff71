#pragma once

// Line-oriented text formats for fans and arrangements.
//
//   dim 2            dim 2
//   rays             layer
//   1 0              char 1 0
//   0 1              phase 0/1
//   -1 0             layer
//   0 -1             char 0 1
//   cones            char 1 0
//   0 1              phase 1/2
//   ...              phase 0

#include <iosfwd>
#include <string>

#include "toricmorgan/arrangement.hpp"
#include "toricmorgan/fan.hpp"

namespace toricmorgan {

/// Errors are InputError naming `source` and the line. The fan is validated
/// eagerly; pass validate=false to accept fans that are not smooth projective.
Fan parse_fan(std::istream& in, const std::string& source = "<input>", bool validate_fan = true);
Fan parse_fan_file(const std::string& path, bool validate_fan = true);

Arrangement parse_arrangement(std::istream& in, const std::string& source = "<input>");
Arrangement parse_arrangement_file(const std::string& path);

std::string format_fan(const Fan& fan);
std::string format_arrangement(const Arrangement& arrangement);

}  // namespace toricmorgan
