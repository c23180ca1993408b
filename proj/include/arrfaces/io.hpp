#pragma once

#include <string>
#include <vector>

#include "arrfaces/geometry.hpp"

namespace arrfaces {

// Instance text format, one item per line, '#' starts a comment:
//   L <a> <b>    line y = a*x + b
//   P <x> <y>    point
// where values are decimals or num/den rationals.
struct Instance {
  std::vector<Line> lines;
  std::vector<Point> points;
};

Instance parse_instance(const std::string& text);          // PARSE_ERROR
Instance load_instance(const std::string& path);           // PARSE_ERROR
std::string format_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

std::vector<Point> parse_points(const std::string& text);  // P lines only
std::vector<Point> load_points(const std::string& path);

// General-position checks. Cheap local violations (duplicate lines, duplicate
// points) always run; the O(n^2 log n) concurrency / collinearity sweeps run
// when `thorough`. Throws Error(GeneralPosition / DegenerateInput).
void check_general_position(const Instance& inst, bool thorough);

}  // namespace arrfaces
