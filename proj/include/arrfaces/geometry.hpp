#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "arrfaces/scalar.hpp"

namespace arrfaces {

struct Point {
  Scalar x, y;

  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
};

// y = a*x + b. Vertical lines are unrepresentable by construction; the parser
// rejects them before they can reach any algorithm.
struct Line {
  Scalar a, b;

  Scalar y_at(const Scalar& x) const { return a * x + b; }
  bool operator==(const Line& o) const { return a == o.a && b == o.b; }
  bool operator!=(const Line& o) const { return !(*this == o); }
};

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };
enum class Side { Below = -1, On = 0, Above = 1 };

Orientation orientation(const Point& p, const Point& q, const Point& r);
Side side_of_line(const Line& l, const Point& p);

// Duality: point (a,b) <-> line y = a*x - b; line y = c*x + d <-> point (c,-d).
// Incidence and above/below order are preserved.
Line dual_of_point(const Point& p);
Point dual_of_line(const Line& l);

// Line through two points with distinct x. Throws Error(GeneralPosition) when
// p.x == q.x (would be vertical).
Line line_through(const Point& p, const Point& q);

// Intersection of two non-parallel lines; nullopt when slopes are equal.
std::optional<Point> intersect_lines(const Line& l1, const Line& l2);

bool lex_less(const Point& p, const Point& q);  // by (x, y)

uint64_t hash_point(const Point& p);
uint64_t hash_line(const Line& l);

std::string to_string(const Point& p);
std::string to_string(const Line& l);

}  // namespace arrfaces
