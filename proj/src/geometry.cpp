#include "arrfaces/geometry.hpp"

#include "arrfaces/errors.hpp"

namespace arrfaces {

Orientation orientation(const Point& p, const Point& q, const Point& r) {
  // sign of det(q-p, r-p), exact
  const Scalar d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  const int s = sgn(d);
  return s > 0 ? Orientation::CCW : (s < 0 ? Orientation::CW : Orientation::Collinear);
}

Side side_of_line(const Line& l, const Point& p) {
  const Scalar d = p.y - (l.a * p.x + l.b);
  const int s = sgn(d);
  return s > 0 ? Side::Above : (s < 0 ? Side::Below : Side::On);
}

Line dual_of_point(const Point& p) { return Line{p.x, -p.y}; }

Point dual_of_line(const Line& l) { return Point{l.a, -l.b}; }

Line line_through(const Point& p, const Point& q) {
  if (p.x == q.x) fail(ErrorCode::GeneralPosition, "line through equal-x points is vertical");
  Scalar a = (q.y - p.y) / (q.x - p.x);
  Scalar b = p.y - a * p.x;
  return Line{a, b};
}

std::optional<Point> intersect_lines(const Line& l1, const Line& l2) {
  if (l1.a == l2.a) return std::nullopt;
  Scalar x = (l2.b - l1.b) / (l1.a - l2.a);
  Scalar y = l1.a * x + l1.b;
  return Point{x, y};
}

bool lex_less(const Point& p, const Point& q) {
  const int cx = cmp(p.x, q.x);
  if (cx != 0) return cx < 0;
  return p.y < q.y;
}

uint64_t hash_point(const Point& p) { return hash_combine(hash_scalar(p.x), hash_scalar(p.y)); }

uint64_t hash_line(const Line& l) {
  return hash_combine(hash_combine(0x9e01u, hash_scalar(l.a)), hash_scalar(l.b));
}

std::string to_string(const Point& p) {
  return "(" + scalar_to_string(p.x) + ", " + scalar_to_string(p.y) + ")";
}

std::string to_string(const Line& l) {
  return "y = " + scalar_to_string(l.a) + "*x + " + scalar_to_string(l.b);
}

}  // namespace arrfaces
