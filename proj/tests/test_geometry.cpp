#include <doctest.h>

#include "arrfaces/errors.hpp"
#include "arrfaces/geometry.hpp"
#include "arrfaces/io.hpp"
#include "arrfaces/rng.hpp"

using namespace arrfaces;

namespace {
Point pt(long x, long y) { return Point{Scalar(x), Scalar(y)}; }
Point ptq(const char* x, const char* y) { return Point{parse_scalar(x), parse_scalar(y)}; }
}  // namespace

TEST_CASE("scalar parsing is exact") {
  CHECK(parse_scalar("1.25") == Scalar(5, 4));
  CHECK(parse_scalar("-2") == Scalar(-2));
  CHECK(parse_scalar("7/4") == Scalar(7, 4));
  CHECK(parse_scalar("-3/5") == Scalar(-3, 5));
  CHECK(parse_scalar("0.5") == parse_scalar("2/4"));
  CHECK(scalar_to_string(parse_scalar("-6/4")) == "-3/2");
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("abc"), Error);
}

TEST_CASE("orientation basics") {
  CHECK(orientation(pt(0, 0), pt(1, 0), pt(0, 1)) == Orientation::CCW);
  CHECK(orientation(pt(0, 0), pt(1, 1), pt(2, 2)) == Orientation::Collinear);
  CHECK(orientation(pt(0, 0), pt(0, 1), pt(1, 0)) == Orientation::CW);
}

TEST_CASE("orientation is antisymmetric under swaps") {
  Rng rng(7);
  for (int it = 0; it < 500; ++it) {
    const Point a = pt(rng.range(-50, 50), rng.range(-50, 50));
    const Point b = pt(rng.range(-50, 50), rng.range(-50, 50));
    const Point c = pt(rng.range(-50, 50), rng.range(-50, 50));
    const int o = static_cast<int>(orientation(a, b, c));
    CHECK(static_cast<int>(orientation(b, a, c)) == -o);
    CHECK(static_cast<int>(orientation(a, c, b)) == -o);
    CHECK(static_cast<int>(orientation(c, b, a)) == -o);
  }
}

TEST_CASE("duality formulas") {
  const Line l1 = dual_of_point(pt(1, 2));
  CHECK(l1.a == Scalar(1));
  CHECK(l1.b == Scalar(-2));
  const Line l0 = dual_of_point(pt(0, 0));
  CHECK(l0.a == 0);
  CHECK(l0.b == 0);
  const Line ln = dual_of_point(pt(-3, 5));
  CHECK(ln.a == Scalar(-3));
  CHECK(ln.b == Scalar(-5));

  CHECK(dual_of_line(Line{Scalar(3), Scalar(1)}) == pt(3, -1));
  CHECK(dual_of_line(Line{Scalar(0), Scalar(0)}) == pt(0, 0));
}

TEST_CASE("duality preserves incidence for a hand example") {
  // p = (1,2) on y = 2x; the duals stay incident
  const Point p = pt(1, 2);
  const Line l{Scalar(2), Scalar(0)};
  CHECK(side_of_line(l, p) == Side::On);
  const Line p_star = dual_of_point(p);   // y = x - 2
  const Point l_star = dual_of_line(l);   // (2, 0)
  CHECK(side_of_line(p_star, l_star) == Side::On);
}

TEST_CASE("side of line") {
  CHECK(side_of_line(Line{Scalar(0), Scalar(0)}, pt(5, 1)) == Side::Above);
  CHECK(side_of_line(Line{Scalar(1), Scalar(0)}, pt(2, 2)) == Side::On);
  CHECK(side_of_line(Line{Scalar(2), Scalar(-1)}, pt(0, -3)) == Side::Below);
}

TEST_CASE("duality preserves order over random pairs") {
  Rng rng(42);
  int on_count = 0;
  for (int it = 0; it < 10000; ++it) {
    const Point p = ptq(scalar_to_string(Scalar(rng.range(-1000, 1000), 7)).c_str(),
                        scalar_to_string(Scalar(rng.range(-1000, 1000), 3)).c_str());
    const Line l{Scalar(rng.range(-60, 60), 11), Scalar(rng.range(-60, 60), 5)};
    const Side primal = side_of_line(l, p);
    const Side dual = side_of_line(dual_of_point(p), dual_of_line(l));
    CHECK(primal == dual);
    if (primal == Side::On) ++on_count;
  }
  CHECK(on_count < 100);  // random pairs are almost never incident
}

TEST_CASE("predicates agree with floating point away from zero") {
  Rng rng(99);
  for (int it = 0; it < 2000; ++it) {
    const Point a = pt(rng.range(-1000, 1000), rng.range(-1000, 1000));
    const Point b = pt(rng.range(-1000, 1000), rng.range(-1000, 1000));
    const Point c = pt(rng.range(-1000, 1000), rng.range(-1000, 1000));
    const double det = (scalar_to_double(b.x) - scalar_to_double(a.x)) *
                           (scalar_to_double(c.y) - scalar_to_double(a.y)) -
                       (scalar_to_double(b.y) - scalar_to_double(a.y)) *
                           (scalar_to_double(c.x) - scalar_to_double(a.x));
    if (std::abs(det) < 1e-3) continue;
    CHECK(static_cast<int>(orientation(a, b, c)) == (det > 0 ? 1 : -1));
  }
}

TEST_CASE("line through points and intersections") {
  const Line l = line_through(pt(0, 0), pt(2, 4));
  CHECK(l.a == Scalar(2));
  CHECK(l.b == Scalar(0));
  CHECK_THROWS_AS(line_through(pt(1, 0), pt(1, 5)), Error);
  auto v = intersect_lines(Line{Scalar(1), Scalar(0)}, Line{Scalar(-1), Scalar(2)});
  REQUIRE(v.has_value());
  CHECK(*v == pt(1, 1));
  CHECK(!intersect_lines(Line{Scalar(1), Scalar(0)}, Line{Scalar(1), Scalar(2)}).has_value());
}

TEST_CASE("instance round trip") {
  const std::string text = "# demo\nL 1 2\nL -1/2 0.25\nP 3 4\n";
  Instance inst = parse_instance(text);
  REQUIRE(inst.lines.size() == 2);
  REQUIRE(inst.points.size() == 1);
  CHECK(inst.lines[1].a == Scalar(-1, 2));
  CHECK(inst.lines[1].b == Scalar(1, 4));
  Instance again = parse_instance(format_instance(inst));
  CHECK(again.lines.size() == 2);
  CHECK(again.lines[1] == inst.lines[1]);
  CHECK(again.points[0] == inst.points[0]);
  CHECK_THROWS_AS(parse_instance("L 1\n"), Error);
  CHECK_THROWS_AS(parse_instance("Q 1 2\n"), Error);
}

TEST_CASE("general position checks") {
  Instance inst;
  inst.lines = {Line{Scalar(0), Scalar(1)}, Line{Scalar(1), Scalar(1)}, Line{Scalar(-1), Scalar(1)}};
  // the slope 1 and slope -1 lines cross at (0,1), which lies on y = 1
  CHECK_THROWS_AS(check_general_position(inst, true), Error);
  inst.lines[0].b = Scalar(5);
  CHECK_NOTHROW(check_general_position(inst, true));
  inst.points = {pt(0, 5)};  // on y = 5
  CHECK_THROWS_AS(check_general_position(inst, false), Error);
}
