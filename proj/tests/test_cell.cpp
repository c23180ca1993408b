#include <doctest.h>

#include "arrfaces/cell.hpp"
#include "arrfaces/errors.hpp"
#include "arrfaces/rng.hpp"

using namespace arrfaces;

namespace {
Point pt(long x, long y) { return Point{Scalar(x), Scalar(y)}; }
Line ln(long a, long b) { return Line{Scalar(a), Scalar(b)}; }
}  // namespace

TEST_CASE("line vs bounded triangle") {
  auto t = ConvexCell::bounded({pt(0, -1), pt(2, -1), pt(1, 1)});
  t.validate();
  CHECK(line_crosses_triangle(ln(0, 0), t));          // separates the vertices
  CHECK(!line_crosses_triangle(ln(0, 5), t));         // all below
  CHECK(!line_crosses_triangle(ln(0, 1), t));         // touches the apex only
  CHECK(t.classify_vs_line(ln(0, 5)) == LineRelation::Below);
  CHECK(t.classify_vs_line(ln(0, -5)) == LineRelation::Above);
}

TEST_CASE("containment") {
  auto t = ConvexCell::bounded({pt(0, 0), pt(4, 0), pt(0, 4)});
  CHECK(t.strictly_contains(pt(1, 1)));
  CHECK(!t.strictly_contains(pt(2, 2)));  // on the hypotenuse
  CHECK(t.contains(pt(2, 2)));
  CHECK(t.on_boundary(pt(2, 2)));
  CHECK(!t.contains(pt(5, 5)));
  CHECK(t.is_bounded());
  const Point ip = t.interior_point();
  CHECK(t.strictly_contains(ip));
}

TEST_CASE("wedges cover all directions around the apex") {
  auto ws = ConvexCell::wedges(pt(1, 1), pt(1, 0), pt(0, 1), EdgeTag{}, EdgeTag{});
  REQUIRE(ws.size() == 4);
  for (const auto& w : ws) {
    w.validate();
    CHECK(!w.is_bounded());
  }
  // each quadrant point lands in exactly one wedge
  const Point probes[4] = {pt(3, 3), pt(-1, 3), pt(-1, -1), pt(3, -1)};
  for (const Point& p : probes) {
    int hits = 0;
    for (const auto& w : ws) hits += w.strictly_contains(p) ? 1 : 0;
    CHECK(hits == 1);
  }
}

TEST_CASE("clipping a bounded cell") {
  auto sq = ConvexCell::bounded({pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)});
  auto up = sq.clip_above(ln(0, 2), EdgeTag{EdgeTag::InputLine, 7});
  REQUIRE(up.has_value());
  up->validate();
  CHECK(up->strictly_contains(pt(2, 3)));
  CHECK(!up->strictly_contains(pt(2, 1)));
  int tagged = 0;
  for (size_t i = 0; i < up->size(); ++i)
    if (up->edge_tag(i).kind == EdgeTag::InputLine && up->edge_tag(i).id == 7) ++tagged;
  CHECK(tagged == 1);

  CHECK(!sq.clip_above(ln(0, 10), EdgeTag{}).has_value());
  auto full = sq.clip_above(ln(0, -1), EdgeTag{});
  REQUIRE(full.has_value());
  CHECK(full->size() == sq.size());
}

TEST_CASE("clipping wedges keeps direction vertices sane") {
  auto ws = ConvexCell::wedges(pt(0, 0), pt(1, 1), pt(0, 1), EdgeTag{}, EdgeTag{});
  // ws[0] is the cone between directions (1,1) and (0,1)
  const ConvexCell& w = ws[0];
  CHECK(w.strictly_contains(pt(1, 5)));
  auto cut = w.clip_below(ln(0, 3), EdgeTag{EdgeTag::InputLine, 1});
  REQUIRE(cut.has_value());
  cut->validate();
  CHECK(cut->is_bounded());
  auto kept = w.clip_above(ln(0, 3), EdgeTag{EdgeTag::InputLine, 1});
  REQUIRE(kept.has_value());
  kept->validate();
  CHECK(!kept->is_bounded());
  CHECK(kept->strictly_contains(pt(2, 10)));
  CHECK(!kept->strictly_contains(pt(1, 2)));
}

TEST_CASE("clip parallel to a half-strip axis") {
  // half-strip opening upwards between x=0 and x=4
  auto cell = ConvexCell::from_cycle(
      {CellVertex::finite(pt(0, 0)), CellVertex::finite(pt(4, 0)),
       CellVertex::infinite(pt(0, 1))},
      {});
  cell.validate();
  CHECK(cell.strictly_contains(pt(2, 100)));
  // vertical cut through the strip
  auto left = cell.clip(Constraint::x_at_most(Scalar(2)), EdgeTag{});
  auto right = cell.clip(Constraint::x_at_least(Scalar(2)), EdgeTag{});
  REQUIRE(left.has_value());
  REQUIRE(right.has_value());
  left->validate();
  right->validate();
  CHECK(!left->is_bounded());
  CHECK(left->strictly_contains(pt(1, 50)));
  CHECK(right->strictly_contains(pt(3, 50)));
  CHECK(!left->strictly_contains(pt(3, 50)));
}

TEST_CASE("subdivision by lines partitions a triangle") {
  auto t = ConvexCell::bounded({pt(-10, -10), pt(10, -10), pt(0, 10)});
  std::vector<Line> lines{ln(0, 0), ln(1, 1), ln(-2, -3)};
  auto cells = subdivide_by_lines(t, lines);
  for (const auto& c : cells) c.validate();
  // every interior sample point lies in exactly one piece
  Rng rng(3);
  for (int it = 0; it < 300; ++it) {
    const Point p = pt(rng.range(-9, 9), rng.range(-9, 9));
    if (!t.strictly_contains(p)) continue;
    bool on_line = false;
    for (const auto& l : lines)
      if (side_of_line(l, p) == Side::On) on_line = true;
    if (on_line) continue;
    int hits = 0;
    for (const auto& c : cells) hits += c.strictly_contains(p) ? 1 : 0;
    CHECK(hits == 1);
  }
}

TEST_CASE("triangulation covers and stays disjoint") {
  auto ws = ConvexCell::wedges(pt(0, 0), pt(1, 0), pt(0, 1), EdgeTag{}, EdgeTag{});
  auto cells = subdivide_by_lines(ws[0], {ln(1, 3), ln(-1, 8)});
  Rng rng(11);
  for (const auto& c : cells) {
    for (auto& tri : c.triangulate()) {
      tri.validate();
      CHECK(tri.size() == 3);
    }
  }
  for (int it = 0; it < 300; ++it) {
    const Point p = pt(rng.range(1, 40), rng.range(1, 40));
    if (!ws[0].strictly_contains(p)) continue;
    int hits = 0;
    bool boundary = false;
    for (const auto& c : cells) {
      for (auto& tri : c.triangulate()) {
        if (tri.strictly_contains(p)) ++hits;
        if (tri.on_boundary(p)) boundary = true;
      }
    }
    if (!boundary) CHECK(hits == 1);
  }
}
