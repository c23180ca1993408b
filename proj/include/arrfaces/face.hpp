#pragma once

#include <optional>
#include <vector>

#include "arrfaces/hulls.hpp"

namespace arrfaces {

// Convex face of a line arrangement, held implicitly in the dual plane: the
// chains store the dual points of the boundary lines (lower_dual = lines
// supporting the face from below, i.e. the H+ portion between the inner
// common tangents; upper_dual symmetric). The primal polygon is materialized
// on demand. left_vertex/right_vertex are engaged exactly when the face is
// bounded on that side; the face is unbounded downward iff lower_dual is
// empty, upward iff upper_dual is empty.
struct Face {
  ChainHandle lower_dual{ChainSide::Lower};
  ChainHandle upper_dual{ChainSide::Upper};
  std::optional<Point> left_vertex, right_vertex;

  bool bounded() const { return left_vertex && right_vertex; }
};

// Canonical face identity. Bounded-left faces are identified by their
// leftmost vertex (no two distinct faces share one under general position);
// faces unbounded to the left are identified by their extreme boundary rays,
// i.e. the first dual vertex of each chain.
struct FaceKey {
  int kind;  // 0: bounded left; 1: open left, both chains; 2: lower empty; 3: upper empty
  Point a, b;

  bool operator==(const FaceKey& o) const;
  bool operator<(const FaceKey& o) const;
};

FaceKey face_key(const Face& f);
bool faces_equal(const Face& x, const Face& y);  // exact record comparison

struct InnerTangents {
  // Engaged iff the corresponding side of the face is bounded. Each tangent is
  // the dual line of the face's extreme vertex; touch points are hull vertices.
  std::optional<Line> left, right;
  Point left_touch_plus, left_touch_minus;    // valid when `left`
  Point right_touch_plus, right_touch_minus;  // valid when `right`
};

// Inner common tangents of the lower hull of the dual points above p* and the
// upper hull of those below it. Both chains nonempty. Error: EMPTY_HULL.
InnerTangents inner_common_tangents(const ChainHandle& h_plus, const ChainHandle& h_minus);

// Assembles the face of the primal arrangement containing the point dual to
// `p_star` from the two hulls; O(log n) splits, no materialization. Either
// hull may be empty (face unbounded on that side), not both.
Face face_from_hulls(const ChainHandle& h_plus, const ChainHandle& h_minus, const Line& p_star);

// Same record, built from the explicit boundary line sets of a face (the face
// equals the intersection of these half-planes). Used by the arrangement
// oracle, zone gluing, and per-leaf arrangements so that all construction
// routes produce comparable records.
Face face_from_boundary_lines(std::vector<Line> lower_lines, std::vector<Line> upper_lines);

struct FaceGeometry {
  std::vector<Point> lower_vertices;  // primal lower boundary, left to right
  std::vector<Point> upper_vertices;  // primal upper boundary, left to right
  std::vector<Line> lower_lines, upper_lines;
  std::optional<Point> left_vertex, right_vertex;
  // Unbounded faces extend along the extreme boundary lines beyond the
  // extreme vertices; with both chains empty sides the face is a half-plane
  // intersection opening to infinity.
  std::vector<Point> cycle() const;  // finite vertices, counterclockwise
};

FaceGeometry materialize_face(const Face& f);

// A point strictly inside the face (used by tests and gluing).
Point face_interior_point(const Face& f);

}  // namespace arrfaces
