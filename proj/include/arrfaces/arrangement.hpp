#pragma once

#include <map>

#include "arrfaces/cell.hpp"
#include "arrfaces/face.hpp"

namespace arrfaces {

namespace detail {
class ArrangementBuilder;
}

// Full arrangement of lines clipped to a bounding box that strictly contains
// every pairwise crossing and every point handed to build_arrangement. Faces
// that touch the box correspond to the unbounded faces of the true
// arrangement; box edges are artificial and excluded from face records and
// counts. Built by incremental insertion with a zone walk.
class ArrangementDCEL {
 public:
  struct HalfEdge {
    int origin = -1;
    int next = -1, prev = -1;
    int face = -1;
    int line = -1;  // input id, or >= n_lines() for the four box sides
  };

  static ArrangementDCEL build(const std::vector<Line>& lines,
                               const std::vector<Point>& cover = {});

  int n_lines() const { return static_cast<int>(lines_.size()); }
  const std::vector<Line>& lines() const { return lines_; }
  const Scalar& box_halfwidth() const { return box_; }

  // Closed-form sanity: for n lines in general position these equal
  // n(n-1)/2, n^2, and 1 + n + n(n-1)/2.
  int64_t vertex_count() const { return crossing_vertices_; }
  int64_t edge_count() const;
  int64_t face_count() const;

  // The unique face containing p; p must be strictly inside the box and on no
  // line. Errors: POINT_ON_LINE, ParamRange (outside the box).
  Face face_of(const Point& p) const;

  // All distinct faces as records keyed canonically.
  std::map<FaceKey, Face> all_faces() const;

  struct Stats {
    int64_t intersections = 0;        // K
    std::vector<int64_t> face_sizes;  // real edges per face
  };
  Stats stats() const;

  void validate() const;  // Euler relation and cycle consistency

 private:
  friend class detail::ArrangementBuilder;
  std::vector<Line> lines_;
  std::vector<Point> vx_;
  std::vector<HalfEdge> he_;
  std::vector<int> face_edge_;
  int outer_face_ = -1;
  int64_t crossing_vertices_ = 0;
  Scalar box_;
  // per line (and the bottom box side), rightward half-edges sorted by origin x
  std::vector<std::vector<std::pair<Scalar, int>>> loc_;

  Face face_record(int face) const;
  int dcel_face_of(const Point& p) const;
  void build_locator();
};

Scalar arrangement_box_halfwidth(const std::vector<Line>& lines, const std::vector<Point>& cover);

ArrangementDCEL build_arrangement(const std::vector<Line>& lines,
                                  const std::vector<Point>& cover = {});

// Straightforward many-faces: build the arrangement, point-locate every query
// point, deduplicate by the canonical key. Error: POINT_ON_LINE.
std::map<FaceKey, Face> many_faces_naive(const std::vector<Line>& lines,
                                         const std::vector<Point>& points);

// Independent slow route, no arrangement and no duality: clip a huge box by
// the half-plane of every line around p and read the face off the surviving
// cell's edge tags. Used as the oracle's own cross-check.
Face face_of_by_clipping(const std::vector<Line>& lines, const Point& p);

// Zone of a convex cell: the portions F ^ cell of the faces of the
// arrangement of the lines crossing `cell` that touch the cell boundary.
struct ZonePortion {
  ConvexCell region;
  std::vector<int> lower_lines, upper_lines;  // ids of lines bounding the portion
};
std::vector<ZonePortion> zone_of_triangle(const std::vector<Line>& lines, const ConvexCell& cell);

}  // namespace arrfaces
