#pragma once

#include <cstdint>
#include <vector>

#include "arrfaces/geometry.hpp"

namespace arrfaces {

struct Segment {
  Point a, b;  // a lex-less than b after normalization
};

// Faces of an arrangement of segments are open connected regions, possibly
// with holes. Two independent constructions are provided: a half-edge cycle
// walk (segment_faces_naive) and a trapezoid flood fill (the test oracle).
// Face identity is exposed through the id returned by locate.
class SegmentArrangement {
 public:
  static SegmentArrangement build(std::vector<Segment> segments);  // DEGENERATE_INPUT

  // id of the face containing p (0 = the unbounded face). Errors:
  // DEGENERATE_INPUT if p lies on a segment.
  int face_of(const Point& p) const;

  int face_count() const { return static_cast<int>(cycles_of_face_.size()); }
  // boundary half-edge count per face, both sides of every segment counted
  int64_t face_boundary_size(int face) const;

 private:
  struct HE {
    int origin = -1;
    int next = -1;
    int cycle = -1;
  };
  std::vector<Point> vx_;
  std::vector<HE> he_;  // twin(h) = h^1
  std::vector<int> cycle_face_;               // cycle id -> face id
  std::vector<std::vector<int>> cycles_of_face_;
  std::vector<std::pair<int, int>> edges_;  // (origin vertex, dest vertex) per pair

  int face_above_edge_strictly_below(const Point& p) const;  // -1 when none
};

// Trapezoid-decomposition flood fill over the same segments; same face-id
// contract as SegmentArrangement but an unrelated construction.
class TrapezoidFloodFill {
 public:
  static TrapezoidFloodFill build(std::vector<Segment> segments);

  int face_of(const Point& p) const;
  int component_count() const { return components_; }

 private:
  std::vector<Segment> segs_;
  std::vector<Scalar> walls_;                   // slab boundaries
  std::vector<std::vector<int>> active_;       // per slab, segments sorted by y
  std::vector<std::vector<int>> trap_face_;    // per slab, gap -> face id
  int components_ = 0;
};

// Distinct faces of the segment arrangement containing at least one query
// point, as (face id, boundary size, point count) triples sorted by id.
struct SegmentFaceHit {
  int face_id;
  int64_t boundary_size;
  int point_count;
};
std::vector<SegmentFaceHit> segment_faces_naive(const std::vector<Segment>& segments,
                                                const std::vector<Point>& points);

// General position for segments: no vertical segment, no shared endpoints,
// no three concurrent, no endpoint on another segment.
void check_segment_general_position(const std::vector<Segment>& segments);

std::vector<Segment> generate_random_segments(int n, uint64_t seed, int64_t coord_range = 100000);

}  // namespace arrfaces
