#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arrfaces/geometry.hpp"

namespace arrfaces {

// A cycle entry of a convex cell: a finite point, or a point at infinity
// reached along direction `dir` (nonzero, not normalized).
struct CellVertex {
  bool at_infinity = false;
  Point p{};    // valid when !at_infinity
  Point dir{};  // valid when at_infinity

  static CellVertex finite(Point q) { return CellVertex{false, std::move(q), {}}; }
  static CellVertex infinite(Point d) { return CellVertex{true, {}, std::move(d)}; }
};

struct EdgeTag {
  enum Kind : uint8_t { Untagged = 0, InputLine = 1, CellBoundary = 2 };
  Kind kind = Untagged;
  int32_t id = -1;

  bool operator==(const EdgeTag&) const = default;
};

// a*x + b*y >= c, with (a,b) != (0,0). Used for clip lines that may be
// vertical (cell boundaries, trapezoid walls); input lines never are.
struct Constraint {
  Scalar a, b, c;

  Scalar eval(const Point& q) const { return a * q.x + b * q.y - c; }
  Scalar eval_dir(const Point& d) const { return a * d.x + b * d.y; }

  static Constraint above_line(const Line& l);   // y >= a*x + b
  static Constraint below_line(const Line& l);   // y <= a*x + b
  static Constraint x_at_least(const Scalar& x);
  static Constraint x_at_most(const Scalar& x);
};

enum class LineRelation { Below = -1, Crossing = 0, Above = 1 };

// Convex region of the plane, possibly unbounded, as a CCW cycle of vertices.
// Direction vertices (at most two, cyclically contiguous) mark boundary rays;
// the cycle edge between two direction vertices is the arc at infinity and has
// no geometry. The region is conv(finite vertices) Minkowski-plus the cone of
// the direction vertices; a recession cone spanning an angle >= pi (half-plane,
// strip) is not representable and never arises here because cells are always
// cut out by at least two non-parallel lines.
class ConvexCell {
 public:
  ConvexCell() = default;

  // Bounded cell from CCW convex points. Throws Error(DegenerateInput) if
  // fewer than 3 points or not strictly convex CCW.
  static ConvexCell bounded(std::vector<Point> pts);
  static ConvexCell from_cycle(std::vector<CellVertex> cycle, std::vector<EdgeTag> tags);

  // The four wedges around `apex` delimited by directions d1/-d1 and d2/-d2
  // (cross(d1,d2) must be > 0); tags label the rays lying on each line.
  static std::vector<ConvexCell> wedges(const Point& apex, const Point& d1, const Point& d2,
                                        EdgeTag tag1, EdgeTag tag2);

  size_t size() const { return cycle_.size(); }
  const std::vector<CellVertex>& cycle() const { return cycle_; }
  const std::vector<EdgeTag>& edge_tags() const { return tags_; }
  const CellVertex& vertex(size_t i) const { return cycle_[i]; }
  // Edge i joins cycle entry i and i+1 (mod size); an edge between two
  // direction vertices is the arc at infinity.
  const EdgeTag& edge_tag(size_t i) const { return tags_[i]; }

  bool is_bounded() const;
  bool unbounded_towards_negative_x() const;
  bool unbounded_towards_positive_x() const;

  // Relation of the open interior to a (non-vertical) line.
  LineRelation classify_vs_line(const Line& l) const;
  bool crosses(const Line& l) const { return classify_vs_line(l) == LineRelation::Crossing; }

  bool contains(const Point& q) const;           // closed region
  bool strictly_contains(const Point& q) const;  // open interior
  bool on_boundary(const Point& q) const;

  // Intersection with {f >= 0}; nullopt when the kept part has empty interior.
  // New boundary edges created along the constraint line get `new_tag`.
  std::optional<ConvexCell> clip(const Constraint& c, EdgeTag new_tag) const;
  std::optional<ConvexCell> clip_above(const Line& l, EdgeTag new_tag) const;
  std::optional<ConvexCell> clip_below(const Line& l, EdgeTag new_tag) const;

  // Bottom-vertex fan triangulation into cells of exactly 3 cycle entries.
  // Degenerate (zero-area) fan pieces are dropped; interior diagonals are
  // untagged, boundary edges keep their tags. anchor_offset rotates the fan
  // apex to another finite vertex (callers retry when a point to be stored
  // falls exactly on a fan diagonal).
  std::vector<ConvexCell> triangulate(size_t anchor_offset = 0) const;

  // A point strictly inside the cell.
  Point interior_point() const;

  bool has_interior() const;
  void validate() const;  // throws Error(Internal) when the invariants fail

  std::string describe() const;

 private:
  std::vector<CellVertex> cycle_;
  std::vector<EdgeTag> tags_;
};

// Cutting cells and partition-tree cells are generalized triangles: cells with
// exactly three cycle entries, up to two of them at infinity.
using Triangle = ConvexCell;

// Spec-level predicate: does `l` meet the open interior of `t`?
inline bool line_crosses_triangle(const Line& l, const Triangle& t) { return t.crosses(l); }

// Splits `start` by every line in `lines` (ids index into `lines` for edge
// tags); returns the faces of the induced arrangement inside `start`.
std::vector<ConvexCell> subdivide_by_lines(const ConvexCell& start, const std::vector<Line>& lines);

}  // namespace arrfaces
