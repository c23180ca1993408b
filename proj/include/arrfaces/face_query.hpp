#pragma once

#include <optional>

#include "arrfaces/cell.hpp"
#include "arrfaces/face.hpp"
#include "arrfaces/rng.hpp"

namespace arrfaces {

struct PartitionNode {
  bool whole_plane = false;  // root only
  ConvexCell cell;
  int64_t count = 0;
  int level = 0;
  std::vector<int> children;
  std::vector<int> point_ids;  // leaves only, lex-sorted
  Hull hull;                   // hull of every contained point
  bool is_leaf() const { return children.empty(); }
};

// Half-plane-decomposing partition tree. The splitter is a 4-way partition by
// a vertical median wall and a line that simultaneously halves both sides
// (found by a discrete Newton iteration with a bisection guard), so each
// child keeps at most ceil(n/4) points and any line misses at least one
// child. Canonical answers are exact; only the O(sqrt n) size of Chan's
// optimal tree is traded for the n^(log4 3) of this baseline.
class PartitionTree {
 public:
  static PartitionTree build(const std::vector<Point>& points, int leaf_capacity, Rng rng);

  const PartitionNode& node(int i) const { return nodes_[i]; }
  const PartitionNode& root() const { return nodes_[0]; }
  int size() const { return static_cast<int>(nodes_.size()); }
  int height() const { return height_; }
  const std::vector<Point>& points() const { return points_; }

  struct CanonicalAnswer {
    std::vector<int> inside;         // nodes with cell inside the half-plane
    std::vector<int> crossed_leaves; // leaves crossed by the boundary line
  };
  // Half-plane {above/below boundary}; the boundary mustميss all points
  // (violations surface when crossed-leaf points are filtered).
  CanonicalAnswer halfplane_canonical(const Line& boundary, bool above) const;

  void validate() const;  // per-level partition, child caps, hull correctness

 private:
  std::vector<PartitionNode> nodes_;
  std::vector<Point> points_;
  int leaf_capacity_ = 1;
  int height_ = 0;
};

// Per-leaf explicit arrangement of the (at most r) lines dual to the leaf's
// points: slab decomposition with exact binary-search point location, plus
// persistent face records whose chains feed the hull merge directly.
struct LeafArrangement {
  std::vector<Line> lines;
  std::vector<Scalar> xs;                     // crossing x's, sorted
  std::vector<std::vector<int>> slab_order;   // per slab, line ids by y
  std::vector<std::vector<int>> slab_face;    // per slab, gap -> face index
  std::vector<Face> faces;

  static LeafArrangement build(std::vector<Line> lines);
  int locate(const Point& p) const;  // POINT_ON_LINE
};

struct FaceQueryStructure {
  std::vector<Line> lines;
  std::vector<Point> s_star;       // duals, lex-sorted
  std::vector<int> star_line_id;   // s_star[i] is the dual of lines[star_line_id[i]]
  int leaf_r = 1;
  bool tradeoff = false;
  PartitionTree tree;
  std::vector<std::optional<LeafArrangement>> leaf_arr;  // by node id, tradeoff only

  std::vector<uint64_t> hull_fingerprints() const;
};

FaceQueryStructure fq_build(const std::vector<Line>& lines, uint64_t seed);
FaceQueryStructure fq_build_tradeoff(const std::vector<Line>& lines, int r, uint64_t seed);

struct FqQueryStats {
  int64_t canonical_inside = 0;
  int64_t canonical_crossed = 0;
};

// The face of the arrangement containing p. Errors: POINT_ON_LINE.
Face fq_query(const FaceQueryStructure& s, const Point& p, FqQueryStats* stats = nullptr);

}  // namespace arrfaces
