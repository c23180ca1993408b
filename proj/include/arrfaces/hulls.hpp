#pragma once

#include <utility>
#include <vector>

#include "arrfaces/chain_tree.hpp"

namespace arrfaces {

struct Hull {
  ChainHandle lower{ChainSide::Lower};
  ChainHandle upper{ChainSide::Upper};

  bool empty() const { return lower.empty(); }
  uint64_t fingerprint() const {
    return hash_combine(lower.fingerprint(), upper.fingerprint());
  }
};

// Convex hull of points presorted lexicographically by (x, y). A run of equal
// x collapses to its lowest point on the lower chain and its highest on the
// upper chain, which is exactly how equal-slope (parallel) primal lines behave
// under the envelope duality. Errors: NOT_SORTED; GENERAL_POSITION on three
// collinear hull points.
Hull hull_of_sorted(const std::vector<Point>& pts);

// Common tangent of two vertically separated chains of the same side: every
// vertex of both chains lies on or above (Lower) / on or below (Upper) the
// line through the returned pair. Requires a.rightmost().x < b.leftmost().x.
// Errors: EMPTY_CHAIN.
std::pair<Point, Point> common_tangent(const ChainHandle& a, const ChainHandle& b);

// Tangent from an external point `u` to a chain, `u` linearly separated from
// the chain. Returns the touching vertex that is angularly extreme around u:
// ccw_most true picks the counterclockwise-most direction u->w.
Point tangent_from_point(const ChainHandle& chain, const Point& u, bool ccw_most);

struct RepresentativeSegment {
  Point left, right;  // left.x <= right.x; equal for single-vertex hulls
  int owner = -1;
};

struct EnvelopeInterval {
  Scalar xlo, xhi;
  int owner;
};

// Lower (side==Lower) or upper envelope of pairwise disjoint segments, as
// maximal left-to-right intervals labeled with the owning segment. At most
// 2t-1 intervals for t segments. Error: SEGMENTS_INTERSECT.
std::vector<EnvelopeInterval> envelope_of_disjoint_segments(
    const std::vector<RepresentativeSegment>& segments, ChainSide side);

// Lower/upper hull of the union of pairwise disjoint hulls, given their
// per-hull chains of the same side. Implements the representative-segment
// envelope, splitting each owner at the envelope breakpoints and merging the
// pieces left to right through common tangents. Input handles stay intact.
// Errors: HULLS_INTERSECT (via SEGMENTS_INTERSECT upstream).
ChainHandle merge_disjoint_hulls(const std::vector<ChainHandle>& chains, ChainSide side);

}  // namespace arrfaces
