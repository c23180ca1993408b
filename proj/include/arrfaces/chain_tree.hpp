#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "arrfaces/geometry.hpp"

namespace arrfaces {

enum class ChainSide { Lower, Upper };

// Immutable handle to a persistent balanced search tree over the vertices of a
// convex chain, keyed and ordered by x. Every operation path-copies, so any
// previously obtained handle stays valid and unchanged. Balancing is a treap
// whose priorities are hashes of the vertex x-coordinate, which makes the tree
// shape (and height bound, in expectation) independent of operation history.
class ChainHandle {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Point v;
    NodePtr left, right;
    uint64_t prio;
    int64_t count;
    int height;
    Point lo, hi;       // leftmost / rightmost vertex in the subtree
    uint64_t seq_hash;  // polynomial hash of the in-order vertex sequence
    uint64_t seq_pow;   // base^count, cached for O(1) hash joins
  };

  ChainHandle() = default;
  explicit ChainHandle(ChainSide side) : side_(side) {}

  // `vertices` must be strictly increasing in x and strictly convex for the
  // given side (Lower: CCW turns; Upper: CW turns).
  // Errors: NOT_SORTED, NOT_CONVEX.
  static ChainHandle build_from_sorted(const std::vector<Point>& vertices, ChainSide side);

  bool empty() const { return root_ == nullptr; }
  int64_t count() const { return root_ ? root_->count : 0; }
  ChainSide side() const { return side_; }
  const Point& leftmost() const;   // Error: EMPTY_CHAIN
  const Point& rightmost() const;  // Error: EMPTY_CHAIN

  // Digest determined solely by the vertex sequence (not by tree shape or
  // operation history).
  uint64_t fingerprint() const;

  // Left part takes vertices with v.x <= x (split_leq) or v.x < x (split_lt).
  std::pair<ChainHandle, ChainHandle> split_leq(const Scalar& x) const;
  std::pair<ChainHandle, ChainHandle> split_lt(const Scalar& x) const;

  // Concatenation; every vertex of `left` must have smaller x than every
  // vertex of `right` and the seam must stay convex.
  // Errors: X_OVERLAP, NOT_CONVEX.
  static ChainHandle join(const ChainHandle& left, const ChainHandle& right);

  struct Probe {
    const Point& v;
    const Point* prev;  // in-chain predecessor, nullptr at the left end
    const Point* next;  // in-chain successor, nullptr at the right end
  };
  enum class SearchStep { Found, GoLeft, GoRight };

  // Guided binary search; the oracle must be monotone over the chain.
  // Error: NOT_FOUND when the oracle never answers Found.
  Point search(const std::function<SearchStep(const Probe&)>& oracle) const;
  std::optional<Point> try_search(const std::function<SearchStep(const Probe&)>& oracle) const;

  Point at(int64_t index) const;  // 0-based, in x order
  std::vector<Point> to_vector() const;

  // Full O(n) invariant check: strict x order, strict convexity for the side,
  // height <= kHeightFactor * log2(count + 2).
  void validate() const;

  static constexpr double kHeightFactor = 6.0;

 private:
  ChainHandle(NodePtr root, ChainSide side) : root_(std::move(root)), side_(side) {}

  NodePtr root_;
  ChainSide side_ = ChainSide::Lower;
};

// NOT_CONVEX iff the triple breaks strict convexity for the side.
bool convex_turn(const Point& a, const Point& b, const Point& c, ChainSide side);

}  // namespace arrfaces
