#include "arrfaces/chain_tree.hpp"

#include <algorithm>
#include <cmath>

#include "arrfaces/errors.hpp"

namespace arrfaces {

namespace {

constexpr uint64_t kHashBase = 0x100000001b3ULL;  // odd

using Node = ChainHandle::Node;
using NodePtr = ChainHandle::NodePtr;

NodePtr make_node(Point v, NodePtr left, NodePtr right) {
  auto n = std::make_shared<Node>();
  n->prio = hash_scalar(v.x);
  n->count = 1 + (left ? left->count : 0) + (right ? right->count : 0);
  n->height = 1 + std::max(left ? left->height : 0, right ? right->height : 0);
  n->lo = left ? left->lo : v;
  n->hi = right ? right->hi : v;
  uint64_t h = left ? left->seq_hash : 0;
  uint64_t pw = left ? left->seq_pow : 1;
  h = h * kHashBase + hash_point(v);
  pw *= kHashBase;
  if (right) {
    h = h * right->seq_pow + right->seq_hash;
    pw *= right->seq_pow;
  }
  n->seq_hash = h;
  n->seq_pow = pw;
  n->v = std::move(v);
  n->left = std::move(left);
  n->right = std::move(right);
  return n;
}

NodePtr join_raw(const NodePtr& l, const NodePtr& r) {
  if (!l) return r;
  if (!r) return l;
  if (l->prio >= r->prio) return make_node(l->v, l->left, join_raw(l->right, r));
  return make_node(r->v, join_raw(l, r->left), r->right);
}

// (subtree with v.x <= x | strictly-less when `leq` is false, rest)
std::pair<NodePtr, NodePtr> split_raw(const NodePtr& t, const Scalar& x, bool leq) {
  if (!t) return {nullptr, nullptr};
  const int c = cmp(t->v.x, x);
  const bool go_left = leq ? (c <= 0) : (c < 0);
  if (go_left) {
    auto [a, b] = split_raw(t->right, x, leq);
    return {make_node(t->v, t->left, a), b};
  }
  auto [a, b] = split_raw(t->left, x, leq);
  return {a, make_node(t->v, b, t->right)};
}

// O(n) Cartesian-tree construction over the presorted vertices.
NodePtr build_raw(const std::vector<Point>& pts) {
  const size_t n = pts.size();
  if (n == 0) return nullptr;
  std::vector<uint64_t> prio(n);
  for (size_t i = 0; i < n; ++i) prio[i] = hash_scalar(pts[i].x);
  std::vector<int> left(n, -1), right(n, -1), stack;
  stack.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    int last = -1;
    while (!stack.empty() && prio[stack.back()] < prio[i]) {
      last = stack.back();
      stack.pop_back();
    }
    left[i] = last;
    if (!stack.empty()) right[stack.back()] = static_cast<int>(i);
    stack.push_back(static_cast<int>(i));
  }
  const int root = stack.front();
  std::function<NodePtr(int)> mk = [&](int i) -> NodePtr {
    if (i < 0) return nullptr;
    return make_node(pts[i], mk(left[i]), mk(right[i]));
  };
  return mk(root);
}

const Point* second_from_right(const NodePtr& root) {
  const Node* cur = root.get();
  const Point* anc = nullptr;
  while (cur) {
    if (!cur->right) {
      if (cur->left) return &cur->left->hi;
      return anc;
    }
    anc = &cur->v;
    cur = cur->right.get();
  }
  return nullptr;
}

const Point* second_from_left(const NodePtr& root) {
  const Node* cur = root.get();
  const Point* anc = nullptr;
  while (cur) {
    if (!cur->left) {
      if (cur->right) return &cur->right->lo;
      return anc;
    }
    anc = &cur->v;
    cur = cur->left.get();
  }
  return nullptr;
}

}  // namespace

bool convex_turn(const Point& a, const Point& b, const Point& c, ChainSide side) {
  const Orientation o = orientation(a, b, c);
  return side == ChainSide::Lower ? o == Orientation::CCW : o == Orientation::CW;
}

ChainHandle ChainHandle::build_from_sorted(const std::vector<Point>& vertices, ChainSide side) {
  for (size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (!(vertices[i].x < vertices[i + 1].x))
      fail(ErrorCode::NotSorted, "chain vertices not strictly increasing in x at index " +
                                     std::to_string(i + 1));
  }
  for (size_t i = 0; i + 2 < vertices.size(); ++i) {
    if (!convex_turn(vertices[i], vertices[i + 1], vertices[i + 2], side))
      fail(ErrorCode::NotConvex, "chain reflex at index " + std::to_string(i + 1));
  }
  ChainHandle h(build_raw(vertices), side);
#ifndef NDEBUG
  if (h.root_ &&
      h.root_->height > kHeightFactor * std::log2(static_cast<double>(h.root_->count) + 2))
    fail(ErrorCode::Internal, "chain tree height out of bound");
#endif
  return h;
}

const Point& ChainHandle::leftmost() const {
  if (!root_) fail(ErrorCode::EmptyChain, "leftmost of empty chain");
  return root_->lo;
}

const Point& ChainHandle::rightmost() const {
  if (!root_) fail(ErrorCode::EmptyChain, "rightmost of empty chain");
  return root_->hi;
}

uint64_t ChainHandle::fingerprint() const { return root_ ? root_->seq_hash : 0x9e3779b9ULL; }

std::pair<ChainHandle, ChainHandle> ChainHandle::split_leq(const Scalar& x) const {
  auto [a, b] = split_raw(root_, x, true);
  return {ChainHandle(std::move(a), side_), ChainHandle(std::move(b), side_)};
}

std::pair<ChainHandle, ChainHandle> ChainHandle::split_lt(const Scalar& x) const {
  auto [a, b] = split_raw(root_, x, false);
  return {ChainHandle(std::move(a), side_), ChainHandle(std::move(b), side_)};
}

ChainHandle ChainHandle::join(const ChainHandle& left, const ChainHandle& right) {
  if (left.empty()) return right;
  if (right.empty()) return left;
  if (!(left.rightmost().x < right.leftmost().x))
    fail(ErrorCode::XOverlap, "join: left chain reaches x = " +
                                  scalar_to_string(left.rightmost().x) +
                                  ", right starts at x = " + scalar_to_string(right.leftmost().x));
  const ChainSide side = left.side();
  // seam convexity: (l2, l1, r1) and (l1, r1, r2) where present
  if (const Point* l2 = second_from_right(left.root_)) {
    if (!convex_turn(*l2, left.rightmost(), right.leftmost(), side))
      fail(ErrorCode::NotConvex, "join: reflex seam at left end");
  }
  if (const Point* r2 = second_from_left(right.root_)) {
    if (!convex_turn(left.rightmost(), right.leftmost(), *r2, side))
      fail(ErrorCode::NotConvex, "join: reflex seam at right end");
  }
  return ChainHandle(join_raw(left.root_, right.root_), side);
}

std::optional<Point> ChainHandle::try_search(
    const std::function<SearchStep(const Probe&)>& oracle) const {
  const Node* cur = root_.get();
  const Point* left_anc = nullptr;
  const Point* right_anc = nullptr;
  while (cur) {
    const Point* prev = cur->left ? &cur->left->hi : left_anc;
    const Point* next = cur->right ? &cur->right->lo : right_anc;
    switch (oracle(Probe{cur->v, prev, next})) {
      case SearchStep::Found: return cur->v;
      case SearchStep::GoLeft:
        right_anc = &cur->v;
        cur = cur->left.get();
        break;
      case SearchStep::GoRight:
        left_anc = &cur->v;
        cur = cur->right.get();
        break;
    }
  }
  return std::nullopt;
}

Point ChainHandle::search(const std::function<SearchStep(const Probe&)>& oracle) const {
  auto r = try_search(oracle);
  if (!r) fail(ErrorCode::NotFound, "chain search exhausted");
  return *r;
}

Point ChainHandle::at(int64_t index) const {
  if (index < 0 || index >= count()) fail(ErrorCode::ParamRange, "chain index out of range");
  const Node* cur = root_.get();
  while (true) {
    const int64_t lc = cur->left ? cur->left->count : 0;
    if (index < lc) {
      cur = cur->left.get();
    } else if (index == lc) {
      return cur->v;
    } else {
      index -= lc + 1;
      cur = cur->right.get();
    }
  }
}

std::vector<Point> ChainHandle::to_vector() const {
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(count()));
  std::function<void(const Node*)> walk = [&](const Node* n) {
    if (!n) return;
    walk(n->left.get());
    out.push_back(n->v);
    walk(n->right.get());
  };
  walk(root_.get());
  return out;
}

void ChainHandle::validate() const {
  const auto seq = to_vector();
  for (size_t i = 0; i + 1 < seq.size(); ++i)
    if (!(seq[i].x < seq[i + 1].x)) fail(ErrorCode::Internal, "chain not strictly x-sorted");
  for (size_t i = 0; i + 2 < seq.size(); ++i)
    if (!convex_turn(seq[i], seq[i + 1], seq[i + 2], side_))
      fail(ErrorCode::Internal, "chain not convex");
  if (root_) {
    if (root_->height > kHeightFactor * std::log2(static_cast<double>(root_->count) + 2))
      fail(ErrorCode::Internal, "chain tree height out of bound");
    if (!(root_->lo == seq.front()) || !(root_->hi == seq.back()))
      fail(ErrorCode::Internal, "chain extreme cache wrong");
  }
}

}  // namespace arrfaces
