#include "arrfaces/face_query.hpp"

#include <algorithm>
#include <set>

#include "arrfaces/errors.hpp"
#include "arrfaces/hulls.hpp"

namespace arrfaces {

namespace {

// Simultaneous halving of two point sets separated by a vertical line: find a
// non-vertical line with exactly floor(|A|/2) of A and floor(|B|/2) of B
// strictly below it and no point on it. With key_p(s) = p.y - s*p.x, the gap
// between consecutive order statistics must overlap for both sets; the
// witness difference is strictly increasing in s, so a Newton step through
// the blocking witness pair converges and a bisection guard stays sound.
struct HalvingCut {
  Scalar slope, intercept;
};

struct OrderGap {
  Scalar lo, hi;    // open interval between the k-1st and k-th smallest key
  Point lo_witness, hi_witness;
};

OrderGap order_gap(const std::vector<Point>& pts, int64_t k, const Scalar& s) {
  // gap between the (k-1)-th and k-th smallest of keys y - s*x (0-based)
  std::vector<std::pair<Scalar, const Point*>> keys;
  keys.reserve(pts.size());
  for (const Point& p : pts) keys.push_back({p.y - s * p.x, &p});
  std::nth_element(keys.begin(), keys.begin() + k, keys.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const auto& hi = keys[k];
  auto lo_it = std::max_element(keys.begin(), keys.begin() + k,
                                [](const auto& a, const auto& b) { return a.first < b.first; });
  OrderGap g{Scalar(0), hi.first, {}, *hi.second};
  if (k == 0) {
    g.lo = hi.first - 1;  // -infinity stand-in, only the witness matters
    g.lo_witness = *hi.second;
  } else {
    g.lo = lo_it->first;
    g.lo_witness = *lo_it->second;
  }
  return g;
}

std::optional<HalvingCut> try_overlap(const std::vector<Point>& a, int64_t ka,
                                      const std::vector<Point>& b, int64_t kb, const Scalar& s,
                                      Point* wa, Point* wb) {
  const OrderGap ga = order_gap(a, ka, s);
  const OrderGap gb = order_gap(b, kb, s);
  const bool a_open_lo = ka == 0, b_open_lo = kb == 0;
  // intersection of the open gaps
  std::optional<Scalar> lo, hi;
  if (!a_open_lo) lo = ga.lo;
  if (!b_open_lo && (!lo || gb.lo > *lo)) lo = gb.lo;
  hi = ga.hi;
  if (gb.hi < *hi) hi = gb.hi;
  if (!lo || *lo < *hi) {
    const Scalar c = lo ? (*lo + *hi) / 2 : (*hi - 1);
    return HalvingCut{s, c};
  }
  // disjoint: report the blocking witness pair for the Newton step
  if (ga.hi <= gb.lo) {  // A's gap entirely below B's
    *wa = ga.hi_witness;
    *wb = gb.lo_witness;
  } else {
    *wa = ga.lo_witness;
    *wb = gb.hi_witness;
  }
  return std::nullopt;
}

// direction of the imbalance: negative when A's gap sits below B's
int gap_direction(const std::vector<Point>& a, int64_t ka, const std::vector<Point>& b, int64_t kb,
                  const Scalar& s) {
  const OrderGap ga = order_gap(a, ka, s);
  const OrderGap gb = order_gap(b, kb, s);
  if (ga.hi <= gb.lo && kb != 0) return -1;
  if (gb.hi <= ga.lo && ka != 0) return 1;
  return 0;
}

HalvingCut simultaneous_halving(const std::vector<Point>& a, const std::vector<Point>& b,
                                Rng& rng) {
  const int64_t ka = static_cast<int64_t>(a.size()) / 2;
  const int64_t kb = static_cast<int64_t>(b.size()) / 2;
  Point wa, wb;
  Scalar s(0);
  for (int iter = 0; iter < 64; ++iter) {
    if (auto cut = try_overlap(a, ka, b, kb, s, &wa, &wb)) return *cut;
    if (wa.x == wb.x) fail(ErrorCode::Internal, "halving witnesses share x");
    s = (wa.y - wb.y) / (wa.x - wb.x);  // slope equalizing the witness keys
    if (auto cut = try_overlap(a, ka, b, kb, s, &wa, &wb)) return *cut;
    // nudge off the critical slope in the direction that helps
    const int d = gap_direction(a, ka, b, kb, s);
    if (d == 0) continue;
    Scalar eps(1, 2);
    for (int probe = 0; probe < 128; ++probe) {
      const Scalar cand = d < 0 ? s + eps : s - eps;
      if (auto cut = try_overlap(a, ka, b, kb, cand, &wa, &wb)) return *cut;
      if (gap_direction(a, ka, b, kb, cand) != d) break;  // overshot; re-Newton
      eps /= 2;
    }
    s = s + Scalar(rng.range(-3, 3));
  }
  // bisection guard: the witness difference is strictly increasing in s
  Scalar lo(-1), hi(1);
  while (gap_direction(a, ka, b, kb, lo) >= 0) lo *= 2;
  while (gap_direction(a, ka, b, kb, hi) <= 0) hi *= 2;
  for (int iter = 0; iter < 512; ++iter) {
    const Scalar mid = (lo + hi) / 2;
    if (auto cut = try_overlap(a, ka, b, kb, mid, &wa, &wb)) return *cut;
    if (gap_direction(a, ka, b, kb, mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  fail(ErrorCode::Internal, "simultaneous halving did not converge");
}

}  // namespace

PartitionTree PartitionTree::build(const std::vector<Point>& points, int leaf_capacity, Rng rng) {
  if (leaf_capacity < 1) fail(ErrorCode::ParamRange, "leaf capacity must be >= 1");
  PartitionTree t;
  t.points_ = points;
  t.leaf_capacity_ = leaf_capacity;
  std::vector<int> all(points.size());
  for (size_t i = 0; i < points.size(); ++i) all[i] = static_cast<int>(i);
  std::sort(all.begin(), all.end(),
            [&](int i, int j) { return lex_less(points[i], points[j]); });
  for (size_t i = 0; i + 1 < all.size(); ++i)
    if (points[all[i]] == points[all[i + 1]])
      fail(ErrorCode::GeneralPosition, "duplicate dual point (duplicate line)");

  struct Work {
    int node;
    std::vector<int> ids;  // lex-sorted
  };
  PartitionNode root;
  root.whole_plane = true;
  root.count = static_cast<int64_t>(points.size());
  root.level = 0;
  t.nodes_.push_back(root);
  std::vector<Work> stack{{0, std::move(all)}};

  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    PartitionNode& nd = t.nodes_[w.node];
    t.height_ = std::max(t.height_, nd.level + 1);
    {
      std::vector<Point> pts;
      pts.reserve(w.ids.size());
      for (int id : w.ids) pts.push_back(points[id]);
      if (!pts.empty()) nd.hull = hull_of_sorted(pts);
    }
    if (static_cast<int64_t>(w.ids.size()) <= leaf_capacity_) {
      nd.point_ids = std::move(w.ids);
      continue;
    }

    // vertical median wall, sliding off an equal-x run
    const size_t half = w.ids.size() / 2;
    size_t cut = half;
    while (cut > 0 && points[w.ids[cut - 1]].x == points[w.ids[cut]].x) --cut;
    std::vector<std::vector<int>> parts;
    std::vector<ConvexCell> cells;
    if (cut == 0) {
      cut = half;
      while (cut < w.ids.size() && points[w.ids[cut - 1]].x == points[w.ids[cut]].x) ++cut;
    }
    if (cut == 0 || cut == w.ids.size()) {
      // every point shares one x: split the cell into four horizontal bands
      // (query lines may cross all four; only query speed degrades)
      const size_t q = (w.ids.size() + 3) / 4;
      std::vector<size_t> cuts;
      for (size_t c = q; c < w.ids.size(); c += q) cuts.push_back(c);
      std::vector<Scalar> walls;
      for (size_t c : cuts)
        walls.push_back((points[w.ids[c - 1]].y + points[w.ids[c]].y) / 2);
      ConvexCell rest = nd.cell;
      if (nd.whole_plane) fail(ErrorCode::DegenerateInput, "all dual points share an x-coordinate");
      size_t from = 0;
      for (size_t c = 0; c <= cuts.size(); ++c) {
        std::vector<int> ids(w.ids.begin() + from,
                             w.ids.begin() + (c < cuts.size() ? cuts[c] : w.ids.size()));
        from = c < cuts.size() ? cuts[c] : w.ids.size();
        parts.push_back(std::move(ids));
      }
      for (const Scalar& wall : walls) {
        const Line h{Scalar(0), wall};
        auto below = rest.clip_below(h, EdgeTag{});
        auto above = rest.clip_above(h, EdgeTag{});
        if (!below || !above) fail(ErrorCode::Internal, "band wall missed the cell");
        cells.push_back(std::move(*below));
        rest = std::move(*above);
      }
      cells.push_back(std::move(rest));
    } else {
      const Scalar wall = (points[w.ids[cut - 1]].x + points[w.ids[cut]].x) / 2;
      std::vector<Point> A, B;
      for (size_t i = 0; i < cut; ++i) A.push_back(points[w.ids[i]]);
      for (size_t i = cut; i < w.ids.size(); ++i) B.push_back(points[w.ids[i]]);
      const HalvingCut hc = simultaneous_halving(A, B, rng);
      const Line l2{hc.slope, hc.intercept};
      // quadrants: (left/right of wall) x (below/above l2)
      parts.assign(4, {});
      for (int id : w.ids) {
        const Point& p = points[id];
        const bool right = p.x > wall;
        const Side sd = side_of_line(l2, p);
        if (sd == Side::On) fail(ErrorCode::Internal, "point on the halving line");
        parts[(right ? 2 : 0) + (sd == Side::Above ? 1 : 0)].push_back(id);
      }
      if (nd.whole_plane) {
        const Point apex{wall, l2.y_at(wall)};
        // wedges around apex between the l2 direction and the vertical
        auto ws = ConvexCell::wedges(apex, Point{Scalar(1), l2.a}, Point{Scalar(0), Scalar(1)},
                                     EdgeTag{}, EdgeTag{});
        // ws[0]: right-above, ws[1]: left-above, ws[2]: left-below, ws[3]: right-below
        cells = {std::move(ws[2]), std::move(ws[1]), std::move(ws[3]), std::move(ws[0])};
      } else {
        auto lt = Constraint::x_at_most(wall);
        auto rt = Constraint::x_at_least(wall);
        for (int q = 0; q < 4; ++q) {
          auto c1 = nd.cell.clip(q < 2 ? lt : rt, EdgeTag{});
          if (!c1) fail(ErrorCode::Internal, "quadrant wall missed the cell");
          auto c2 = (q % 2) ? c1->clip_above(l2, EdgeTag{}) : c1->clip_below(l2, EdgeTag{});
          if (!c2) fail(ErrorCode::Internal, "halving line missed the cell");
          cells.push_back(std::move(*c2));
        }
      }
    }

    for (size_t q = 0; q < parts.size(); ++q) {
      PartitionNode child;
      child.cell = std::move(cells[q]);
      child.count = static_cast<int64_t>(parts[q].size());
      child.level = t.nodes_[w.node].level + 1;
      const int id = static_cast<int>(t.nodes_.size());
      t.nodes_[w.node].children.push_back(id);
      t.nodes_.push_back(std::move(child));
      stack.push_back(Work{id, std::move(parts[q])});
    }
  }
  return t;
}

PartitionTree::CanonicalAnswer PartitionTree::halfplane_canonical(const Line& boundary,
                                                                  bool above) const {
  CanonicalAnswer ans;
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int ni : frontier) {
      const PartitionNode& nd = nodes_[ni];
      if (nd.count == 0) continue;
      if (nd.whole_plane) {
        if (nd.is_leaf())
          ans.crossed_leaves.push_back(ni);
        else
          next.insert(next.end(), nd.children.begin(), nd.children.end());
        continue;
      }
      const LineRelation rel = nd.cell.classify_vs_line(boundary);
      if (rel == LineRelation::Crossing) {
        if (nd.is_leaf())
          ans.crossed_leaves.push_back(ni);
        else
          next.insert(next.end(), nd.children.begin(), nd.children.end());
      } else if ((rel == LineRelation::Above) == above) {
        ans.inside.push_back(ni);
      }
    }
    frontier = std::move(next);
  }
  return ans;
}

void PartitionTree::validate() const {
  std::vector<int64_t> level_total(height_ + 1, 0);
  for (int i = 0; i < size(); ++i) {
    const PartitionNode& nd = nodes_[i];
    if (nd.is_leaf()) {
      if (static_cast<int64_t>(nd.point_ids.size()) != nd.count)
        fail(ErrorCode::Internal, "leaf count mismatch");
      for (int id : nd.point_ids)
        if (!nd.whole_plane && !nd.cell.strictly_contains(points_[id]))
          fail(ErrorCode::Internal, "leaf point outside its cell");
    } else {
      int64_t total = 0;
      for (int c : nd.children) {
        total += nodes_[c].count;
        if (nodes_[c].count > (nd.count + 3) / 4 + 1)
          fail(ErrorCode::Internal, "child holds more than a quarter of the points");
      }
      if (total != nd.count) fail(ErrorCode::Internal, "children do not partition the node");
    }
  }
}

LeafArrangement LeafArrangement::build(std::vector<Line> ls) {
  LeafArrangement la;
  la.lines = std::move(ls);
  const int n = static_cast<int>(la.lines.size());
  std::vector<Scalar> xs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (auto c = intersect_lines(la.lines[i], la.lines[j])) xs.push_back(c->x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  la.xs = xs;

  const int slabs = static_cast<int>(xs.size()) + 1;
  la.slab_order.resize(slabs);
  for (int s = 0; s < slabs; ++s) {
    Scalar sample;
    if (xs.empty())
      sample = 0;
    else if (s == 0)
      sample = xs.front() - 1;
    else if (s == slabs - 1)
      sample = xs.back() + 1;
    else
      sample = (xs[s - 1] + xs[s]) / 2;
    auto& ord = la.slab_order[s];
    ord.resize(n);
    for (int i = 0; i < n; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](int i, int j) {
      const Scalar yi = la.lines[i].y_at(sample), yj = la.lines[j].y_at(sample);
      const int c = cmp_sc(yi, yj);
      if (c != 0) return c < 0;
      return la.lines[i].a < la.lines[j].a;
    });
  }

  // union-find over (slab, gap) cells through shared wall intervals
  std::vector<int> offset(slabs + 1, 0);
  for (int s = 0; s < slabs; ++s) offset[s + 1] = offset[s] + n + 1;
  std::vector<int> parent(offset[slabs]);
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int s = 0; s + 1 < slabs; ++s) {
    const Scalar& w = xs[s];
    auto y_of = [&](const std::vector<int>& ord, int g,
                    bool hi) -> std::optional<Scalar> {
      const int idx = hi ? g : g - 1;
      if (idx < 0 || idx >= n) return std::nullopt;
      return la.lines[ord[idx]].y_at(w);
    };
    for (int g = 0; g <= n; ++g)
      for (int g2 = 0; g2 <= n; ++g2) {
        auto lo1 = y_of(la.slab_order[s], g, false), hi1 = y_of(la.slab_order[s], g, true);
        auto lo2 = y_of(la.slab_order[s + 1], g2, false), hi2 = y_of(la.slab_order[s + 1], g2, true);
        std::optional<Scalar> lo = lo1;
        if (lo2 && (!lo || *lo2 > *lo)) lo = lo2;
        std::optional<Scalar> hi = hi1;
        if (hi2 && (!hi || *hi2 < *hi)) hi = hi2;
        if (!lo || !hi || *lo < *hi) parent[find(offset[s] + g)] = find(offset[s + 1] + g2);
      }
  }

  // face records from the boundary lines of each component's gaps
  std::map<int, int> root_face;
  std::vector<std::set<int>> lower_ids, upper_ids;
  la.slab_face.assign(slabs, {});
  for (int s = 0; s < slabs; ++s) {
    la.slab_face[s].resize(n + 1);
    for (int g = 0; g <= n; ++g) {
      const int r = find(offset[s] + g);
      auto [it, fresh] = root_face.emplace(r, static_cast<int>(root_face.size()));
      if (fresh) {
        lower_ids.emplace_back();
        upper_ids.emplace_back();
      }
      const int f = it->second;
      la.slab_face[s][g] = f;
      if (g > 0) lower_ids[f].insert(la.slab_order[s][g - 1]);
      if (g < n) upper_ids[f].insert(la.slab_order[s][g]);
    }
  }
  la.faces.resize(root_face.size());
  for (size_t f = 0; f < la.faces.size(); ++f) {
    std::vector<Line> lower, upper;
    for (int id : lower_ids[f]) lower.push_back(la.lines[id]);
    for (int id : upper_ids[f]) upper.push_back(la.lines[id]);
    la.faces[f] = face_from_boundary_lines(std::move(lower), std::move(upper));
  }
  return la;
}

int LeafArrangement::locate(const Point& p) const {
  const int s = static_cast<int>(std::upper_bound(xs.begin(), xs.end(), p.x) - xs.begin());
  const auto& ord = slab_order[s];
  // binary search the gap: lines in this slab are y-sorted at any x inside
  int lo = 0, hi = static_cast<int>(ord.size());
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    const Scalar y = lines[ord[mid]].y_at(p.x);
    if (y == p.y) fail(ErrorCode::PointOnLine, "query point on a leaf line");
    if (y < p.y)
      lo = mid + 1;
    else
      hi = mid;
  }
  // guard against p.x sitting exactly on a slab wall between swapped lines
  for (int i = 0; i < static_cast<int>(ord.size()); ++i)
    if (lines[ord[i]].y_at(p.x) == p.y)
      fail(ErrorCode::PointOnLine, "query point on a leaf line");
  return slab_face[s][lo];
}

std::vector<uint64_t> FaceQueryStructure::hull_fingerprints() const {
  std::vector<uint64_t> out;
  for (int i = 0; i < tree.size(); ++i) out.push_back(tree.node(i).hull.fingerprint());
  for (const auto& la : leaf_arr) {
    if (!la) continue;
    for (const Face& f : la->faces) {
      out.push_back(f.lower_dual.fingerprint());
      out.push_back(f.upper_dual.fingerprint());
    }
  }
  return out;
}

namespace {

FaceQueryStructure fq_build_impl(const std::vector<Line>& lines, int r, bool tradeoff,
                                 uint64_t seed) {
  if (lines.empty()) fail(ErrorCode::ParamRange, "face query needs at least one line");
  if (r < 1 || r > static_cast<int>(lines.size()))
    fail(ErrorCode::ParamRange, "leaf capacity out of range");
  FaceQueryStructure s;
  s.lines = lines;
  s.leaf_r = r;
  s.tradeoff = tradeoff;
  std::vector<int> order(lines.size());
  for (size_t i = 0; i < lines.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return lex_less(dual_of_line(lines[i]), dual_of_line(lines[j]));
  });
  for (int id : order) {
    s.s_star.push_back(dual_of_line(lines[id]));
    s.star_line_id.push_back(id);
  }
  s.tree = PartitionTree::build(s.s_star, r, Rng(hash_uint64(seed ^ 0xfaceULL)));
  if (tradeoff) {
    s.leaf_arr.resize(s.tree.size());
    for (int i = 0; i < s.tree.size(); ++i) {
      const PartitionNode& nd = s.tree.node(i);
      if (!nd.is_leaf() || nd.point_ids.empty()) continue;
      std::vector<Line> leaf_lines;
      for (int pid : nd.point_ids) leaf_lines.push_back(lines[s.star_line_id[pid]]);
      s.leaf_arr[i] = LeafArrangement::build(std::move(leaf_lines));
    }
  }
  return s;
}

}  // namespace

FaceQueryStructure fq_build(const std::vector<Line>& lines, uint64_t seed) {
  return fq_build_impl(lines, 1, false, seed);
}

FaceQueryStructure fq_build_tradeoff(const std::vector<Line>& lines, int r, uint64_t seed) {
  return fq_build_impl(lines, r, true, seed);
}

namespace {

ChainHandle fq_hull_side(const FaceQueryStructure& s, const Point& p, const Line& p_star,
                         bool above, FqQueryStats* stats) {
  const auto ans = s.tree.halfplane_canonical(p_star, above);
  if (stats) {
    stats->canonical_inside += static_cast<int64_t>(ans.inside.size());
    stats->canonical_crossed += static_cast<int64_t>(ans.crossed_leaves.size());
  }
  std::vector<ChainHandle> chains;
  for (int ni : ans.inside) {
    const PartitionNode& nd = s.tree.node(ni);
    chains.push_back(above ? nd.hull.lower : nd.hull.upper);
  }
  for (int ni : ans.crossed_leaves) {
    const PartitionNode& nd = s.tree.node(ni);
    if (s.tradeoff && s.leaf_arr[ni]) {
      const LeafArrangement& la = *s.leaf_arr[ni];
      const Face& f = la.faces[la.locate(p)];
      const ChainHandle& portion = above ? f.lower_dual : f.upper_dual;
      if (!portion.empty()) chains.push_back(portion);
    } else {
      // full-tree leaves hold at most one point; test it directly
      std::vector<Point> kept;
      for (int pid : nd.point_ids) {
        const Side sd = side_of_line(p_star, s.s_star[pid]);
        if (sd == Side::On)
          fail(ErrorCode::PointOnLine, "query point lies on an input line");
        if ((sd == Side::Above) == above) kept.push_back(s.s_star[pid]);
      }
      if (kept.empty()) continue;
      Hull h = hull_of_sorted(kept);
      chains.push_back(above ? h.lower : h.upper);
    }
  }
  return merge_disjoint_hulls(chains, above ? ChainSide::Lower : ChainSide::Upper);
}

}  // namespace

Face fq_query(const FaceQueryStructure& s, const Point& p, FqQueryStats* stats) {
  const Line p_star = dual_of_point(p);
  ChainHandle h_plus = fq_hull_side(s, p, p_star, true, stats);
  ChainHandle h_minus = fq_hull_side(s, p, p_star, false, stats);
  return face_from_hulls(h_plus, h_minus, p_star);
}

}  // namespace arrfaces
