#include "arrfaces/hulls.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arrfaces/errors.hpp"

namespace arrfaces {

namespace {

Scalar cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }

Point sub(const Point& a, const Point& b) { return Point{a.x - b.x, a.y - b.y}; }

// Monotone scan over presorted, equal-x-collapsed points. Throws on collinear
// triples: three collinear dual points are three concurrent primal lines.
std::vector<Point> half_hull(const std::vector<Point>& pts, ChainSide side) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const Point& p : pts) {
    while (out.size() >= 2) {
      const Orientation o = orientation(out[out.size() - 2], out.back(), p);
      if (o == Orientation::Collinear)
        fail(ErrorCode::GeneralPosition, "three collinear points on a hull (concurrent lines)");
      const bool keep = (side == ChainSide::Lower) ? o == Orientation::CCW : o == Orientation::CW;
      if (keep) break;
      out.pop_back();
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace

Hull hull_of_sorted(const std::vector<Point>& pts) {
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!lex_less(pts[i], pts[i + 1])) {
      if (pts[i] == pts[i + 1])
        fail(ErrorCode::GeneralPosition, "duplicate point in hull input");
      fail(ErrorCode::NotSorted, "hull input not lex-sorted at index " + std::to_string(i + 1));
    }
  }
  // collapse equal-x runs: lowest survives for the lower chain, highest for
  // the upper one (the only points reachable by the respective envelope)
  std::vector<Point> lows, highs;
  lows.reserve(pts.size());
  highs.reserve(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    if (i == 0 || pts[i].x != pts[i - 1].x) {
      lows.push_back(pts[i]);
      highs.push_back(pts[i]);
    } else {
      highs.back() = pts[i];
    }
  }
  Hull h;
  h.lower = ChainHandle::build_from_sorted(half_hull(lows, ChainSide::Lower), ChainSide::Lower);
  h.upper = ChainHandle::build_from_sorted(half_hull(highs, ChainSide::Upper), ChainSide::Upper);
  return h;
}

Point tangent_from_point(const ChainHandle& chain, const Point& u, bool ccw_most) {
  if (chain.empty()) fail(ErrorCode::EmptyChain, "tangent from point to empty chain");
  return chain.search([&](const ChainHandle::Probe& pr) {
    const Point dw = sub(pr.v, u);
    if (ccw_most) {
      if (pr.next && sgn(cross(dw, sub(*pr.next, u))) > 0) return ChainHandle::SearchStep::GoRight;
      if (pr.prev && sgn(cross(dw, sub(*pr.prev, u))) > 0) return ChainHandle::SearchStep::GoLeft;
    } else {
      if (pr.next && sgn(cross(sub(*pr.next, u), dw)) > 0) return ChainHandle::SearchStep::GoRight;
      if (pr.prev && sgn(cross(sub(*pr.prev, u), dw)) > 0) return ChainHandle::SearchStep::GoLeft;
    }
    return ChainHandle::SearchStep::Found;
  });
}

std::pair<Point, Point> common_tangent(const ChainHandle& a, const ChainHandle& b) {
  if (a.empty() || b.empty()) fail(ErrorCode::EmptyChain, "common tangent with empty chain");
  if (!(a.rightmost().x < b.leftmost().x))
    fail(ErrorCode::XOverlap, "common tangent requires vertical separation");
  const ChainSide side = a.side();
  // From a point left of b, the tangent supporting a Lower chain from below is
  // the clockwise-most direction; for an Upper chain the counterclockwise-most.
  const bool ccw = (side == ChainSide::Upper);
  Point result_b{};
  const Point va = a.search([&](const ChainHandle::Probe& pr) {
    const Point vb = tangent_from_point(b, pr.v, ccw);
    const Line l = line_through(pr.v, vb);
    const Side bad = (side == ChainSide::Lower) ? Side::Below : Side::Above;
    if (pr.next && side_of_line(l, *pr.next) == bad) return ChainHandle::SearchStep::GoRight;
    if (pr.prev && side_of_line(l, *pr.prev) == bad) return ChainHandle::SearchStep::GoLeft;
    result_b = vb;
    return ChainHandle::SearchStep::Found;
  });
  return {va, result_b};
}

namespace {

struct SweepSeg {
  Point p, q;  // p.x <= q.x, positive length (p.x < q.x)
  int owner;

  Scalar y_at(const Scalar& x) const {
    if (p.x == q.x) return p.y;
    return p.y + (q.y - p.y) * (x - p.x) / (q.x - p.x);
  }
};

bool on_segment_collinear(const Point& a, const Point& b, const Point& c) {
  // c collinear with a-b: is it within the box?
  return !(c.x < std::min(a.x, b.x)) && !(c.x > std::max(a.x, b.x)) &&
         !(c.y < std::min(a.y, b.y)) && !(c.y > std::max(a.y, b.y));
}

bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Orientation o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  const Orientation o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != Orientation::Collinear && o2 != Orientation::Collinear &&
      o3 != Orientation::Collinear && o4 != Orientation::Collinear)
    return true;
  if (o1 == Orientation::Collinear && on_segment_collinear(a, b, c)) return true;
  if (o2 == Orientation::Collinear && on_segment_collinear(a, b, d)) return true;
  if (o3 == Orientation::Collinear && on_segment_collinear(c, d, a)) return true;
  if (o4 == Orientation::Collinear && on_segment_collinear(c, d, b)) return true;
  // proper crossing with an endpoint orientation zero is covered above
  return o1 != o2 && o3 != o4;
}

}  // namespace

std::vector<EnvelopeInterval> envelope_of_disjoint_segments(
    const std::vector<RepresentativeSegment>& segments, ChainSide side) {
  // Mirror the upper-envelope case through y -> -y.
  const bool flip = (side == ChainSide::Upper);
  std::vector<SweepSeg> segs;
  std::vector<std::pair<Point, int>> points;  // zero-length entries
  for (const auto& s : segments) {
    Point p = s.left, q = s.right;
    if (flip) {
      p.y = -p.y;
      q.y = -q.y;
    }
    if (p.x == q.x) {
      if (p.y != q.y) fail(ErrorCode::SegmentsIntersect, "vertical representative segment");
      points.push_back({p, s.owner});
    } else {
      segs.push_back(SweepSeg{p, q, s.owner});
    }
  }

  std::vector<Scalar> xs;
  for (const auto& s : segs) {
    xs.push_back(s.p.x);
    xs.push_back(s.q.x);
  }
  for (const auto& [p, o] : points) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // With pairwise disjoint segments the vertical order of two overlapping
  // segments never changes, so the envelope owner can only change at endpoint
  // x-coordinates and a set ordered "by y at the current x" stays consistent.
  Scalar sweep_x(0);
  auto cmp = [&](int i, int j) {
    if (i == j) return false;
    const Scalar yi = segs[i].y_at(sweep_x), yj = segs[j].y_at(sweep_x);
    const int c = cmp_sc(yi, yj);
    if (c != 0) return c < 0;
    // same y at the probe x: only legal for distinct slopes on touching ends;
    // order by slope so the set stays a strict order
    const Scalar si = (segs[i].q.y - segs[i].p.y) / (segs[i].q.x - segs[i].p.x);
    const Scalar sj = (segs[j].q.y - segs[j].p.y) / (segs[j].q.x - segs[j].p.x);
    const int cs = cmp_sc(si, sj);
    if (cs != 0) return cs < 0;
    return i < j;
  };
  std::set<int, decltype(cmp)> active(cmp);

  std::vector<EnvelopeInterval> out;
  auto open_or_extend = [&](const Scalar& from, const Scalar& to, int owner) {
    if (owner < 0) return;
    if (!out.empty() && out.back().owner == owner && out.back().xhi == from) {
      out.back().xhi = to;
      return;
    }
    out.push_back(EnvelopeInterval{from, to, owner});
  };

  for (size_t k = 0; k < xs.size(); ++k) {
    const Scalar& x = xs[k];
    sweep_x = x;
    for (size_t i = 0; i < segs.size(); ++i) {
      if (segs[i].p.x == x) {
        auto [it, ok] = active.insert(static_cast<int>(i));
        if (!ok) fail(ErrorCode::Internal, "duplicate sweep segment");
        auto nxt = std::next(it);
        if (nxt != active.end() &&
            segments_touch(segs[i].p, segs[i].q, segs[*nxt].p, segs[*nxt].q))
          fail(ErrorCode::SegmentsIntersect, "representative segments intersect");
        if (it != active.begin()) {
          auto prv = std::prev(it);
          if (segments_touch(segs[i].p, segs[i].q, segs[*prv].p, segs[*prv].q))
            fail(ErrorCode::SegmentsIntersect, "representative segments intersect");
        }
      }
    }
    // momentary minimum at exactly x (point hulls; also segments ending here)
    int at_x_owner = -1;
    Scalar at_x_y(0);
    if (!active.empty()) {
      at_x_owner = segs[*active.begin()].owner;
      at_x_y = segs[*active.begin()].y_at(x);
    }
    for (const auto& [p, o] : points) {
      if (p.x == x) {
        if (at_x_owner >= 0) {
          const int c = cmp_sc(p.y, at_x_y);
          if (c == 0) fail(ErrorCode::SegmentsIntersect, "point hull on a representative segment");
          if (c > 0) continue;
        }
        at_x_owner = o;
        at_x_y = p.y;
      }
    }
    if (at_x_owner >= 0) open_or_extend(x, x, at_x_owner);
    for (size_t i = 0; i < segs.size(); ++i)
      if (segs[i].q.x == x) active.erase(static_cast<int>(i));
    if (k + 1 < xs.size() && !active.empty()) {
      const int gap_owner = segs[*active.begin()].owner;
      open_or_extend(x, xs[k + 1], gap_owner);
    }
  }
  return out;
}

namespace {

// Chain restricted to [lo, hi] with configurable endpoint inclusion.
ChainHandle chain_window(const ChainHandle& c, const Scalar& lo, bool lo_incl, const Scalar& hi,
                         bool hi_incl) {
  auto right = lo_incl ? c.split_lt(lo).second : c.split_leq(lo).second;
  return hi_incl ? right.split_leq(hi).first : right.split_lt(hi).first;
}

}  // namespace

ChainHandle merge_disjoint_hulls(const std::vector<ChainHandle>& chains, ChainSide side) {
  std::vector<const ChainHandle*> live;
  for (const auto& c : chains)
    if (!c.empty()) live.push_back(&c);
  if (live.empty()) return ChainHandle(side);
  if (live.size() == 1) return *live[0];

  std::vector<RepresentativeSegment> reps;
  reps.reserve(live.size());
  for (size_t i = 0; i < live.size(); ++i)
    reps.push_back(RepresentativeSegment{live[i]->leftmost(), live[i]->rightmost(),
                                         static_cast<int>(i)});
  std::vector<EnvelopeInterval> env;
  try {
    env = envelope_of_disjoint_segments(reps, side);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SegmentsIntersect)
      fail(ErrorCode::HullsIntersect, "input hulls are not pairwise disjoint");
    throw;
  }

  // y-comparison used to decide which owner keeps a vertex sitting exactly on
  // an envelope breakpoint: the one visible (extreme) there.
  auto y_of = [&](int owner, const Scalar& x) {
    const auto& r = reps[owner];
    if (r.left.x == r.right.x) return r.left.y;
    return r.left.y + (r.right.y - r.left.y) * (x - r.left.x) / (r.right.x - r.left.x);
  };
  auto wins = [&](int owner, int other, const Scalar& x) {
    const int c = cmp_sc(y_of(owner, x), y_of(other, x));
    return side == ChainSide::Lower ? c < 0 : c > 0;
  };

  ChainHandle acc(side);
  for (size_t k = 0; k < env.size(); ++k) {
    const auto& iv = env[k];
    const bool lo_incl = (k == 0) || wins(iv.owner, env[k - 1].owner, iv.xlo);
    const bool hi_incl = (k + 1 == env.size()) || wins(iv.owner, env[k + 1].owner, iv.xhi);
    ChainHandle piece = chain_window(*live[iv.owner], iv.xlo, lo_incl, iv.xhi, hi_incl);
    if (piece.empty()) continue;
    if (acc.empty()) {
      acc = piece;
      continue;
    }
    // trim an equal-x junction: only the extreme one of the two vertices can
    // lie on the merged hull
    if (acc.rightmost().x == piece.leftmost().x) {
      const bool acc_wins = side == ChainSide::Lower
                                ? acc.rightmost().y < piece.leftmost().y
                                : acc.rightmost().y > piece.leftmost().y;
      if (acc_wins)
        piece = piece.split_leq(piece.leftmost().x).second;
      else
        acc = acc.split_lt(acc.rightmost().x).first;
      if (piece.empty()) continue;
      if (acc.empty()) {
        acc = piece;
        continue;
      }
    }
    auto [ta, tb] = common_tangent(acc, piece);
    acc = ChainHandle::join(acc.split_leq(ta.x).first, piece.split_lt(tb.x).second);
  }
  return acc;
}

}  // namespace arrfaces
