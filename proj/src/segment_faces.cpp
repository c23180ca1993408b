#include "arrfaces/segment_faces.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

#include "arrfaces/errors.hpp"
#include "arrfaces/rng.hpp"

namespace arrfaces {

namespace {

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
};

bool point_on_segment(const Point& p, const Segment& s) {
  if (orientation(s.a, s.b, p) != Orientation::Collinear) return false;
  return !(p.x < std::min(s.a.x, s.b.x)) && !(p.x > std::max(s.a.x, s.b.x)) &&
         !(p.y < std::min(s.a.y, s.b.y)) && !(p.y > std::max(s.a.y, s.b.y));
}

// proper interior crossing of two segments in general position
std::optional<Point> proper_crossing(const Segment& s, const Segment& t) {
  const Orientation o1 = orientation(s.a, s.b, t.a), o2 = orientation(s.a, s.b, t.b);
  const Orientation o3 = orientation(t.a, t.b, s.a), o4 = orientation(t.a, t.b, s.b);
  if (o1 == Orientation::Collinear || o2 == Orientation::Collinear ||
      o3 == Orientation::Collinear || o4 == Orientation::Collinear)
    return std::nullopt;
  if (o1 == o2 || o3 == o4) return std::nullopt;
  const Line ls = line_through(s.a, s.b), lt = line_through(t.a, t.b);
  auto c = intersect_lines(ls, lt);
  if (!c) return std::nullopt;
  return c;
}

Scalar seg_y_at(const Segment& s, const Scalar& x) {
  return s.a.y + (s.b.y - s.a.y) * (x - s.a.x) / (s.b.x - s.a.x);
}

int angular_half(const Point& d) {
  if (sgn(d.x) > 0 || (sgn(d.x) == 0 && sgn(d.y) > 0)) return 0;
  return 1;
}

bool angular_less(const Point& d1, const Point& d2) {
  const int h1 = angular_half(d1), h2 = angular_half(d2);
  if (h1 != h2) return h1 < h2;
  return sgn(d1.x * d2.y - d1.y * d2.x) > 0;
}

}  // namespace

void check_segment_general_position(const std::vector<Segment>& segments) {
  const size_t n = segments.size();
  for (const Segment& s : segments)
    if (s.a.x == s.b.x) fail(ErrorCode::GeneralPosition, "vertical segment");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const Segment &s = segments[i], &t = segments[j];
      if (s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b)
        fail(ErrorCode::GeneralPosition, "segments share an endpoint");
      if (point_on_segment(t.a, s) || point_on_segment(t.b, s) || point_on_segment(s.a, t) ||
          point_on_segment(s.b, t))
        fail(ErrorCode::GeneralPosition, "segment endpoint on another segment");
    }
  std::map<Point, int, PointLess> crossings;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (auto c = proper_crossing(segments[i], segments[j]))
        if (++crossings[*c] > 1) fail(ErrorCode::GeneralPosition, "three concurrent segments");
}

SegmentArrangement SegmentArrangement::build(std::vector<Segment> segments) {
  for (Segment& s : segments)
    if (lex_less(s.b, s.a)) std::swap(s.a, s.b);
  check_segment_general_position(segments);

  SegmentArrangement sa;
  std::map<Point, int, PointLess> vid;
  auto vertex = [&](const Point& p) {
    auto [it, fresh] = vid.emplace(p, static_cast<int>(sa.vx_.size()));
    if (fresh) sa.vx_.push_back(p);
    return it->second;
  };

  // split each segment at its crossings
  const size_t n = segments.size();
  std::vector<std::vector<Point>> stations(n);
  for (size_t i = 0; i < n; ++i) {
    stations[i] = {segments[i].a, segments[i].b};
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (auto c = proper_crossing(segments[i], segments[j])) {
        stations[i].push_back(*c);
        stations[j].push_back(*c);
      }
  for (size_t i = 0; i < n; ++i) {
    auto& st = stations[i];
    std::sort(st.begin(), st.end(), lex_less);
    for (size_t k = 0; k + 1 < st.size(); ++k) {
      const int u = vertex(st[k]), v = vertex(st[k + 1]);
      sa.he_.push_back(HE{u, -1, -1});
      sa.he_.push_back(HE{v, -1, -1});
      sa.edges_.push_back({u, v});
    }
  }

  // angular order around each vertex gives the face-walk next pointers
  std::vector<std::vector<int>> out(sa.vx_.size());
  for (int h = 0; h < static_cast<int>(sa.he_.size()); ++h) out[sa.he_[h].origin].push_back(h);
  auto dir_of = [&](int h) {
    const Point& o = sa.vx_[sa.he_[h].origin];
    const Point& d = sa.vx_[sa.he_[h ^ 1].origin];
    return Point{d.x - o.x, d.y - o.y};
  };
  for (auto& lst : out)
    std::sort(lst.begin(), lst.end(),
              [&](int h1, int h2) { return angular_less(dir_of(h1), dir_of(h2)); });
  std::vector<int> pos(sa.he_.size());
  for (const auto& lst : out)
    for (size_t k = 0; k < lst.size(); ++k) pos[lst[k]] = static_cast<int>(k);
  for (int h = 0; h < static_cast<int>(sa.he_.size()); ++h) {
    const int t = h ^ 1;
    const auto& lst = out[sa.he_[t].origin];
    // next = predecessor of the twin in ccw order around the head vertex
    sa.he_[h].next = lst[(pos[t] + lst.size() - 1) % lst.size()];
  }

  // cycles and their signed areas
  std::vector<Scalar> area;
  for (int h = 0; h < static_cast<int>(sa.he_.size()); ++h) {
    if (sa.he_[h].cycle >= 0) continue;
    const int c = static_cast<int>(area.size());
    Scalar a(0);
    for (int e = h;;) {
      sa.he_[e].cycle = c;
      const Point& p = sa.vx_[sa.he_[e].origin];
      const Point& q = sa.vx_[sa.he_[e ^ 1].origin];
      a += p.x * q.y - p.y * q.x;
      e = sa.he_[e].next;
      if (e == h) break;
    }
    area.push_back(a);
  }

  // positive cycles bound faces; non-positive cycles are holes assigned to
  // the face found by shooting a ray straight down from their lex-min vertex
  sa.cycle_face_.assign(area.size(), -1);
  sa.cycles_of_face_.clear();
  sa.cycles_of_face_.emplace_back();  // face 0: the unbounded face
  for (size_t c = 0; c < area.size(); ++c) {
    if (sgn(area[c]) > 0) {
      sa.cycle_face_[c] = static_cast<int>(sa.cycles_of_face_.size());
      sa.cycles_of_face_.emplace_back();
    }
  }
  std::function<int(int)> resolve = [&](int cyc) -> int {
    if (sa.cycle_face_[cyc] >= 0) return sa.cycle_face_[cyc];
    sa.cycle_face_[cyc] = -2;  // in progress
    // lex-min vertex of the cycle
    int vmin = -1;
    for (int h = 0; h < static_cast<int>(sa.he_.size()); ++h)
      if (sa.he_[h].cycle == cyc && (vmin < 0 || lex_less(sa.vx_[sa.he_[h].origin], sa.vx_[vmin])))
        vmin = sa.he_[h].origin;
    const Point& v = sa.vx_[vmin];
    // first edge strictly below v covering v.x in the half-open span
    int best_h = -1;
    std::optional<Scalar> best_y;
    for (size_t e = 0; e < sa.edges_.size(); ++e) {
      const Point& p = sa.vx_[sa.edges_[e].first];
      const Point& q = sa.vx_[sa.edges_[e].second];
      if (!(p.x <= v.x && v.x < q.x)) continue;
      const Scalar y = p.y + (q.y - p.y) * (v.x - p.x) / (q.x - p.x);
      if (y < v.y && (!best_y || y > *best_y)) {
        best_y = y;
        best_h = static_cast<int>(2 * e);  // he 2e is p->q, rightward since p lex< q... see below
      }
    }
    int face;
    if (best_h < 0) {
      face = 0;
    } else {
      // the rightward half-edge has the region above on its left
      const int hr = best_h;  // 2e runs lex-ascending, i.e. rightward (no verticals)
      const int up_cycle = sa.he_[hr].cycle;
      if (sa.cycle_face_[up_cycle] == -2)
        fail(ErrorCode::Internal, "cyclic hole containment");
      face = (sgn(area[up_cycle]) > 0) ? sa.cycle_face_[up_cycle] : resolve(up_cycle);
    }
    sa.cycle_face_[cyc] = face;
    return face;
  };
  for (size_t c = 0; c < area.size(); ++c)
    if (sgn(area[c]) <= 0) resolve(static_cast<int>(c));
  for (size_t c = 0; c < area.size(); ++c)
    sa.cycles_of_face_[sa.cycle_face_[c]].push_back(static_cast<int>(c));
  return sa;
}

int SegmentArrangement::face_above_edge_strictly_below(const Point& p) const {
  int best_h = -1;
  std::optional<Scalar> best_y;
  for (size_t e = 0; e < edges_.size(); ++e) {
    const Point& a = vx_[edges_[e].first];
    const Point& b = vx_[edges_[e].second];
    if (!(a.x <= p.x && p.x < b.x)) continue;
    const Scalar y = a.y + (b.y - a.y) * (p.x - a.x) / (b.x - a.x);
    if (y < p.y && (!best_y || y > *best_y)) {
      best_y = y;
      best_h = static_cast<int>(2 * e);
    }
  }
  if (best_h < 0) return 0;
  return cycle_face_[he_[best_h].cycle];
}

int SegmentArrangement::face_of(const Point& p) const {
  for (size_t e = 0; e < edges_.size(); ++e) {
    const Point& a = vx_[edges_[e].first];
    const Point& b = vx_[edges_[e].second];
    if (point_on_segment(p, Segment{a, b}))
      fail(ErrorCode::DegenerateInput, "query point on a segment");
  }
  return face_above_edge_strictly_below(p);
}

int64_t SegmentArrangement::face_boundary_size(int face) const {
  int64_t c = 0;
  for (const auto& h : he_)
    if (cycle_face_[h.cycle] == face) ++c;
  return c;
}

TrapezoidFloodFill TrapezoidFloodFill::build(std::vector<Segment> segments) {
  for (Segment& s : segments)
    if (lex_less(s.b, s.a)) std::swap(s.a, s.b);
  TrapezoidFloodFill t;
  t.segs_ = segments;
  std::vector<Scalar> xs;
  for (const auto& s : segments) {
    xs.push_back(s.a.x);
    xs.push_back(s.b.x);
  }
  for (size_t i = 0; i < segments.size(); ++i)
    for (size_t j = i + 1; j < segments.size(); ++j)
      if (auto c = proper_crossing(segments[i], segments[j])) xs.push_back(c->x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  t.walls_ = xs;

  // slab s covers (walls[s], walls[s+1]); sentinel slabs 0 and last are the
  // unbounded left/right strips
  const int slabs = static_cast<int>(xs.size()) + 1;
  t.active_.assign(slabs, {});
  for (int s = 1; s + 1 < slabs; ++s) {
    const Scalar mx = (xs[s - 1] + xs[s]) / 2;
    for (size_t i = 0; i < segments.size(); ++i)
      if (segments[i].a.x < mx && mx < segments[i].b.x)
        t.active_[s].push_back(static_cast<int>(i));
    std::sort(t.active_[s].begin(), t.active_[s].end(), [&](int i, int j) {
      return seg_y_at(segments[i], mx) < seg_y_at(segments[j], mx);
    });
  }

  // union-find over (slab, gap)
  std::vector<int> offset(slabs + 1, 0);
  for (int s = 0; s < slabs; ++s)
    offset[s + 1] = offset[s] + static_cast<int>(t.active_[s].size()) + 1;
  std::vector<int> parent(offset[slabs]);
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  for (int s = 0; s + 1 < slabs; ++s) {
    const Scalar w = xs[s];
    const auto& L = t.active_[s];
    const auto& R = t.active_[s + 1];
    // gap intervals at the wall; overlap must have positive length
    auto lo_of = [&](const std::vector<int>& A, int g) -> std::optional<Scalar> {
      if (g == 0) return std::nullopt;  // -inf
      return seg_y_at(segments[A[g - 1]], w);
    };
    auto hi_of = [&](const std::vector<int>& A, int g) -> std::optional<Scalar> {
      if (g == static_cast<int>(A.size())) return std::nullopt;  // +inf
      return seg_y_at(segments[A[g]], w);
    };
    for (int g = 0; g <= static_cast<int>(L.size()); ++g)
      for (int g2 = 0; g2 <= static_cast<int>(R.size()); ++g2) {
        auto lo1 = lo_of(L, g), hi1 = hi_of(L, g);
        auto lo2 = lo_of(R, g2), hi2 = hi_of(R, g2);
        std::optional<Scalar> lo = lo1;
        if (lo2 && (!lo || *lo2 > *lo)) lo = lo2;
        std::optional<Scalar> hi = hi1;
        if (hi2 && (!hi || *hi2 < *hi)) hi = hi2;
        const bool positive = (!lo || !hi) ? true : (*lo < *hi);
        if (positive) unite(offset[s] + g, offset[s + 1] + g2);
      }
  }

  // compress roots; face 0 = the component of the far left gap
  std::map<int, int> root_id;
  const int outer_root = find(0);
  root_id[outer_root] = 0;
  t.trap_face_.assign(slabs, {});
  for (int s = 0; s < slabs; ++s) {
    t.trap_face_[s].resize(t.active_[s].size() + 1);
    for (int g = 0; g <= static_cast<int>(t.active_[s].size()); ++g) {
      const int r = find(offset[s] + g);
      auto [it, fresh] = root_id.emplace(r, static_cast<int>(root_id.size()));
      t.trap_face_[s][g] = it->second;
    }
  }
  t.components_ = static_cast<int>(root_id.size());
  return t;
}

int TrapezoidFloodFill::face_of(const Point& p) const {
  for (const auto& s : segs_)
    if (point_on_segment(p, s)) fail(ErrorCode::DegenerateInput, "query point on a segment");
  int s = static_cast<int>(std::upper_bound(walls_.begin(), walls_.end(), p.x) - walls_.begin());
  // p.x == wall: the right slab's actives evaluated at p.x still bracket p
  int g = 0;
  for (int idx : active_[s]) {
    const Scalar y = seg_y_at(segs_[idx], p.x);
    if (y < p.y) ++g;
  }
  return trap_face_[s][g];
}

std::vector<SegmentFaceHit> segment_faces_naive(const std::vector<Segment>& segments,
                                                const std::vector<Point>& points) {
  SegmentArrangement sa = SegmentArrangement::build(segments);
  std::map<int, int> hits;
  for (const Point& p : points) ++hits[sa.face_of(p)];
  std::vector<SegmentFaceHit> out;
  for (auto [f, c] : hits) out.push_back({f, sa.face_boundary_size(f), c});
  return out;
}

std::vector<Segment> generate_random_segments(int n, uint64_t seed, int64_t coord_range) {
  Rng rng(hash_uint64(seed ^ 0x5e67a3ULL));
  std::vector<Segment> segs;
  std::unordered_set<uint64_t> crossings;
  int guard = 0;
  while (static_cast<int>(segs.size()) < n) {
    if (++guard > 400 * n + 1000) fail(ErrorCode::Internal, "segment generation stalled");
    Point a{Scalar(rng.range(-coord_range, coord_range)),
            Scalar(rng.range(-coord_range, coord_range))};
    Point b{Scalar(rng.range(-coord_range, coord_range)),
            Scalar(rng.range(-coord_range, coord_range))};
    if (a.x == b.x) continue;
    if (lex_less(b, a)) std::swap(a, b);
    const Segment cand{a, b};
    bool bad = false;
    std::vector<uint64_t> mine;
    for (const Segment& s : segs) {
      if (s.a == a || s.a == b || s.b == a || s.b == b || point_on_segment(a, s) ||
          point_on_segment(b, s) || point_on_segment(s.a, cand) || point_on_segment(s.b, cand)) {
        bad = true;
        break;
      }
      if (auto c = proper_crossing(s, cand)) {
        const uint64_t key = hash_point(*c);
        if (crossings.count(key)) {
          bad = true;
          break;
        }
        mine.push_back(key);
      }
    }
    if (bad) continue;
    std::unordered_set<uint64_t> batch(mine.begin(), mine.end());
    if (batch.size() != mine.size()) continue;
    crossings.insert(mine.begin(), mine.end());
    segs.push_back(cand);
  }
  return segs;
}

}  // namespace arrfaces
