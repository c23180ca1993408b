#include "arrfaces/arrangement.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "arrfaces/errors.hpp"

namespace arrfaces {

Scalar arrangement_box_halfwidth(const std::vector<Line>& lines, const std::vector<Point>& cover) {
  // Every pairwise crossing has |x| <= 2*maxB / minDa with minDa the smallest
  // slope gap, and |y| <= maxA*|x| + maxB.
  Scalar m(4);
  Scalar max_a(0), max_b(0);
  for (const Line& l : lines) {
    max_a = std::max(max_a, abs(l.a));
    max_b = std::max(max_b, abs(l.b));
  }
  if (!lines.empty()) {
    std::vector<Scalar> slopes;
    slopes.reserve(lines.size());
    for (const Line& l : lines) slopes.push_back(l.a);
    std::sort(slopes.begin(), slopes.end());
    std::optional<Scalar> min_da;
    for (size_t i = 0; i + 1 < slopes.size(); ++i) {
      if (slopes[i] == slopes[i + 1]) continue;
      const Scalar d = slopes[i + 1] - slopes[i];
      if (!min_da || d < *min_da) min_da = d;
    }
    Scalar max_x(1);
    if (min_da) max_x = std::max(Scalar(1), 2 * max_b / *min_da);
    m = std::max(m, max_x + max_a * max_x + max_b + 1);
  }
  for (const Point& p : cover) m = std::max(m, std::max(abs(p.x), abs(p.y)) + 1);
  // nudge until no line passes through a box corner
  bool moved = true;
  while (moved) {
    moved = false;
    for (const Line& l : lines) {
      if (abs(l.y_at(m)) == m || abs(l.y_at(-m)) == m) {
        m += 1;
        moved = true;
      }
    }
  }
  return m;
}

namespace detail {

constexpr int kBoxLeft = 0, kBoxBottom = 1, kBoxRight = 2, kBoxTop = 3;

class ArrangementBuilder {
 public:
  explicit ArrangementBuilder(ArrangementDCEL& a) : a_(a) {}

  void run(const std::vector<Line>& lines, const std::vector<Point>& cover) {
    a_.lines_ = lines;
    a_.box_ = arrangement_box_halfwidth(lines, cover);
    init_box();
    for (int id = 0; id < static_cast<int>(lines.size()); ++id) insert_line(id);
    a_.build_locator();
  }

 private:
  ArrangementDCEL& a_;
  // inside (downward) pieces of the left box side, keyed by origin (upper) y
  std::map<Scalar, int> left_pieces_;

  int box_line(int side) const { return a_.n_lines() + side; }

  int new_vertex(const Point& p) {
    a_.vx_.push_back(p);
    return static_cast<int>(a_.vx_.size()) - 1;
  }

  int new_pair() {
    a_.he_.emplace_back();
    a_.he_.emplace_back();
    return static_cast<int>(a_.he_.size()) - 2;
  }

  static int twin(int h) { return h ^ 1; }
  ArrangementDCEL::HalfEdge& he(int h) { return a_.he_[h]; }

  void init_box() {
    const Scalar& m = a_.box_;
    const Point c[4] = {{-m, -m}, {m, -m}, {m, m}, {-m, m}};
    int v[4];
    for (int i = 0; i < 4; ++i) v[i] = new_vertex(c[i]);
    const int side_of_edge[4] = {kBoxBottom, kBoxRight, kBoxTop, kBoxLeft};
    int h[4];
    for (int i = 0; i < 4; ++i) h[i] = new_pair();
    for (int i = 0; i < 4; ++i) {
      he(h[i]) = ArrangementDCEL::HalfEdge{v[i], h[(i + 1) % 4], h[(i + 3) % 4], 0,
                                           box_line(side_of_edge[i])};
      he(twin(h[i])) = ArrangementDCEL::HalfEdge{v[(i + 1) % 4], twin(h[(i + 3) % 4]),
                                                 twin(h[(i + 1) % 4]), 1,
                                                 box_line(side_of_edge[i])};
    }
    a_.face_edge_ = {h[0], twin(h[0])};
    a_.outer_face_ = 1;
    left_pieces_[a_.vx_[v[3]].y] = h[3];  // c3 -> c0, downward
  }

  // h: a->b becomes a->v plus v->b; twins follow. Returns the v->b half-edge.
  int split_edge(int h, int v) {
    const int t = twin(h);
    const int h2 = new_pair();
    const int t2 = twin(h2);
    he(h2) = ArrangementDCEL::HalfEdge{v, he(h).next, h, he(h).face, he(h).line};
    he(t2) = ArrangementDCEL::HalfEdge{he(t).origin, t, he(t).prev, he(t).face, he(t).line};
    he(he(h).next).prev = h2;
    he(h).next = h2;
    he(he(t).prev).next = t2;
    he(t).prev = t2;
    he(t).origin = v;
    return h2;
  }

  int side_sign(const Line& l, int v) const {
    return static_cast<int>(side_of_line(l, a_.vx_[v]));
  }

  Point exit_point(int e, const Line& l) {
    const int lid = he(e).line;
    if (lid < a_.n_lines()) {
      auto c = intersect_lines(l, a_.lines_[lid]);
      if (!c) fail(ErrorCode::Internal, "crossed edge parallel to the inserted line");
      return *c;
    }
    const Scalar& m = a_.box_;
    switch (lid - a_.n_lines()) {
      case kBoxBottom: return Point{(-m - l.b) / l.a, -m};
      case kBoxTop: return Point{(m - l.b) / l.a, m};
      case kBoxRight: return Point{m, l.y_at(m)};
      default: fail(ErrorCode::Internal, "line exits through the left box side");
    }
  }

  void insert_line(int id) {
    const Line& l = a_.lines_[id];
    const Scalar entry_y = l.y_at(-a_.box_);
    auto it = left_pieces_.lower_bound(entry_y);
    if (it == left_pieces_.end()) fail(ErrorCode::Internal, "entry above the box");
    const int entry_h = it->second;
    const int v_in0 = new_vertex(Point{-a_.box_, entry_y});
    const int piece2 = split_edge(entry_h, v_in0);  // v_in0 -> old dest, downward
    left_pieces_[entry_y] = piece2;                 // entry_h keeps its old key
    int incoming = entry_h;
    while (true) {
      int e = -1;
      for (int h = he(incoming).next; h != incoming; h = he(h).next) {
        const int s1 = side_sign(l, he(h).origin);
        const int s2 = side_sign(l, he(he(h).next).origin);
        if (s1 * s2 < 0) {
          e = h;
          break;
        }
      }
      if (e < 0) fail(ErrorCode::Internal, "zone walk found no exit edge");
      const int v_out = new_vertex(exit_point(e, l));
      if (he(e).line < a_.n_lines()) ++a_.crossing_vertices_;
      const int e2 = split_edge(e, v_out);
      split_face(incoming, e, e2, id);
      if (he(e).line >= a_.n_lines()) break;  // reached the box boundary
      incoming = twin(e2);
    }
  }

  // Splits face(incoming) with the chord dest(incoming) -> origin(e2).
  void split_face(int incoming, int e, int e2, int line_id) {
    const int h2 = he(incoming).next;  // outgoing piece at the entry vertex
    const int d = new_pair();
    const int d2 = twin(d);
    const int v_in = he(h2).origin;
    const int v_out = he(e2).origin;
    const int old_face = he(incoming).face;
    he(d) = ArrangementDCEL::HalfEdge{v_in, e2, incoming, -1, line_id};
    he(d2) = ArrangementDCEL::HalfEdge{v_out, h2, e, old_face, line_id};
    he(incoming).next = d;
    he(e2).prev = d;
    he(e).next = d2;
    he(h2).prev = d2;
    a_.face_edge_.push_back(d);
    const int nf = static_cast<int>(a_.face_edge_.size()) - 1;
    for (int h = d;;) {
      he(h).face = nf;
      h = he(h).next;
      if (h == d) break;
    }
    a_.face_edge_[old_face] = d2;
  }
};

}  // namespace detail

ArrangementDCEL ArrangementDCEL::build(const std::vector<Line>& lines,
                                       const std::vector<Point>& cover) {
  ArrangementDCEL a;
  detail::ArrangementBuilder b(a);
  b.run(lines, cover);
  return a;
}

ArrangementDCEL build_arrangement(const std::vector<Line>& lines, const std::vector<Point>& cover) {
  return ArrangementDCEL::build(lines, cover);
}

int64_t ArrangementDCEL::edge_count() const {
  int64_t c = 0;
  for (const auto& h : he_)
    if (h.line < n_lines()) ++c;
  return c / 2;
}

int64_t ArrangementDCEL::face_count() const {
  return static_cast<int64_t>(face_edge_.size()) - 1;  // all but the outer face
}

void ArrangementDCEL::build_locator() {
  loc_.assign(lines_.size() + 1, {});
  for (int h = 0; h < static_cast<int>(he_.size()); ++h) {
    const auto& e = he_[h];
    if (e.face == outer_face_) continue;
    const bool box_bottom = e.line == n_lines() + detail::kBoxBottom;
    if (e.line >= n_lines() && !box_bottom) continue;
    const Point& o = vx_[e.origin];
    const Point& d = vx_[he_[e.next].origin];
    if (!(o.x < d.x)) continue;  // keep rightward pieces: their face is above
    const int slot = box_bottom ? static_cast<int>(lines_.size()) : e.line;
    loc_[slot].push_back({o.x, h});
  }
  for (auto& v : loc_)
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

int ArrangementDCEL::dcel_face_of(const Point& p) const {
  if (!(abs(p.x) < box_ && abs(p.y) < box_))
    fail(ErrorCode::ParamRange, "query point outside the arrangement box");
  int best = -1;
  std::optional<Scalar> best_y;
  for (int i = 0; i < n_lines(); ++i) {
    const Scalar y = lines_[i].y_at(p.x);
    if (y == p.y) fail(ErrorCode::PointOnLine, "query point on line " + std::to_string(i));
    if (y < p.y && (!best_y || y > *best_y)) {
      best_y = y;
      best = i;
    }
  }
  const int slot = best >= 0 ? best : static_cast<int>(lines_.size());
  const auto& v = loc_[slot];
  if (v.empty()) fail(ErrorCode::Internal, "locator slot empty");
  auto it = std::upper_bound(v.begin(), v.end(), p.x,
                             [](const Scalar& x, const auto& e) { return x < e.first; });
  if (it == v.begin()) fail(ErrorCode::Internal, "locator found no piece left of query");
  return he_[std::prev(it)->second].face;
}

Face ArrangementDCEL::face_record(int face) const {
  std::vector<Line> lower, upper;
  std::set<int> seen_lower, seen_upper;
  const int start = face_edge_[face];
  for (int h = start;;) {
    const auto& e = he_[h];
    if (e.line < n_lines()) {
      const Point& o = vx_[e.origin];
      const Point& d = vx_[he_[e.next].origin];
      if (o.x < d.x) {  // face above the carrier: bounds it from below
        if (seen_lower.insert(e.line).second) lower.push_back(lines_[e.line]);
      } else {
        if (seen_upper.insert(e.line).second) upper.push_back(lines_[e.line]);
      }
    }
    h = e.next;
    if (h == start) break;
  }
  return face_from_boundary_lines(std::move(lower), std::move(upper));
}

Face ArrangementDCEL::face_of(const Point& p) const { return face_record(dcel_face_of(p)); }

std::map<FaceKey, Face> ArrangementDCEL::all_faces() const {
  std::map<FaceKey, Face> out;
  for (int f = 0; f < static_cast<int>(face_edge_.size()); ++f) {
    if (f == outer_face_) continue;
    Face rec = face_record(f);
    out.emplace(face_key(rec), std::move(rec));
  }
  return out;
}

ArrangementDCEL::Stats ArrangementDCEL::stats() const {
  Stats s;
  s.intersections = crossing_vertices_;
  for (int f = 0; f < static_cast<int>(face_edge_.size()); ++f) {
    if (f == outer_face_) continue;
    int64_t sz = 0;
    const int start = face_edge_[f];
    for (int h = start;;) {
      if (he_[h].line < n_lines()) ++sz;
      h = he_[h].next;
      if (h == start) break;
    }
    s.face_sizes.push_back(sz);
  }
  return s;
}

void ArrangementDCEL::validate() const {
  for (int h = 0; h < static_cast<int>(he_.size()); ++h) {
    if (he_[he_[h].next].prev != h || he_[he_[h].prev].next != h)
      fail(ErrorCode::Internal, "half-edge next/prev mismatch");
    if (he_[h].face != he_[he_[h].next].face)
      fail(ErrorCode::Internal, "face mismatch along cycle");
    if (he_[h ^ 1].origin != he_[he_[h].next].origin)
      fail(ErrorCode::Internal, "twin origin mismatch");
  }
  const int64_t v = static_cast<int64_t>(vx_.size());
  const int64_t e = static_cast<int64_t>(he_.size()) / 2;
  const int64_t f = static_cast<int64_t>(face_edge_.size()) + 1;  // plus the infinite face
  if (v - e + f != 2) fail(ErrorCode::Internal, "Euler relation violated");
}

std::map<FaceKey, Face> many_faces_naive(const std::vector<Line>& lines,
                                         const std::vector<Point>& points) {
  ArrangementDCEL arr = build_arrangement(lines, points);
  std::map<FaceKey, Face> out;
  for (const Point& p : points) {
    Face rec = arr.face_of(p);
    out.emplace(face_key(rec), std::move(rec));
  }
  return out;
}

Face face_of_by_clipping(const std::vector<Line>& lines, const Point& p) {
  const Scalar m = arrangement_box_halfwidth(lines, {p});
  ConvexCell cell = ConvexCell::bounded({{-m, -m}, {m, -m}, {m, m}, {-m, m}});
  std::vector<bool> above(lines.size());
  for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
    const Side s = side_of_line(lines[i], p);
    if (s == Side::On) fail(ErrorCode::PointOnLine, "query point on line " + std::to_string(i));
    above[i] = s == Side::Above;
    const EdgeTag tag{EdgeTag::InputLine, i};
    auto clipped =
        above[i] ? cell.clip_above(lines[i], tag) : cell.clip_below(lines[i], tag);
    if (!clipped) fail(ErrorCode::Internal, "face clipped away around its own point");
    cell = std::move(*clipped);
  }
  std::vector<Line> lower, upper;
  std::set<int> seen;
  for (size_t i = 0; i < cell.size(); ++i) {
    const EdgeTag& t = cell.edge_tag(i);
    if (t.kind != EdgeTag::InputLine || !seen.insert(t.id).second) continue;
    if (above[t.id])
      lower.push_back(lines[t.id]);
    else
      upper.push_back(lines[t.id]);
  }
  return face_from_boundary_lines(std::move(lower), std::move(upper));
}

std::vector<ZonePortion> zone_of_triangle(const std::vector<Line>& lines, const ConvexCell& cell) {
  // retag the host boundary so window edges stay recognizable after splitting
  std::vector<EdgeTag> tags(cell.size(), EdgeTag{EdgeTag::CellBoundary, 0});
  ConvexCell host = ConvexCell::from_cycle(cell.cycle(), std::move(tags));
  std::vector<ZonePortion> out;
  for (auto& piece : subdivide_by_lines(host, lines)) {
    bool touches = false;
    for (size_t i = 0; i < piece.size(); ++i)
      if (piece.edge_tag(i).kind == EdgeTag::CellBoundary) touches = true;
    if (!touches) continue;
    ZonePortion zp;
    std::set<int> lower_seen, upper_seen;
    for (size_t i = 0; i < piece.size(); ++i) {
      const EdgeTag& t = piece.edge_tag(i);
      if (t.kind != EdgeTag::InputLine) continue;
      if (piece.classify_vs_line(lines[t.id]) == LineRelation::Above) {
        if (lower_seen.insert(t.id).second) zp.lower_lines.push_back(t.id);
      } else {
        if (upper_seen.insert(t.id).second) zp.upper_lines.push_back(t.id);
      }
    }
    zp.region = std::move(piece);
    out.push_back(std::move(zp));
  }
  return out;
}

}  // namespace arrfaces
