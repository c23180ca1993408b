#include "arrfaces/cell.hpp"

#include <algorithm>
#include <sstream>

#include "arrfaces/errors.hpp"

namespace arrfaces {

Constraint Constraint::above_line(const Line& l) { return Constraint{-l.a, Scalar(1), l.b}; }
Constraint Constraint::below_line(const Line& l) { return Constraint{l.a, Scalar(-1), -l.b}; }
Constraint Constraint::x_at_least(const Scalar& x) { return Constraint{Scalar(1), Scalar(0), x}; }
Constraint Constraint::x_at_most(const Scalar& x) { return Constraint{Scalar(-1), Scalar(0), -x}; }

namespace {

Scalar cross(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }

// Orientation of an ordered triple where entries may sit at infinity.
// Invariant under cyclic rotation, so reduce to a canonical pattern.
int gen_orient(const CellVertex& a, const CellVertex& b, const CellVertex& c) {
  const int inf = int(a.at_infinity) + int(b.at_infinity) + int(c.at_infinity);
  if (inf == 0) return static_cast<int>(orientation(a.p, b.p, c.p));
  if (inf == 1) {
    // rotate so the infinite entry is last: orient(P, Q, inf d) = sign cross(Q-P, d)
    if (a.at_infinity) return gen_orient(b, c, a);
    if (b.at_infinity) return gen_orient(c, a, b);
    return sgn(cross(Point{b.p.x - a.p.x, b.p.y - a.p.y}, c.dir));
  }
  if (inf == 2) {
    // rotate so the finite entry is first: orient(P, inf d1, inf d2) = sign cross(d1, d2)
    if (!a.at_infinity) return sgn(cross(b.dir, c.dir));
    if (!b.at_infinity) return gen_orient(b, c, a);
    return gen_orient(c, a, b);
  }
  fail(ErrorCode::Internal, "orientation of three infinite vertices");
}

// Constraint whose boundary supports the directed edge (anchor, travel dir t),
// interior (left of travel) being the >= 0 side.
Constraint left_of(const Point& anchor, const Point& t) {
  Constraint c{-t.y, t.x, Scalar(0)};
  c.c = c.a * anchor.x + c.b * anchor.y;
  return c;
}

}  // namespace

ConvexCell ConvexCell::bounded(std::vector<Point> pts) {
  if (pts.size() < 3) fail(ErrorCode::DegenerateInput, "bounded cell needs >= 3 points");
  std::vector<CellVertex> cyc;
  cyc.reserve(pts.size());
  for (auto& p : pts) cyc.push_back(CellVertex::finite(std::move(p)));
  return from_cycle(std::move(cyc), {});
}

ConvexCell ConvexCell::from_cycle(std::vector<CellVertex> cycle, std::vector<EdgeTag> tags) {
  ConvexCell c;
  c.cycle_ = std::move(cycle);
  tags.resize(c.cycle_.size());
  c.tags_ = std::move(tags);
  return c;
}

std::vector<ConvexCell> ConvexCell::wedges(const Point& apex, const Point& d1, const Point& d2,
                                           EdgeTag tag1, EdgeTag tag2) {
  if (sgn(cross(d1, d2)) <= 0) fail(ErrorCode::Internal, "wedges: need cross(d1,d2) > 0");
  const Point n1{-d1.x, -d1.y}, n2{-d2.x, -d2.y};
  auto mk = [&](const Point& ea, const Point& eb, EdgeTag ta, EdgeTag tb) {
    std::vector<CellVertex> cyc{CellVertex::finite(apex), CellVertex::infinite(ea),
                                CellVertex::infinite(eb)};
    // edges: apex->ea ray (ta), arc (untagged), eb->apex ray (tb)
    return from_cycle(std::move(cyc), {ta, EdgeTag{}, tb});
  };
  return {mk(d1, d2, tag1, tag2), mk(d2, n1, tag2, tag1), mk(n1, n2, tag1, tag2),
          mk(n2, d1, tag2, tag1)};
}

bool ConvexCell::is_bounded() const {
  for (const auto& v : cycle_)
    if (v.at_infinity) return false;
  return true;
}

bool ConvexCell::unbounded_towards_negative_x() const {
  for (const auto& v : cycle_)
    if (v.at_infinity && sgn(v.dir.x) < 0) return true;
  return false;
}

bool ConvexCell::unbounded_towards_positive_x() const {
  for (const auto& v : cycle_)
    if (v.at_infinity && sgn(v.dir.x) > 0) return true;
  return false;
}

LineRelation ConvexCell::classify_vs_line(const Line& l) const {
  bool some_above = false, some_below = false;
  for (const auto& v : cycle_) {
    int s;
    if (v.at_infinity) {
      s = sgn(v.dir.y - l.a * v.dir.x);
    } else {
      s = static_cast<int>(side_of_line(l, v.p));
    }
    if (s > 0) some_above = true;
    if (s < 0) some_below = true;
    if (some_above && some_below) return LineRelation::Crossing;
  }
  return some_above ? LineRelation::Above : LineRelation::Below;
}

bool ConvexCell::contains(const Point& q) const {
  const size_t k = cycle_.size();
  for (size_t i = 0; i < k; ++i) {
    const CellVertex& u = cycle_[i];
    const CellVertex& w = cycle_[(i + 1) % k];
    if (u.at_infinity && w.at_infinity) continue;  // arc at infinity
    Constraint c = u.at_infinity   ? left_of(w.p, Point{-u.dir.x, -u.dir.y})
                   : w.at_infinity ? left_of(u.p, w.dir)
                                   : left_of(u.p, Point{w.p.x - u.p.x, w.p.y - u.p.y});
    if (sgn(c.eval(q)) < 0) return false;
  }
  return true;
}

bool ConvexCell::strictly_contains(const Point& q) const {
  const size_t k = cycle_.size();
  for (size_t i = 0; i < k; ++i) {
    const CellVertex& u = cycle_[i];
    const CellVertex& w = cycle_[(i + 1) % k];
    if (u.at_infinity && w.at_infinity) continue;
    Constraint c = u.at_infinity   ? left_of(w.p, Point{-u.dir.x, -u.dir.y})
                   : w.at_infinity ? left_of(u.p, w.dir)
                                   : left_of(u.p, Point{w.p.x - u.p.x, w.p.y - u.p.y});
    if (sgn(c.eval(q)) <= 0) return false;
  }
  return true;
}

bool ConvexCell::on_boundary(const Point& q) const { return contains(q) && !strictly_contains(q); }

std::optional<ConvexCell> ConvexCell::clip(const Constraint& c, EdgeTag new_tag) const {
  const size_t k = cycle_.size();
  std::vector<int> sign(k);
  bool any_pos = false, any_neg = false;
  for (size_t i = 0; i < k; ++i) {
    sign[i] = cycle_[i].at_infinity ? sgn(c.eval_dir(cycle_[i].dir)) : sgn(c.eval(cycle_[i].p));
    any_pos |= sign[i] > 0;
    any_neg |= sign[i] < 0;
  }
  if (!any_neg) return *this;  // untouched (possibly tangent)
  if (!any_pos) return std::nullopt;

  std::vector<CellVertex> out;
  std::vector<EdgeTag> out_tags;
  out.reserve(k + 2);
  for (size_t i = 0; i < k; ++i) {
    const size_t j = (i + 1) % k;
    const CellVertex& u = cycle_[i];
    const CellVertex& w = cycle_[j];
    if (sign[i] >= 0) {
      out.push_back(u);
      out_tags.push_back(sign[i] == 0 && sign[j] < 0 ? new_tag : tags_[i]);
    }
    if ((sign[i] > 0 && sign[j] < 0) || (sign[i] < 0 && sign[j] > 0)) {
      CellVertex x;
      if (!u.at_infinity && !w.at_infinity) {
        const Scalar fu = c.eval(u.p), fw = c.eval(w.p);
        const Scalar t = fu / (fu - fw);
        x = CellVertex::finite({u.p.x + t * (w.p.x - u.p.x), u.p.y + t * (w.p.y - u.p.y)});
      } else if (!u.at_infinity) {  // finite -> ray out along w.dir
        const Scalar s = -c.eval(u.p) / c.eval_dir(w.dir);
        x = CellVertex::finite({u.p.x + s * w.dir.x, u.p.y + s * w.dir.y});
      } else if (!w.at_infinity) {  // ray in along u.dir -> finite
        const Scalar s = -c.eval(w.p) / c.eval_dir(u.dir);
        x = CellVertex::finite({w.p.x + s * u.dir.x, w.p.y + s * u.dir.y});
      } else {
        // the arc at infinity crosses the constraint boundary: a new direction
        // along the boundary line, inside the cone from u.dir to w.dir
        Point e{c.b, -c.a};
        if (!(sgn(cross(u.dir, e)) >= 0 && sgn(cross(e, w.dir)) >= 0)) e = Point{-c.b, c.a};
        if (!(sgn(cross(u.dir, e)) >= 0 && sgn(cross(e, w.dir)) >= 0))
          fail(ErrorCode::Internal, "clip: no boundary direction inside the arc");
        x = CellVertex::infinite(e);
      }
      out.push_back(std::move(x));
      out_tags.push_back(sign[i] > 0 ? new_tag : tags_[i]);
    }
  }

  ConvexCell res = from_cycle(std::move(out), std::move(out_tags));
  if (res.cycle_.size() < 3 || !res.has_interior()) return std::nullopt;
  return res;
}

std::optional<ConvexCell> ConvexCell::clip_above(const Line& l, EdgeTag new_tag) const {
  return clip(Constraint::above_line(l), new_tag);
}

std::optional<ConvexCell> ConvexCell::clip_below(const Line& l, EdgeTag new_tag) const {
  return clip(Constraint::below_line(l), new_tag);
}

std::vector<ConvexCell> ConvexCell::triangulate(size_t anchor_offset) const {
  const size_t k = cycle_.size();
  if (k == 3) return {*this};
  // fan from the lex-lowest finite vertex (or a rotated alternative)
  size_t b = k;
  for (size_t i = 0; i < k; ++i) {
    if (cycle_[i].at_infinity) continue;
    if (b == k || lex_less(cycle_[i].p, cycle_[b].p)) b = i;
  }
  if (b == k) fail(ErrorCode::Internal, "triangulate: no finite vertex");
  for (size_t step = 0; step < anchor_offset; ++step) {
    size_t nb = b;
    do {
      nb = (nb + 1) % k;
    } while (cycle_[nb].at_infinity && nb != b);
    b = nb;
  }

  std::vector<ConvexCell> result;
  for (size_t t = 1; t + 1 < k; ++t) {
    const size_t i = (b + t) % k, j = (b + t + 1) % k;
    if (gen_orient(cycle_[b], cycle_[i], cycle_[j]) == 0) continue;  // zero-area sliver
    EdgeTag first = (t == 1) ? tags_[b] : EdgeTag{};
    EdgeTag last = (t + 2 == k) ? tags_[j == 0 ? k - 1 : j - 1] : EdgeTag{};
    result.push_back(
        from_cycle({cycle_[b], cycle_[i], cycle_[j]}, {first, tags_[i], last}));
  }
  return result;
}

Point ConvexCell::interior_point() const {
  Scalar sx(0), sy(0);
  long nf = 0;
  for (const auto& v : cycle_) {
    if (!v.at_infinity) {
      sx += v.p.x;
      sy += v.p.y;
      ++nf;
    }
  }
  if (nf == 0) fail(ErrorCode::Internal, "interior_point: no finite vertex");
  Point q{sx / nf, sy / nf};
  for (const auto& v : cycle_) {
    if (v.at_infinity) {
      q.x += v.dir.x;
      q.y += v.dir.y;
    }
  }
  if (!strictly_contains(q)) fail(ErrorCode::Internal, "interior_point fell on the boundary");
  return q;
}

bool ConvexCell::has_interior() const {
  const size_t k = cycle_.size();
  if (k < 3) return false;
  for (size_t i = 0; i < k; ++i)
    if (gen_orient(cycle_[i], cycle_[(i + 1) % k], cycle_[(i + 2) % k]) > 0) return true;
  return false;
}

void ConvexCell::validate() const {
  const size_t k = cycle_.size();
  if (k < 3) fail(ErrorCode::Internal, "cell with fewer than 3 cycle entries");
  int dirs = 0;
  for (const auto& v : cycle_) dirs += v.at_infinity ? 1 : 0;
  if (dirs > 2) fail(ErrorCode::Internal, "cell with more than 2 direction vertices");
  if (dirs == 2) {
    bool adjacent = false;
    for (size_t i = 0; i < k; ++i)
      if (cycle_[i].at_infinity && cycle_[(i + 1) % k].at_infinity) adjacent = true;
    if (!adjacent) fail(ErrorCode::Internal, "direction vertices not contiguous");
  }
  for (size_t i = 0; i < k; ++i)
    if (gen_orient(cycle_[i], cycle_[(i + 1) % k], cycle_[(i + 2) % k]) < 0)
      fail(ErrorCode::Internal, "cell cycle not counterclockwise-convex");
  if (!has_interior()) fail(ErrorCode::Internal, "cell has empty interior");
  if (tags_.size() != k) fail(ErrorCode::Internal, "edge tag count mismatch");
}

std::string ConvexCell::describe() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < cycle_.size(); ++i) {
    if (i) os << ", ";
    const auto& v = cycle_[i];
    if (v.at_infinity)
      os << "inf" << to_string(v.dir);
    else
      os << to_string(v.p);
  }
  os << "]";
  return os.str();
}

std::vector<ConvexCell> subdivide_by_lines(const ConvexCell& start,
                                           const std::vector<Line>& lines) {
  std::vector<ConvexCell> cells{start};
  std::vector<ConvexCell> next;
  for (size_t id = 0; id < lines.size(); ++id) {
    const Line& l = lines[id];
    const EdgeTag tag{EdgeTag::InputLine, static_cast<int32_t>(id)};
    next.clear();
    for (auto& cell : cells) {
      if (cell.crosses(l)) {
        if (auto up = cell.clip_above(l, tag)) next.push_back(std::move(*up));
        if (auto dn = cell.clip_below(l, tag)) next.push_back(std::move(*dn));
      } else {
        next.push_back(std::move(cell));
      }
    }
    cells.swap(next);
  }
  return cells;
}

}  // namespace arrfaces
