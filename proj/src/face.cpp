#include "arrfaces/face.hpp"

#include <algorithm>

#include "arrfaces/errors.hpp"

namespace arrfaces {

namespace {

// The face's x-extent is the interval where g = (lower envelope of the lines
// dual to H-) - (upper envelope of the lines dual to H+) is positive; g is
// concave, so the extent endpoints are its two zeros. The searches below
// locate a zero by a nested descent: the outer one walks H+ pieces of the
// upper envelope, the inner one finds where a fixed line crosses the lower
// envelope of H-. All decisions reduce to slope and crossing-x comparisons.

struct EnvCross {
  Scalar x;
  Point w;  // H- vertex whose dual line carries the crossing
};

Scalar cross_x(const Line& l1, const Line& l2) { return (l2.b - l1.b) / (l1.a - l2.a); }

std::optional<EnvCross> left_cross_with_lower_env(const Line& lam, const ChainHandle& h_minus) {
  std::optional<EnvCross> res;
  auto found = h_minus.try_search([&](const ChainHandle::Probe& pr) {
    const Line mu = dual_of_point(pr.v);
    if (mu.a == lam.a) {
      if (lam.b < mu.b) return ChainHandle::SearchStep::GoRight;
      fail(ErrorCode::Internal, "lambda above the lower envelope everywhere");
    }
    if (mu.a < lam.a) return ChainHandle::SearchStep::GoRight;
    const Scalar c = cross_x(lam, mu);
    // env piece of this vertex spans [x(mu ^ next-dual), x(mu ^ prev-dual)]
    if (pr.next) {
      const Scalar xlo = cross_x(mu, dual_of_point(*pr.next));
      if (c < xlo) return ChainHandle::SearchStep::GoRight;
    }
    if (pr.prev) {
      const Scalar xhi = cross_x(mu, dual_of_point(*pr.prev));
      if (c > xhi) return ChainHandle::SearchStep::GoLeft;
    }
    res = EnvCross{c, pr.v};
    return ChainHandle::SearchStep::Found;
  });
  if (!found) return std::nullopt;  // crossing at x = -infinity
  return res;
}

std::optional<EnvCross> right_cross_with_lower_env(const Line& lam, const ChainHandle& h_minus) {
  std::optional<EnvCross> res;
  auto found = h_minus.try_search([&](const ChainHandle::Probe& pr) {
    const Line mu = dual_of_point(pr.v);
    if (mu.a == lam.a) {
      if (lam.b < mu.b) return ChainHandle::SearchStep::GoLeft;
      fail(ErrorCode::Internal, "lambda above the lower envelope everywhere");
    }
    if (mu.a > lam.a) return ChainHandle::SearchStep::GoLeft;
    const Scalar c = cross_x(lam, mu);
    if (pr.next) {
      const Scalar xlo = cross_x(mu, dual_of_point(*pr.next));
      if (c < xlo) return ChainHandle::SearchStep::GoRight;
    }
    if (pr.prev) {
      const Scalar xhi = cross_x(mu, dual_of_point(*pr.prev));
      if (c > xhi) return ChainHandle::SearchStep::GoLeft;
    }
    res = EnvCross{c, pr.v};
    return ChainHandle::SearchStep::Found;
  });
  if (!found) return std::nullopt;  // crossing at x = +infinity
  return res;
}

struct TangentHit {
  Scalar x;       // primal x of the face's extreme vertex
  Point u, w;     // touching vertices on H+ and H-
};

TangentHit left_tangent(const ChainHandle& h_plus, const ChainHandle& h_minus) {
  TangentHit hit{Scalar(0), {}, {}};
  h_plus.search([&](const ChainHandle::Probe& pr) {
    const Line lam = dual_of_point(pr.v);
    auto cr = left_cross_with_lower_env(lam, h_minus);
    if (!cr) return ChainHandle::SearchStep::GoLeft;
    if (pr.prev) {
      const Scalar zlo = cross_x(dual_of_point(*pr.prev), lam);
      if (cr->x < zlo) return ChainHandle::SearchStep::GoLeft;
    }
    if (pr.next) {
      const Scalar zhi = cross_x(lam, dual_of_point(*pr.next));
      if (cr->x > zhi) return ChainHandle::SearchStep::GoRight;
    }
    hit = TangentHit{cr->x, pr.v, cr->w};
    return ChainHandle::SearchStep::Found;
  });
  return hit;
}

TangentHit right_tangent(const ChainHandle& h_plus, const ChainHandle& h_minus) {
  TangentHit hit{Scalar(0), {}, {}};
  h_plus.search([&](const ChainHandle::Probe& pr) {
    const Line lam = dual_of_point(pr.v);
    auto cr = right_cross_with_lower_env(lam, h_minus);
    if (!cr) return ChainHandle::SearchStep::GoRight;
    if (pr.next) {
      const Scalar zhi = cross_x(lam, dual_of_point(*pr.next));
      if (cr->x > zhi) return ChainHandle::SearchStep::GoRight;
    }
    if (pr.prev) {
      const Scalar zlo = cross_x(dual_of_point(*pr.prev), lam);
      if (cr->x < zlo) return ChainHandle::SearchStep::GoLeft;
    }
    hit = TangentHit{cr->x, pr.v, cr->w};
    return ChainHandle::SearchStep::Found;
  });
  return hit;
}

Point extreme_vertex(const TangentHit& hit) {
  const Line lam = dual_of_point(hit.u);
  return Point{hit.x, lam.y_at(hit.x)};
}

}  // namespace

bool FaceKey::operator==(const FaceKey& o) const {
  return kind == o.kind && a == o.a && b == o.b;
}

bool FaceKey::operator<(const FaceKey& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (lex_less(a, o.a)) return true;
  if (lex_less(o.a, a)) return false;
  return lex_less(b, o.b);
}

FaceKey face_key(const Face& f) {
  if (f.left_vertex) return FaceKey{0, *f.left_vertex, *f.left_vertex};
  if (f.lower_dual.empty())
    return FaceKey{2, f.upper_dual.rightmost(), f.upper_dual.rightmost()};
  if (f.upper_dual.empty())
    return FaceKey{3, f.lower_dual.leftmost(), f.lower_dual.leftmost()};
  // open to the left: identified by the two lines bounding the far-left strip
  return FaceKey{1, f.lower_dual.leftmost(), f.upper_dual.rightmost()};
}

bool faces_equal(const Face& x, const Face& y) {
  if (x.left_vertex.has_value() != y.left_vertex.has_value()) return false;
  if (x.right_vertex.has_value() != y.right_vertex.has_value()) return false;
  if (x.left_vertex && !(*x.left_vertex == *y.left_vertex)) return false;
  if (x.right_vertex && !(*x.right_vertex == *y.right_vertex)) return false;
  if (x.lower_dual.count() != y.lower_dual.count()) return false;
  if (x.upper_dual.count() != y.upper_dual.count()) return false;
  if (x.lower_dual.fingerprint() != y.lower_dual.fingerprint()) return false;
  if (x.upper_dual.fingerprint() != y.upper_dual.fingerprint()) return false;
  const auto lx = x.lower_dual.to_vector(), ly = y.lower_dual.to_vector();
  const auto ux = x.upper_dual.to_vector(), uy = y.upper_dual.to_vector();
  return lx == ly && ux == uy;
}

InnerTangents inner_common_tangents(const ChainHandle& h_plus, const ChainHandle& h_minus) {
  if (h_plus.empty() || h_minus.empty())
    fail(ErrorCode::EmptyHull, "inner common tangents require two nonempty hulls");
  InnerTangents t;
  const bool bounded_left = h_plus.leftmost().x < h_minus.rightmost().x;
  const bool bounded_right = h_plus.rightmost().x > h_minus.leftmost().x;
  if (h_plus.leftmost().x == h_minus.rightmost().x ||
      h_plus.rightmost().x == h_minus.leftmost().x) {
    // the would-be tangent joins two equal-x dual points (a vertical dual
    // line); the face is unbounded there, so no tangent exists on that side
    if (h_plus.count() == 1 && h_minus.count() == 1 &&
        h_plus.leftmost().x == h_minus.leftmost().x)
      fail(ErrorCode::GeneralPosition, "inner tangent of two equal-x points is vertical");
  }
  if (bounded_left) {
    const TangentHit hit = left_tangent(h_plus, h_minus);
    t.left = dual_of_point(extreme_vertex(hit));
    t.left_touch_plus = hit.u;
    t.left_touch_minus = hit.w;
  }
  if (bounded_right) {
    const TangentHit hit = right_tangent(h_plus, h_minus);
    t.right = dual_of_point(extreme_vertex(hit));
    t.right_touch_plus = hit.u;
    t.right_touch_minus = hit.w;
  }
  return t;
}

Face face_from_hulls(const ChainHandle& h_plus, const ChainHandle& h_minus, const Line& p_star) {
  (void)p_star;  // the hulls already encode the query; kept for diagnostics
  Face f;
  if (h_plus.empty() && h_minus.empty())
    fail(ErrorCode::Internal, "face_from_hulls: both hulls empty");
  if (h_plus.empty()) {
    f.upper_dual = h_minus;
    return f;
  }
  if (h_minus.empty()) {
    f.lower_dual = h_plus;
    return f;
  }
  const bool bounded_left = h_plus.leftmost().x < h_minus.rightmost().x;
  const bool bounded_right = h_plus.rightmost().x > h_minus.leftmost().x;

  ChainHandle lower = h_plus, upper = h_minus;
  if (bounded_left) {
    const TangentHit hit = left_tangent(h_plus, h_minus);
    f.left_vertex = extreme_vertex(hit);
    lower = lower.split_lt(hit.u.x).second;   // keep from the touch rightwards
    upper = upper.split_leq(hit.w.x).first;   // touch is the upper portion's right end
  }
  if (bounded_right) {
    const TangentHit hit = right_tangent(h_plus, h_minus);
    f.right_vertex = extreme_vertex(hit);
    lower = lower.split_leq(hit.u.x).first;
    upper = upper.split_lt(hit.w.x).second;
  }
  f.lower_dual = lower;
  f.upper_dual = upper;
  return f;
}

Face face_from_boundary_lines(std::vector<Line> lower_lines, std::vector<Line> upper_lines) {
  auto to_chain = [](std::vector<Line>& lines, ChainSide side) {
    std::vector<Point> pts;
    pts.reserve(lines.size());
    for (const Line& l : lines) pts.push_back(dual_of_line(l));
    std::sort(pts.begin(), pts.end(), lex_less);
    return ChainHandle::build_from_sorted(pts, side);
  };
  Face f;
  f.lower_dual = to_chain(lower_lines, ChainSide::Lower);
  f.upper_dual = to_chain(upper_lines, ChainSide::Upper);
  if (!f.lower_dual.empty() && !f.upper_dual.empty()) {
    if (f.lower_dual.leftmost().x < f.upper_dual.rightmost().x) {
      auto v = intersect_lines(dual_of_point(f.lower_dual.leftmost()),
                               dual_of_point(f.upper_dual.rightmost()));
      if (!v) fail(ErrorCode::Internal, "parallel extreme boundary lines on a bounded side");
      f.left_vertex = *v;
    }
    if (f.lower_dual.rightmost().x > f.upper_dual.leftmost().x) {
      auto v = intersect_lines(dual_of_point(f.lower_dual.rightmost()),
                               dual_of_point(f.upper_dual.leftmost()));
      if (!v) fail(ErrorCode::Internal, "parallel extreme boundary lines on a bounded side");
      f.right_vertex = *v;
    }
  }
  return f;
}

FaceGeometry materialize_face(const Face& f) {
  FaceGeometry g;
  g.left_vertex = f.left_vertex;
  g.right_vertex = f.right_vertex;
  const auto low = f.lower_dual.to_vector();
  const auto up = f.upper_dual.to_vector();
  for (const Point& p : low) g.lower_lines.push_back(dual_of_point(p));
  // upper boundary runs left-to-right with decreasing slope: reverse the chain
  for (auto it = up.rbegin(); it != up.rend(); ++it) g.upper_lines.push_back(dual_of_point(*it));

  if (f.left_vertex) g.lower_vertices.push_back(*f.left_vertex);
  for (size_t i = 0; i + 1 < g.lower_lines.size(); ++i) {
    auto v = intersect_lines(g.lower_lines[i], g.lower_lines[i + 1]);
    if (!v) fail(ErrorCode::Internal, "parallel consecutive boundary lines");
    g.lower_vertices.push_back(*v);
  }
  if (f.right_vertex) g.lower_vertices.push_back(*f.right_vertex);

  if (f.left_vertex) g.upper_vertices.push_back(*f.left_vertex);
  for (size_t i = 0; i + 1 < g.upper_lines.size(); ++i) {
    auto v = intersect_lines(g.upper_lines[i], g.upper_lines[i + 1]);
    if (!v) fail(ErrorCode::Internal, "parallel consecutive boundary lines");
    g.upper_vertices.push_back(*v);
  }
  if (f.right_vertex) g.upper_vertices.push_back(*f.right_vertex);
  return g;
}

std::vector<Point> FaceGeometry::cycle() const {
  std::vector<Point> out = lower_vertices;
  // upper boundary right-to-left; shared extreme vertices appear once
  for (auto it = upper_vertices.rbegin(); it != upper_vertices.rend(); ++it) {
    if (!out.empty() && *it == out.back()) continue;
    if (!out.empty() && *it == out.front()) continue;
    out.push_back(*it);
  }
  return out;
}

Point face_interior_point(const Face& f) {
  if (f.bounded()) {
    const Point& a = *f.left_vertex;
    const Point& b = *f.right_vertex;
    return Point{(a.x + b.x) / 2, (a.y + b.y) / 2};
  }
  // Probe beyond every boundary vertex so the extreme lines are the only
  // binding constraints, then sit between the two boundary envelopes.
  const FaceGeometry g = materialize_face(f);
  std::optional<Scalar> x0;
  auto widen = [&](const Point& v) {
    if (!f.left_vertex) {  // open to the left: go left of everything
      if (!x0 || v.x < *x0) x0 = v.x;
    } else {
      if (!x0 || v.x > *x0) x0 = v.x;
    }
  };
  for (const Point& v : g.lower_vertices) widen(v);
  for (const Point& v : g.upper_vertices) widen(v);
  Scalar px = x0 ? (!f.left_vertex ? *x0 - 1 : *x0 + 1) : Scalar(0);

  std::optional<Scalar> ylo, yhi;
  for (const Line& l : g.lower_lines) {
    const Scalar y = l.y_at(px);
    if (!ylo || y > *ylo) ylo = y;
  }
  for (const Line& l : g.upper_lines) {
    const Scalar y = l.y_at(px);
    if (!yhi || y < *yhi) yhi = y;
  }
  if (ylo && yhi) return Point{px, (*ylo + *yhi) / 2};
  if (ylo) return Point{px, *ylo + 1};
  if (yhi) return Point{px, *yhi - 1};
  fail(ErrorCode::Internal, "face with no boundary lines");
}

}  // namespace arrfaces
