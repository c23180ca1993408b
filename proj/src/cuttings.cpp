#include "arrfaces/cuttings.hpp"

#include <algorithm>
#include <cmath>

#include "arrfaces/errors.hpp"

namespace arrfaces {

namespace {

// faces of the arrangement of >= 2 pairwise tested lines over the whole plane
std::vector<ConvexCell> split_plane(const std::vector<Line>& sample) {
  size_t second = 1;
  while (second < sample.size() && sample[second].a == sample[0].a) ++second;
  if (second >= sample.size())
    fail(ErrorCode::DegenerateInput, "cannot subdivide the plane with parallel lines only");
  const Line l1 = sample[0], l2 = sample[second];
  auto apex = intersect_lines(l1, l2);
  Point d1{Scalar(1), l1.a}, d2{Scalar(1), l2.a};
  if (l2.a < l1.a) std::swap(d1, d2);
  std::vector<ConvexCell> cells =
      ConvexCell::wedges(*apex, d1, d2, EdgeTag{}, EdgeTag{});
  std::vector<Line> rest;
  for (size_t i = 0; i < sample.size(); ++i)
    if (i != 0 && i != second) rest.push_back(sample[i]);
  if (rest.empty()) return cells;
  std::vector<ConvexCell> out;
  for (const auto& w : cells)
    for (auto& piece : subdivide_by_lines(w, rest)) out.push_back(std::move(piece));
  return out;
}

}  // namespace

bool HierarchicalCutting::meets_bound(int level, size_t conflict_size) const {
  // |conflict| <= n / rho^level, exactly
  mpz_class lhs(static_cast<unsigned long>(conflict_size));
  for (int i = 0; i < level; ++i) lhs *= params_.rho;
  return lhs <= mpz_class(static_cast<unsigned long>(lines_.size()));
}

HierarchicalCutting HierarchicalCutting::build(const std::vector<Line>& lines, int r, Rng rng,
                                               const Params& params) {
  if (r < 1 || r > std::max<int>(1, static_cast<int>(lines.size())))
    fail(ErrorCode::ParamRange, "cutting parameter r out of range");
  HierarchicalCutting c;
  c.lines_ = lines;
  c.r_ = r;
  c.params_ = params;

  CuttingCell root;
  root.whole_plane = true;
  root.level = 0;
  root.conflict.resize(lines.size());
  for (size_t i = 0; i < lines.size(); ++i) root.conflict[i] = static_cast<int>(i);
  c.levels_.push_back({root});

  int k = 0;
  while (true) {
    mpz_class pw(1);
    for (int i = 0; i < k; ++i) pw *= params.rho;
    if (pw >= r) break;
    ++k;
  }

  for (int level = 1; level <= k; ++level) {
    std::vector<CuttingCell> next;
    auto& prev = c.levels_[level - 1];
    for (int pi = 0; pi < static_cast<int>(prev.size()); ++pi) {
      CuttingCell& parent = prev[pi];
      if (!parent.whole_plane && c.meets_bound(level, parent.conflict.size())) {
        // already fine at this level: descend as its own single child
        CuttingCell child;
        child.cell = parent.cell;
        child.level = level;
        child.parent = pi;
        child.conflict = parent.conflict;
        parent.children.push_back(static_cast<int>(next.size()));
        next.push_back(std::move(child));
        continue;
      }
      // sample, subdivide, verify; redraw on failure
      bool done = false;
      for (int attempt = 0; attempt < params.max_retries && !done; ++attempt) {
        if (attempt > 0) ++c.stats_.retries;
        const int s =
            std::min<int>(static_cast<int>(parent.conflict.size()), params.sample_size);
        std::vector<int> pool = parent.conflict;
        std::vector<Line> sample;
        for (int t = 0; t < s; ++t) {
          const size_t idx = t + rng.below(pool.size() - t);
          std::swap(pool[t], pool[idx]);
          sample.push_back(c.lines_[pool[t]]);
        }
        std::vector<ConvexCell> pieces;
        if (parent.whole_plane) {
          if (s < 2) break;  // handled by the bound check below
          pieces = split_plane(sample);
        } else {
          pieces = subdivide_by_lines(parent.cell, sample);
        }
        std::vector<ConvexCell> tris;
        for (const auto& piece : pieces)
          for (auto& tri : piece.triangulate()) tris.push_back(std::move(tri));
        if (static_cast<int>(tris.size()) > params.child_cap) continue;
        std::vector<std::vector<int>> conflicts(tris.size());
        bool ok = true;
        for (size_t t = 0; t < tris.size() && ok; ++t) {
          for (int lid : parent.conflict)
            if (tris[t].crosses(c.lines_[lid])) conflicts[t].push_back(lid);
          if (!c.meets_bound(level, conflicts[t].size())) ok = false;
        }
        if (!ok) continue;
        for (size_t t = 0; t < tris.size(); ++t) {
          CuttingCell child;
          child.cell = std::move(tris[t]);
          child.level = level;
          child.parent = pi;
          child.conflict = std::move(conflicts[t]);
          parent.children.push_back(static_cast<int>(next.size()));
          next.push_back(std::move(child));
        }
        c.stats_.max_children =
            std::max<int>(c.stats_.max_children, static_cast<int>(tris.size()));
        done = true;
      }
      if (!done)
        fail(ErrorCode::Internal, "cutting cell refinement did not converge at level " +
                                      std::to_string(level));
    }
    c.stats_.level_sizes.push_back(static_cast<int>(next.size()));
    int mx = 0;
    for (const auto& cell : next) mx = std::max<int>(mx, static_cast<int>(cell.conflict.size()));
    c.stats_.level_max_conflict.push_back(mx);
    const double denom = std::pow(static_cast<double>(params.rho), 2.0 * level);
    c.stats_.max_size_constant =
        std::max(c.stats_.max_size_constant, static_cast<double>(next.size()) / denom);
    c.levels_.push_back(std::move(next));
  }
  c.stats_.cells_built = 0;
  for (const auto& lv : c.levels_) c.stats_.cells_built += static_cast<int>(lv.size());
  c.certify();
  return c;
}

void HierarchicalCutting::certify() const {
  for (int level = 1; level <= k(); ++level) {
    for (const auto& cell : levels_[level]) {
      if (!meets_bound(level, cell.conflict.size()))
        fail(ErrorCode::Internal, "conflict bound violated at level " + std::to_string(level));
      if (cell.parent < 0) fail(ErrorCode::Internal, "cell without parent");
    }
  }
  if (points_attached_) {
    for (int level = 0; level <= k(); ++level) {
      int64_t total = 0;
      for (const auto& cell : levels_[level])
        total += static_cast<int64_t>(cell.stored_points.size());
      if (total != n_points_)
        fail(ErrorCode::Internal, "point partition broken at level " + std::to_string(level));
    }
    int64_t total = 0;
    for (const auto& cell : refined_) total += static_cast<int64_t>(cell.stored_points.size());
    if (total != n_points_) fail(ErrorCode::Internal, "point partition broken in the refinement");
  }
}

void HierarchicalCutting::deep_verify_conflicts() const {
  for (int level = 1; level <= k(); ++level) {
    for (const auto& cell : levels_[level]) {
      std::vector<int> fresh;
      for (size_t i = 0; i < lines_.size(); ++i)
        if (cell.cell.crosses(lines_[i])) fresh.push_back(static_cast<int>(i));
      if (fresh != cell.conflict)
        fail(ErrorCode::Internal, "conflict list differs from scratch recount");
    }
  }
}

void HierarchicalCutting::attach_points(const std::vector<Point>& points) {
  for (size_t i = 0; i + 1 < points.size(); ++i)
    if (!lex_less(points[i], points[i + 1]))
      fail(ErrorCode::NotSorted, "attach_points input not lex-sorted");
  n_points_ = static_cast<int64_t>(points.size());

  for (auto& lv : levels_)
    for (auto& cell : lv) {
      cell.stored_points.clear();
      cell.hull = Hull{};
    }
  // locate each point level by level along the child pointers
  for (int pid = 0; pid < static_cast<int>(points.size()); ++pid) {
    const Point& p = points[pid];
    int cur = 0;
    levels_[0][0].stored_points.push_back(pid);
    for (int level = 1; level <= k(); ++level) {
      const auto& kids = levels_[level - 1][cur].children;
      int found = -1;
      for (int kid : kids) {
        if (levels_[level][kid].cell.strictly_contains(p)) {
          found = kid;
          break;
        }
      }
      if (found < 0) {
        for (int kid : kids)
          if (levels_[level][kid].cell.contains(p))
            fail(ErrorCode::PointOnCellEdge, "point " + to_string(p) + " on a cell edge");
        fail(ErrorCode::Internal, "point escaped its parent cell");
      }
      levels_[level][cur = found].stored_points.push_back(pid);
    }
  }

  // hulls per cell on the regular levels
  for (auto& lv : levels_)
    for (auto& cell : lv) {
      if (cell.stored_points.empty()) continue;
      std::vector<Point> pts;
      pts.reserve(cell.stored_points.size());
      for (int pid : cell.stored_points) pts.push_back(points[pid]);
      cell.hull = hull_of_sorted(pts);
    }

  // refinement: split overfull last-level cells into vertical-strip pieces of
  // at most |points|/r^2 stored points each, then into triangles
  refined_.clear();
  const mpz_class n_pts(static_cast<long>(points.size()));
  const mpz_class r2 = mpz_class(r_) * r_;
  auto overfull = [&](size_t count) { return mpz_class(static_cast<long>(count)) * r2 > n_pts; };

  auto& last = levels_[k()];
  for (int ci = 0; ci < static_cast<int>(last.size()); ++ci) {
    CuttingCell& cell = last[ci];
    cell.children.clear();
    if (cell.whole_plane || !overfull(cell.stored_points.size())) {
      CuttingCell copy;
      copy.whole_plane = cell.whole_plane;
      copy.cell = cell.cell;
      copy.level = k() + 1;
      copy.parent = ci;
      copy.conflict = cell.conflict;
      copy.stored_points = cell.stored_points;
      copy.hull = cell.hull;
      if (cell.whole_plane && overfull(cell.stored_points.size()) && r_ > 1)
        fail(ErrorCode::Internal, "overfull plane cell cannot be refined");
      cell.children.push_back(static_cast<int>(refined_.size()));
      refined_.push_back(std::move(copy));
      continue;
    }
    const size_t m_here = cell.stored_points.size();
    // the largest chunk size certain to satisfy chunk * r^2 <= n
    const mpz_class chunk_z = n_pts / r2;
    if (chunk_z == 0)
      fail(ErrorCode::ParamRange, "r^2 exceeds the point count; refinement infeasible");
    const size_t chunk = static_cast<size_t>(chunk_z.get_ui());
    // walls strictly between chunk boundaries, plus walls at strictly
    // interior finite cell vertices so every strip is a trapezoid
    std::vector<Scalar> walls;
    size_t at = chunk, prev = 0;
    while (at < m_here) {
      // slide a boundary inside an equal-x run backwards; chunks only shrink
      size_t cut = at;
      while (cut > prev &&
             points[cell.stored_points[cut - 1]].x == points[cell.stored_points[cut]].x)
        --cut;
      if (cut == prev)
        fail(ErrorCode::DegenerateInput, "equal-x point run longer than a refinement chunk");
      walls.push_back(
          (points[cell.stored_points[cut - 1]].x + points[cell.stored_points[cut]].x) / 2);
      prev = cut;
      at = cut + chunk;
    }
    {
      std::optional<Scalar> xmin, xmax;
      for (const auto& v : cell.cell.cycle()) {
        if (v.at_infinity) continue;
        if (!xmin || v.p.x < *xmin) xmin = v.p.x;
        if (!xmax || v.p.x > *xmax) xmax = v.p.x;
      }
      for (const auto& v : cell.cell.cycle()) {
        if (v.at_infinity || v.p.x == *xmin || v.p.x == *xmax) continue;
        bool hits_point = false;
        for (int pid : cell.stored_points)
          if (points[pid].x == v.p.x) hits_point = true;
        if (!hits_point) walls.push_back(v.p.x);
      }
      std::sort(walls.begin(), walls.end());
      walls.erase(std::unique(walls.begin(), walls.end()), walls.end());
    }
    std::vector<ConvexCell> strips_cells;
    ConvexCell rest = cell.cell;
    for (const Scalar& w : walls) {
      auto left = rest.clip(Constraint::x_at_most(w), EdgeTag{});
      auto right = rest.clip(Constraint::x_at_least(w), EdgeTag{});
      if (!left || !right) fail(ErrorCode::Internal, "refinement wall missed the cell");
      strips_cells.push_back(std::move(*left));
      rest = std::move(*right);
    }
    strips_cells.push_back(std::move(rest));

    for (auto& strip : strips_cells) {
      // triangulate; if a stored point lands on a fan diagonal, retry the fan
      // from other anchors before giving up
      std::vector<ConvexCell> tris;
      bool placed = false;
      for (size_t anchor = 0; anchor < strip.size() && !placed; ++anchor) {
        tris = strip.triangulate(anchor);
        placed = true;
        for (int pid : cell.stored_points) {
          const Point& p = points[pid];
          if (!strip.strictly_contains(p)) continue;
          bool inside_one = false;
          for (const auto& t : tris)
            if (t.strictly_contains(p)) inside_one = true;
          if (!inside_one) {
            placed = false;
            break;
          }
        }
      }
      if (!placed)
        fail(ErrorCode::PointOnCellEdge, "stored point on every candidate fan diagonal");
      for (auto& t : tris) {
        CuttingCell child;
        child.cell = std::move(t);
        child.level = k() + 1;
        child.parent = ci;
        cell.children.push_back(static_cast<int>(refined_.size()));
        refined_.push_back(std::move(child));
      }
    }
    // assign this cell's points among its fresh refinement cells
    for (int pid : cell.stored_points) {
      const Point& p = points[pid];
      bool found = false;
      for (int kid : cell.children) {
        if (refined_[kid].cell.strictly_contains(p)) {
          refined_[kid].stored_points.push_back(pid);
          found = true;
          break;
        }
      }
      if (!found) fail(ErrorCode::PointOnCellEdge, "point " + to_string(p) + " on a cell edge");
    }
  }
  for (auto& cell : refined_) {
    if (cell.stored_points.empty() || !cell.hull.lower.empty()) continue;
    std::vector<Point> pts;
    for (int pid : cell.stored_points) pts.push_back(points[pid]);
    cell.hull = hull_of_sorted(pts);
    for (int lid : last[cell.parent].conflict)
      if (!cell.whole_plane && cell.cell.crosses(lines_[lid])) cell.conflict.push_back(lid);
  }
  stats_.refined_size = static_cast<int>(refined_.size());
  points_attached_ = true;
  certify();
}

HierarchicalCutting::Crossing HierarchicalCutting::crossing_cells(const Line& l) const {
  Crossing out;
  out.per_level.resize(levels_.size());
  out.per_level[0].push_back(0);  // the plane is always crossed
  for (int level = 1; level <= k(); ++level) {
    for (int pid : out.per_level[level - 1]) {
      for (int kid : levels_[level - 1][pid].children)
        if (levels_[level][kid].crossed_by(l)) out.per_level[level].push_back(kid);
    }
  }
  if (points_attached_) {
    for (int pid : out.per_level[k()])
      for (int kid : levels_[k()][pid].children)
        if (refined_[kid].crossed_by(l)) out.refined.push_back(kid);
  }
  return out;
}

std::vector<HierarchicalCutting::CellRef> HierarchicalCutting::side_cells(const Line& l,
                                                                          bool above) const {
  std::vector<CellRef> out;
  std::vector<int> frontier{0};  // crossed cells of the current level
  for (int level = 1; level <= k() + (points_attached_ ? 1 : 0); ++level) {
    std::vector<int> next;
    const bool refine_level = level == k() + 1;
    for (int pid : frontier) {
      const auto& kids = levels_[level - 1][pid].children;
      for (int kid : kids) {
        const CuttingCell& cell = refine_level ? refined_[kid] : levels_[level][kid];
        if (cell.crossed_by(l)) {
          next.push_back(kid);
          continue;
        }
        const LineRelation rel = cell.cell.classify_vs_line(l);
        if ((above && rel == LineRelation::Above) || (!above && rel == LineRelation::Below))
          out.push_back(CellRef{level, kid});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::vector<HierarchicalCutting::CellRef> HierarchicalCutting::above_cells(const Line& l) const {
  return side_cells(l, true);
}

std::vector<HierarchicalCutting::CellRef> HierarchicalCutting::below_cells(const Line& l) const {
  return side_cells(l, false);
}

}  // namespace arrfaces
