#pragma once

#include <optional>

#include "arrfaces/cell.hpp"
#include "arrfaces/hulls.hpp"
#include "arrfaces/rng.hpp"

namespace arrfaces {

struct CuttingCell {
  bool whole_plane = false;  // level 0 only
  Triangle cell;             // undefined when whole_plane
  int level = 0;
  int parent = -1;                 // index within the previous level
  std::vector<int> children;       // indices within the next level (or the refinement)
  std::vector<int> conflict;       // ids of lines crossing the open cell
  std::vector<int> stored_points;  // attached point ids, in lex order
  Hull hull;                       // hull of the stored points (empty chains when none)

  bool crossed_by(const Line& l) const { return whole_plane || cell.crosses(l); }
};

struct CuttingStats {
  std::vector<int> level_sizes;        // Xi_1 .. Xi_k
  std::vector<int> level_max_conflict; // measured
  int refined_size = 0;
  int64_t retries = 0;
  int cells_built = 0;
  int max_children = 0;
  double max_size_constant = 0;  // max over levels of size / rho^{2i}
};

// Hierarchical (1/r)-cutting built by per-cell random sampling with
// verification: a cell's subdivision is rejected and redrawn until every
// child meets the level's conflict bound and the child-count cap, so the
// returned structure is always certified. Xi_0 is the whole plane; level k
// satisfies rho^{k-1} < r <= rho^k.
class HierarchicalCutting {
 public:
  struct Params {
    int rho = 2;
    int child_cap = 32;
    int sample_size = 4;
    int max_retries = 200;
  };

  static HierarchicalCutting build(const std::vector<Line>& lines, int r, Rng rng,
                                   const Params& params = {});  // DEGENERATE_INPUT

  int k() const { return static_cast<int>(levels_.size()) - 1; }
  int rho() const { return params_.rho; }
  int r() const { return r_; }
  const std::vector<Line>& lines() const { return lines_; }
  const std::vector<CuttingCell>& level(int i) const { return levels_[i]; }
  const std::vector<CuttingCell>& refined() const { return refined_; }
  bool has_refinement() const { return points_attached_; }
  const CuttingStats& stats() const { return stats_; }

  // level-i conflict bound: |conflict| * rho^i <= n
  bool meets_bound(int level, size_t conflict_size) const;

  // Certification pass: every cell of every level satisfies its conflict
  // bound (lists are exact by parent filtering; this re-asserts the counts),
  // and when points are attached, each level stores every point exactly once.
  void certify() const;  // throws Error(Internal) on violation

  // Test-only deep check: recompute every conflict list against all lines.
  void deep_verify_conflicts() const;

  // Populates stored points and hulls on every level and builds the
  // refinement Xi_{k+1} in which each cell holds at most |points|/r^2 points.
  // Points must be lex-sorted. Errors: NOT_SORTED, POINT_ON_CELL_EDGE.
  void attach_points(const std::vector<Point>& points);

  struct CellRef {
    int level;  // k()+1 refers to the refinement
    int index;
  };

  struct Crossing {
    std::vector<std::vector<int>> per_level;  // crossed cell ids, level 0..k
    std::vector<int> refined;                 // crossed refinement cells
  };
  Crossing crossing_cells(const Line& l) const;

  // Cells entirely above l whose parent is crossed (any level 1..k+1).
  std::vector<CellRef> above_cells(const Line& l) const;
  std::vector<CellRef> below_cells(const Line& l) const;

  const CuttingCell& at(const CellRef& ref) const {
    return ref.level == k() + 1 ? refined_[ref.index] : levels_[ref.level][ref.index];
  }

 private:
  std::vector<Line> lines_;
  int r_ = 1;
  Params params_;
  std::vector<std::vector<CuttingCell>> levels_;
  std::vector<CuttingCell> refined_;
  bool points_attached_ = false;
  int64_t n_points_ = 0;
  CuttingStats stats_;

  std::vector<CellRef> side_cells(const Line& l, bool above) const;
};

}  // namespace arrfaces
