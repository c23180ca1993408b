#include "arrfaces/generator.hpp"

#include <unordered_set>

#include "arrfaces/errors.hpp"

namespace arrfaces {

namespace {

Scalar draw_coord(Rng& rng, int64_t range) { return Scalar(rng.range(-range, range)); }

uint64_t point_hash_key(const Point& p) { return hash_point(p); }

// Rejection-sampled point set: distinct x-coordinates and no three collinear.
// Collinearity is screened with per-point sets of slope hashes: a hash
// collision can only cause a spurious resample, never a missed violation.
class PointAccum {
 public:
  bool try_add(const Point& cand) {
    if (xs_.count(hash_scalar(cand.x))) return false;
    std::vector<uint64_t> new_slopes(pts_.size());
    for (size_t i = 0; i < pts_.size(); ++i) {
      const Scalar dx = cand.x - pts_[i].x;
      const Scalar dy = cand.y - pts_[i].y;
      new_slopes[i] = hash_scalar(dy / dx);
      if (slopes_[i].count(new_slopes[i])) return false;
    }
    for (size_t i = 0; i < pts_.size(); ++i) slopes_[i].insert(new_slopes[i]);
    slopes_.emplace_back();
    xs_.insert(hash_scalar(cand.x));
    pts_.push_back(cand);
    return true;
  }

  const std::vector<Point>& points() const { return pts_; }
  std::vector<Point> take() { return std::move(pts_); }

 private:
  std::vector<Point> pts_;
  std::vector<std::unordered_set<uint64_t>> slopes_;
  std::unordered_set<uint64_t> xs_;
};

}  // namespace

std::vector<Line> generate_random_lines(int n, Rng& rng, const GenParams& p) {
  if (n < 0) fail(ErrorCode::ParamRange, "negative line count");
  std::vector<Line> lines;
  std::unordered_set<uint64_t> line_keys;
  std::unordered_set<uint64_t> crossings;  // hashes of pairwise intersections
  int guard = 0;
  while (static_cast<int>(lines.size()) < n) {
    if (++guard > 200 * n + 1000) fail(ErrorCode::Internal, "line generation stalled");
    Line cand{draw_coord(rng, p.coord_range), draw_coord(rng, p.coord_range)};
    if (!line_keys.insert(hash_line(cand)).second) continue;
    std::vector<uint64_t> mine;
    mine.reserve(lines.size());
    bool concurrent = false;
    std::unordered_set<uint64_t> batch;
    for (const Line& l : lines) {
      auto v = intersect_lines(l, cand);
      if (!v) continue;
      const uint64_t key = point_hash_key(*v);
      if (crossings.count(key) || !batch.insert(key).second) {
        concurrent = true;
        break;
      }
      mine.push_back(key);
    }
    if (concurrent) {
      line_keys.erase(hash_line(cand));
      continue;
    }
    crossings.insert(mine.begin(), mine.end());
    lines.push_back(cand);
  }
  return lines;
}

std::vector<Line> generate_grid_lines(int n) {
  if (n <= 0) fail(ErrorCode::ParamRange, "grid size must be positive");
  // slopes 0, 1, -1 with cycling intercepts: rich in concurrent triples
  std::vector<Line> lines;
  const Scalar slopes[3] = {Scalar(0), Scalar(1), Scalar(-1)};
  for (int i = 0; i < n; ++i) lines.push_back(Line{slopes[i % 3], Scalar(i / 3 + 1)});
  return lines;
}

std::vector<Point> generate_random_points(int m, Rng& rng, const GenParams& p) {
  if (m < 0) fail(ErrorCode::ParamRange, "negative point count");
  PointAccum acc;
  int guard = 0;
  while (static_cast<int>(acc.points().size()) < m) {
    if (++guard > 200 * m + 1000) fail(ErrorCode::Internal, "point generation stalled");
    acc.try_add(Point{draw_coord(rng, p.coord_range), draw_coord(rng, p.coord_range)});
  }
  return acc.take();
}

std::vector<Point> generate_clustered_points(int m, Rng& rng, const GenParams& p) {
  if (m < 0) fail(ErrorCode::ParamRange, "negative point count");
  const int k = std::max(1, p.cluster_count);
  std::vector<Point> centers;
  for (int i = 0; i < k; ++i)
    centers.push_back(Point{draw_coord(rng, p.coord_range), draw_coord(rng, p.coord_range)});
  const int64_t spread = std::max<int64_t>(8, p.coord_range / 64);
  PointAccum acc;
  int guard = 0;
  while (static_cast<int>(acc.points().size()) < m) {
    if (++guard > 400 * m + 1000) fail(ErrorCode::Internal, "point generation stalled");
    const Point& c = centers[rng.below(static_cast<uint64_t>(k))];
    acc.try_add(Point{c.x + draw_coord(rng, spread), c.y + draw_coord(rng, spread)});
  }
  return acc.take();
}

std::vector<Point> generate_points_for_lines(int m, const std::vector<Line>& lines, Rng& rng,
                                             const GenParams& p) {
  if (m < 0) fail(ErrorCode::ParamRange, "negative point count");
  PointAccum acc;
  int guard = 0;
  while (static_cast<int>(acc.points().size()) < m) {
    if (++guard > 400 * m + 2000) fail(ErrorCode::Internal, "point-for-lines generation stalled");
    Point cand{draw_coord(rng, p.coord_range), draw_coord(rng, p.coord_range)};
    bool on_line = false;
    for (const Line& l : lines)
      if (side_of_line(l, cand) == Side::On) {
        on_line = true;
        break;
      }
    if (on_line) continue;
    acc.try_add(cand);
  }
  return acc.take();
}

Instance generate_instance(const std::string& kind, int n, int m, uint64_t seed,
                           const GenParams& p) {
  Rng rng(hash_uint64(seed ^ 0xa5a5a5a5ULL));
  Instance inst;
  if (kind == "random-lines") {
    if (n < 1) fail(ErrorCode::ParamRange, "random-lines needs n >= 1");
    Rng r = rng.fork(1);
    inst.lines = generate_random_lines(n, r, p);
    if (m > 0) {
      Rng r2 = rng.fork(2);
      inst.points = generate_points_for_lines(m, inst.lines, r2, p);
    }
  } else if (kind == "grid-lines") {
    inst.lines = generate_grid_lines(n);
    check_general_position(inst, true);  // reports the concurrency violation
  } else if (kind == "random-points") {
    if (m < 1) fail(ErrorCode::ParamRange, "random-points needs m >= 1");
    Rng r = rng.fork(3);
    inst.points = generate_random_points(m, r, p);
  } else if (kind == "clustered-points") {
    if (m < 1) fail(ErrorCode::ParamRange, "clustered-points needs m >= 1");
    Rng r = rng.fork(4);
    inst.points = generate_clustered_points(m, r, p);
  } else {
    fail(ErrorCode::ParamRange, "unknown instance kind '" + kind + "'");
  }
  return inst;
}

}  // namespace arrfaces
