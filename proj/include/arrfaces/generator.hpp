#pragma once

#include <cstdint>
#include <string>

#include "arrfaces/io.hpp"
#include "arrfaces/rng.hpp"

namespace arrfaces {

// Deterministic instance generation. Coordinates are small integers (or
// simple rationals) drawn from a fixed range so that cascaded exact
// constructions stay cheap; general position is enforced by rejection
// resampling against the already-drawn items. `grid-lines` intentionally
// produces concurrent triples and is rejected, exercising the checker.
struct GenParams {
  // Coordinates are drawn from [-range, range]. The range is large enough
  // that rejection sampling against n^2 pairwise crossings stays cheap even
  // at n ~ 2000, while every coordinate still fits in one or two GMP limbs.
  int64_t coord_range = 1000000000;
  int cluster_count = 4;  // clustered-points only
};

std::vector<Line> generate_random_lines(int n, Rng& rng, const GenParams& p = {});
std::vector<Line> generate_grid_lines(int n);  // deliberately degenerate
std::vector<Point> generate_random_points(int m, Rng& rng, const GenParams& p = {});
std::vector<Point> generate_clustered_points(int m, Rng& rng, const GenParams& p = {});

// Points in general position w.r.t. the lines as well (no point on a line).
std::vector<Point> generate_points_for_lines(int m, const std::vector<Line>& lines, Rng& rng,
                                             const GenParams& p = {});

Instance generate_instance(const std::string& kind, int n, int m, uint64_t seed,
                           const GenParams& p = {});  // PARAM_RANGE, GENERAL_POSITION

}  // namespace arrfaces
