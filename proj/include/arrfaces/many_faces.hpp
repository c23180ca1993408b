#pragma once

#include <map>

#include "arrfaces/arrangement.hpp"
#include "arrfaces/cuttings.hpp"

namespace arrfaces {

// r = min{m, floor(sqrt(n / log2 n))}, clamped to >= 1.
int theorem10_r(int64_t n_lines, int64_t m_points);
// r = max{ m^(2/3) / (n^(1/3) * log2^(1/3)(n/sqrt(m))), 1 }, clamped to [1, n].
int theorem20_r(int64_t n_lines, int64_t m_points);

// Dual-plane preprocessing: hierarchical cutting over the dual lines of the
// query points, with the dual points of the input lines attached (sorted,
// per-cell hulls, refinement built).
struct DualPreprocess {
  std::vector<Line> lines;
  std::vector<Point> points;
  std::vector<Point> s_star;  // duals of the lines, lex-sorted
  std::vector<Line> p_star;   // duals of the points, aligned with `points`
  int r = 1;
  HierarchicalCutting cutting;

  std::vector<uint64_t> hull_fingerprints() const;  // persistence audit
};

DualPreprocess preprocess_dual(const std::vector<Line>& lines, const std::vector<Point>& points,
                               Rng rng, std::optional<int> r_override = std::nullopt);

// H+(p*): lower hull of the dual points above p*, assembled from the prebuilt
// hulls of the cells entirely above p* plus freshly built hulls of the
// above-parts of the crossed refinement cells, merged through the envelope.
// piece_count (optional) receives |H+(p*)|, the number of merged hulls.
// Error: POINT_ON_DUAL_LINE.
ChainHandle hull_above(const DualPreprocess& pre, const Line& p_star,
                       int64_t* piece_count = nullptr);
ChainHandle hull_below(const DualPreprocess& pre, const Line& p_star,
                       int64_t* piece_count = nullptr);

struct QueryResult {
  ChainHandle h_plus{ChainSide::Lower}, h_minus{ChainSide::Upper};
  InnerTangents tangents;
  Face face;
  FaceKey key{0, {}, {}};
};

QueryResult single_face_query(const DualPreprocess& pre, int point_index, int64_t* pieces);

struct ManyFacesResult {
  std::map<FaceKey, Face> faces;
  int r = 1;
  bool delegated_to_naive = false;
  int64_t sum_hull_pieces = 0;  // sum over queries of |H+| + |H-|
  CuttingStats cutting_stats;
  int64_t zone_portion_count = 0;  // main algorithm only
  int64_t glued_face_count = 0;
};

// Theorem-style first algorithm: dual cutting + persistent hull merging; the
// m >= n^2/2 regime delegates to the straightforward arrangement path.
ManyFacesResult many_faces_fast(const std::vector<Line>& lines, const std::vector<Point>& points,
                                uint64_t seed, std::optional<int> r_override = std::nullopt);

// Main algorithm: primal (1/r)-cutting, per-cell subproblems via the first
// algorithm, zones of the cells, zone gluing across cell boundaries.
ManyFacesResult many_faces_main(const std::vector<Line>& lines, const std::vector<Point>& points,
                                uint64_t seed);

bool face_sets_equal(const std::map<FaceKey, Face>& a, const std::map<FaceKey, Face>& b,
                     std::string* first_mismatch = nullptr);

}  // namespace arrfaces
