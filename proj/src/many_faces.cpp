#include "arrfaces/many_faces.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

#include "arrfaces/errors.hpp"

namespace arrfaces {

int theorem10_r(int64_t n_lines, int64_t m_points) {
  if (n_lines <= 2 || m_points < 1) return 1;
  const double v = std::sqrt(static_cast<double>(n_lines) / std::log2(static_cast<double>(n_lines)));
  int r = static_cast<int>(std::floor(v));
  r = std::min<int64_t>(r, m_points);
  return std::max(r, 1);
}

int theorem20_r(int64_t n_lines, int64_t m_points) {
  if (n_lines < 1 || m_points < 1) return 1;
  const double n = static_cast<double>(n_lines), m = static_cast<double>(m_points);
  const double lg = std::log2(n / std::sqrt(m));
  if (!(lg > 0)) return 1;
  const double v = std::pow(m, 2.0 / 3.0) / (std::cbrt(n) * std::cbrt(lg));
  int r = static_cast<int>(std::llround(v));
  r = std::max(r, 1);
  return static_cast<int>(std::min<int64_t>(r, n_lines));
}

std::vector<uint64_t> DualPreprocess::hull_fingerprints() const {
  std::vector<uint64_t> out;
  for (int level = 0; level <= cutting.k(); ++level)
    for (const auto& cell : cutting.level(level)) out.push_back(cell.hull.fingerprint());
  for (const auto& cell : cutting.refined()) out.push_back(cell.hull.fingerprint());
  return out;
}

DualPreprocess preprocess_dual(const std::vector<Line>& lines, const std::vector<Point>& points,
                               Rng rng, std::optional<int> r_override) {
  if (points.empty()) fail(ErrorCode::ParamRange, "preprocess_dual needs at least one point");
  DualPreprocess pre;
  pre.lines = lines;
  pre.points = points;
  pre.s_star.reserve(lines.size());
  for (const Line& l : lines) pre.s_star.push_back(dual_of_line(l));
  std::sort(pre.s_star.begin(), pre.s_star.end(), lex_less);
  pre.p_star.reserve(points.size());
  for (const Point& p : points) pre.p_star.push_back(dual_of_point(p));
  pre.r = r_override ? *r_override : theorem10_r(lines.size(), points.size());
  if (pre.r < 1 || pre.r > static_cast<int>(points.size()))
    fail(ErrorCode::ParamRange, "cutting parameter r out of range");
  pre.cutting = HierarchicalCutting::build(pre.p_star, pre.r, rng);
  pre.cutting.attach_points(pre.s_star);
  return pre;
}

namespace {

ChainHandle hull_one_side(const DualPreprocess& pre, const Line& p_star, bool above,
                          int64_t* piece_count) {
  const ChainSide side = above ? ChainSide::Lower : ChainSide::Upper;
  std::vector<ChainHandle> chains;
  const auto refs = above ? pre.cutting.above_cells(p_star) : pre.cutting.below_cells(p_star);
  for (const auto& ref : refs) {
    const CuttingCell& cell = pre.cutting.at(ref);
    if (cell.stored_points.empty()) continue;
    chains.push_back(above ? cell.hull.lower : cell.hull.upper);
  }
  // crossed refinement cells contribute hulls of their filtered point sets
  const auto crossing = pre.cutting.crossing_cells(p_star);
  for (int idx : crossing.refined) {
    const CuttingCell& cell = pre.cutting.refined()[idx];
    std::vector<Point> filtered;
    for (int pid : cell.stored_points) {
      const Point& q = pre.s_star[pid];
      const Side s = side_of_line(p_star, q);
      if (s == Side::On)
        fail(ErrorCode::PointOnDualLine, "dual point on the query's dual line (point on line)");
      if ((s == Side::Above) == above) filtered.push_back(q);
    }
    if (filtered.empty()) continue;
    Hull h = hull_of_sorted(filtered);
    chains.push_back(above ? h.lower : h.upper);
  }
  if (piece_count) *piece_count += static_cast<int64_t>(chains.size());
  return merge_disjoint_hulls(chains, side);
}

}  // namespace

ChainHandle hull_above(const DualPreprocess& pre, const Line& p_star, int64_t* piece_count) {
  return hull_one_side(pre, p_star, true, piece_count);
}

ChainHandle hull_below(const DualPreprocess& pre, const Line& p_star, int64_t* piece_count) {
  return hull_one_side(pre, p_star, false, piece_count);
}

QueryResult single_face_query(const DualPreprocess& pre, int point_index, int64_t* pieces) {
  QueryResult qr;
  const Line& p_star = pre.p_star[point_index];
  qr.h_plus = hull_above(pre, p_star, pieces);
  qr.h_minus = hull_below(pre, p_star, pieces);
  if (!qr.h_plus.empty() && !qr.h_minus.empty())
    qr.tangents = inner_common_tangents(qr.h_plus, qr.h_minus);
  qr.face = face_from_hulls(qr.h_plus, qr.h_minus, p_star);
  qr.key = face_key(qr.face);
  return qr;
}

ManyFacesResult many_faces_fast(const std::vector<Line>& lines, const std::vector<Point>& points,
                                uint64_t seed, std::optional<int> r_override) {
  ManyFacesResult res;
  if (points.empty()) return res;
  if (lines.empty()) fail(ErrorCode::ParamRange, "many faces of an empty line set");
  const int64_t n = static_cast<int64_t>(lines.size());
  const int64_t m = static_cast<int64_t>(points.size());
  if (2 * m >= n * n) {
    res.delegated_to_naive = true;
    res.faces = many_faces_naive(lines, points);
    return res;
  }
  Rng rng(hash_uint64(seed ^ 0x1fa57ULL));
  DualPreprocess pre = preprocess_dual(lines, points, rng, r_override);
  res.r = pre.r;
  res.cutting_stats = pre.cutting.stats();
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    QueryResult qr = single_face_query(pre, i, &res.sum_hull_pieces);
    res.faces.emplace(qr.key, std::move(qr.face));
  }
  return res;
}

namespace {

struct LineIdLookup {
  std::unordered_map<uint64_t, std::vector<int>> by_hash;
  const std::vector<Line>* lines;

  explicit LineIdLookup(const std::vector<Line>& ls) : lines(&ls) {
    for (int i = 0; i < static_cast<int>(ls.size()); ++i)
      by_hash[hash_line(ls[i])].push_back(i);
  }
  int find(const Line& l) const {
    auto it = by_hash.find(hash_line(l));
    if (it == by_hash.end()) return -1;
    for (int id : it->second)
      if ((*lines)[id] == l) return id;
    return -1;
  }
};

// canonical key of the supporting line of a cell edge (may be vertical)
struct EdgeLineKey {
  bool vertical;
  Scalar a, b;  // vertical: x = a; else y = a*x + b

  bool operator<(const EdgeLineKey& o) const {
    if (vertical != o.vertical) return vertical < o.vertical;
    const int c = cmp_sc(a, o.a);
    if (c != 0) return c < 0;
    return b < o.b;
  }
};

struct BoundaryFragment {
  EdgeLineKey key;
  // parameter interval along the line (x, or y when vertical); open ends at
  // infinity are encoded by the optionals
  std::optional<Scalar> lo, hi;
  int side;  // which side of the supporting line the portion lies on
  int portion;
};

std::optional<Line> supporting_line(const CellVertex& u, const CellVertex& w,
                                    EdgeLineKey* key_out) {
  // returns the non-vertical supporting line; vertical edges fill only the key
  Point anchor;
  Point dir;
  if (!u.at_infinity && !w.at_infinity) {
    anchor = u.p;
    dir = Point{w.p.x - u.p.x, w.p.y - u.p.y};
  } else if (!u.at_infinity) {
    anchor = u.p;
    dir = w.dir;
  } else if (!w.at_infinity) {
    anchor = w.p;
    dir = u.dir;
  } else {
    return std::nullopt;  // arc at infinity
  }
  if (sgn(dir.x) == 0) {
    if (key_out) *key_out = EdgeLineKey{true, anchor.x, Scalar(0)};
    return std::nullopt;
  }
  const Scalar slope = dir.y / dir.x;
  const Line l{slope, anchor.y - slope * anchor.x};
  if (key_out) *key_out = EdgeLineKey{false, l.a, l.b};
  return l;
}

std::optional<Scalar> param_of(const CellVertex& v, bool vertical, bool low_end) {
  if (v.at_infinity) {
    (void)low_end;
    return std::nullopt;  // unbounded end
  }
  return vertical ? v.p.y : v.p.x;
}

}  // namespace

ManyFacesResult many_faces_main(const std::vector<Line>& lines, const std::vector<Point>& points,
                                uint64_t seed) {
  ManyFacesResult res;
  if (points.empty()) return res;
  if (lines.empty()) fail(ErrorCode::ParamRange, "many faces of an empty line set");
  const int64_t n = static_cast<int64_t>(lines.size());
  const int64_t m = static_cast<int64_t>(points.size());
  if (2 * m >= n * n) {
    res.delegated_to_naive = true;
    res.faces = many_faces_naive(lines, points);
    return res;
  }
  bool all_parallel = true;
  for (const Line& l : lines)
    if (l.a != lines[0].a) all_parallel = false;
  int r = all_parallel ? 1 : theorem20_r(n, m);
  res.r = r;
  if (r == 1) {
    ManyFacesResult inner = many_faces_fast(lines, points, seed);
    inner.r = 1;
    return inner;
  }

  Rng rng(hash_uint64(seed ^ 0x20a1d0ULL));
  HierarchicalCutting cutting = HierarchicalCutting::build(lines, r, rng);
  res.cutting_stats = cutting.stats();
  const auto& cells = cutting.level(cutting.k());

  // locate the points; a point exactly on a cell edge goes to the first
  // closed cell in scan order (both candidate cells agree on its face)
  std::vector<std::vector<int>> cell_points(cells.size());
  for (int pid = 0; pid < static_cast<int>(points.size()); ++pid) {
    const Point& p = points[pid];
    int cur = 0;
    bool lost = false;
    for (int level = 1; level <= cutting.k() && !lost; ++level) {
      const auto& kids = cutting.level(level - 1)[cur].children;
      int found = -1;
      for (int kid : kids)
        if (cutting.level(level)[kid].cell.strictly_contains(p)) {
          found = kid;
          break;
        }
      if (found < 0) {
        for (int kid : kids)
          if (cutting.level(level)[kid].cell.contains(p)) {
            found = kid;
            break;
          }
      }
      if (found < 0) lost = true;
      cur = found;
    }
    if (lost) fail(ErrorCode::Internal, "point not covered by the cutting");
    cell_points[cur].push_back(pid);
  }

  LineIdLookup lookup(lines);

  struct PortionRec {
    std::set<int> lower, upper;  // global line ids bounding the portion
    bool nonempty = false;
  };
  std::vector<PortionRec> portions;
  std::vector<BoundaryFragment> fragments;

  for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
    const CuttingCell& cell = cells[ci];
    std::vector<Line> sigma_lines;
    std::vector<int> local_to_global;
    for (int lid : cell.conflict) {
      sigma_lines.push_back(lines[lid]);
      local_to_global.push_back(lid);
    }
    auto zone = zone_of_triangle(sigma_lines, cell.cell);
    res.zone_portion_count += static_cast<int64_t>(zone.size());

    // classify this cell's query points: zone-resident or interior
    std::vector<int> interior_points;
    std::vector<int> zone_hit(zone.size(), 0);
    for (int pid : cell_points[ci]) {
      const Point& p = points[pid];
      int hit = -1;
      for (size_t zi = 0; zi < zone.size() && hit < 0; ++zi)
        if (zone[zi].region.strictly_contains(p)) hit = static_cast<int>(zi);
      if (hit < 0)
        for (size_t zi = 0; zi < zone.size() && hit < 0; ++zi)
          if (zone[zi].region.contains(p)) hit = static_cast<int>(zi);
      if (hit >= 0)
        zone_hit[hit] = 1;
      else
        interior_points.push_back(pid);
    }

    if (!interior_points.empty()) {
      std::vector<Point> pts;
      for (int pid : interior_points) pts.push_back(points[pid]);
      ManyFacesResult sub = many_faces_fast(sigma_lines, pts, hash_uint64(seed + 31 * ci + 7));
      for (auto& [key, face] : sub.faces) res.faces.emplace(key, std::move(face));
      res.sum_hull_pieces += sub.sum_hull_pieces;
    }

    // record the zone portions with their boundary structure
    for (size_t zi = 0; zi < zone.size(); ++zi) {
      const ZonePortion& zp = zone[zi];
      PortionRec rec;
      rec.nonempty = zone_hit[zi] != 0;
      for (int local : zp.lower_lines) rec.lower.insert(local_to_global[local]);
      for (int local : zp.upper_lines) rec.upper.insert(local_to_global[local]);
      const int portion_id = static_cast<int>(portions.size());
      const ConvexCell& region = zp.region;
      const Point inside = region.interior_point();
      for (size_t e = 0; e < region.size(); ++e) {
        if (region.edge_tag(e).kind != EdgeTag::CellBoundary) continue;
        const CellVertex& u = region.vertex(e);
        const CellVertex& w = region.vertex((e + 1) % region.size());
        EdgeLineKey key{false, Scalar(0), Scalar(0)};
        auto carrier = supporting_line(u, w, &key);
        if (!carrier && !key.vertical) continue;  // arc at infinity
        if (carrier) {
          // a cell edge lying on an input line is genuine face boundary
          const int gid = lookup.find(*carrier);
          if (gid >= 0) {
            if (side_of_line(*carrier, inside) == Side::Above)
              rec.lower.insert(gid);
            else
              rec.upper.insert(gid);
            continue;
          }
        }
        BoundaryFragment fr;
        fr.key = key;
        auto pu = param_of(u, key.vertical, true);
        auto pw = param_of(w, key.vertical, true);
        if (pu && pw && *pw < *pu) std::swap(pu, pw);
        if (pu && pw) {
          fr.lo = pu;
          fr.hi = pw;
        } else if (pu && !pw) {
          // ray: orient by the direction sign
          const Point& d = w.at_infinity ? w.dir : u.dir;
          const Scalar comp = key.vertical ? d.y : d.x;
          if (sgn(comp) > 0)
            fr.lo = pu;
          else
            fr.hi = pu;
        } else if (!pu && pw) {
          const Point& d = u.at_infinity ? u.dir : w.dir;
          const Scalar comp = key.vertical ? d.y : d.x;
          if (sgn(comp) > 0)
            fr.lo = pw;
          else
            fr.hi = pw;
        }
        if (key.vertical)
          fr.side = inside.x > key.a ? 1 : -1;
        else
          fr.side = side_of_line(Line{key.a, key.b}, inside) == Side::Above ? 1 : -1;
        fr.portion = portion_id;
        fragments.push_back(std::move(fr));
      }
      portions.push_back(std::move(rec));
    }
  }

  // glue portions whose windows on a shared boundary line overlap with
  // positive length from opposite sides
  std::vector<int> parent(portions.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::sort(fragments.begin(), fragments.end(), [](const BoundaryFragment& f, const BoundaryFragment& g) {
    if (f.key < g.key) return true;
    if (g.key < f.key) return false;
    const bool fl = f.lo.has_value(), gl = g.lo.has_value();
    if (fl != gl) return !fl;
    if (fl && gl && !(*f.lo == *g.lo)) return *f.lo < *g.lo;
    return f.portion < g.portion;
  });
  size_t group_start = 0;
  while (group_start < fragments.size()) {
    size_t group_end = group_start;
    while (group_end < fragments.size() &&
           !(fragments[group_start].key < fragments[group_end].key) &&
           !(fragments[group_end].key < fragments[group_start].key))
      ++group_end;
    for (size_t i = group_start; i < group_end; ++i)
      for (size_t j = i + 1; j < group_end; ++j) {
        const auto& a = fragments[i];
        const auto& b = fragments[j];
        if (a.side == b.side) continue;
        std::optional<Scalar> lo = a.lo;
        if (b.lo && (!lo || *b.lo > *lo)) lo = b.lo;
        std::optional<Scalar> hi = a.hi;
        if (b.hi && (!hi || *b.hi < *hi)) hi = b.hi;
        const bool positive = (!lo || !hi) ? true : (*lo < *hi);
        if (positive) parent[find(a.portion)] = find(b.portion);
      }
    group_start = group_end;
  }

  std::map<int, PortionRec> glued;
  for (size_t i = 0; i < portions.size(); ++i) {
    PortionRec& g = glued[find(static_cast<int>(i))];
    g.nonempty = g.nonempty || portions[i].nonempty;
    g.lower.insert(portions[i].lower.begin(), portions[i].lower.end());
    g.upper.insert(portions[i].upper.begin(), portions[i].upper.end());
  }
  for (auto& [root, g] : glued) {
    if (!g.nonempty) continue;
    ++res.glued_face_count;
    std::vector<Line> lower, upper;
    for (int id : g.lower) lower.push_back(lines[id]);
    for (int id : g.upper) upper.push_back(lines[id]);
    Face face = face_from_boundary_lines(std::move(lower), std::move(upper));
    res.faces.emplace(face_key(face), std::move(face));
  }
  return res;
}

bool face_sets_equal(const std::map<FaceKey, Face>& a, const std::map<FaceKey, Face>& b,
                     std::string* first_mismatch) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first || ib->first < ia->first) break;
    if (!faces_equal(ia->second, ib->second)) break;
    ++ia;
    ++ib;
  }
  if (ia == a.end() && ib == b.end()) return true;
  if (first_mismatch) {
    std::string msg = "face sets differ";
    if (ia != a.end() && ib != b.end())
      msg += " near keys kind=" + std::to_string(ia->first.kind) + " vs kind=" +
             std::to_string(ib->first.kind);
    else if (ia != a.end())
      msg += ": extra face in first set (kind=" + std::to_string(ia->first.kind) + ")";
    else
      msg += ": extra face in second set (kind=" + std::to_string(ib->first.kind) + ")";
    *first_mismatch = msg;
  }
  return false;
}

}  // namespace arrfaces
