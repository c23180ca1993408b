// arrfaces: generate instances, run the many-faces algorithms and face-query
// structures against the arrangement oracle, and benchmark scaling.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "arrfaces/arrangement.hpp"
#include "arrfaces/face_query.hpp"
#include "arrfaces/generator.hpp"
#include "arrfaces/io.hpp"
#include "arrfaces/many_faces.hpp"

using nlohmann::json;
using namespace arrfaces;

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json face_to_json(const Face& f) {
  json j;
  const FaceGeometry g = materialize_face(f);
  auto lines_json = [](const std::vector<Line>& ls) {
    json arr = json::array();
    for (const Line& l : ls)
      arr.push_back({{"a", scalar_to_string(l.a)}, {"b", scalar_to_string(l.b)}});
    return arr;
  };
  auto pts_json = [](const std::vector<Point>& ps) {
    json arr = json::array();
    for (const Point& p : ps)
      arr.push_back({{"x", scalar_to_string(p.x)}, {"y", scalar_to_string(p.y)}});
    return arr;
  };
  j["lower_lines"] = lines_json(g.lower_lines);
  j["upper_lines"] = lines_json(g.upper_lines);
  j["cycle"] = pts_json(g.cycle());
  j["bounded_left"] = f.left_vertex.has_value();
  j["bounded_right"] = f.right_vertex.has_value();
  if (f.left_vertex)
    j["left_vertex"] = {{"x", scalar_to_string(f.left_vertex->x)},
                        {"y", scalar_to_string(f.left_vertex->y)}};
  if (f.right_vertex)
    j["right_vertex"] = {{"x", scalar_to_string(f.right_vertex->x)},
                         {"y", scalar_to_string(f.right_vertex->y)}};
  return j;
}

json cutting_stats_json(const CuttingStats& st) {
  json j;
  j["level_sizes"] = st.level_sizes;
  j["level_max_conflict"] = st.level_max_conflict;
  j["refined_size"] = st.refined_size;
  j["retries"] = st.retries;
  j["cells_built"] = st.cells_built;
  j["max_children"] = st.max_children;
  j["max_size_constant"] = st.max_size_constant;
  return j;
}

int64_t total_face_edges(const std::map<FaceKey, Face>& faces) {
  int64_t total = 0;
  for (const auto& [key, f] : faces) total += f.lower_dual.count() + f.upper_dual.count();
  return total;
}

void write_report(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  f << j.dump(2) << "\n";
}

struct RunOutcome {
  json report;
  bool ok = true;
};

RunOutcome run_many_faces(const std::string& algo, const Instance& inst, uint64_t seed,
                          std::optional<int> r_override, bool verify, bool emit,
                          const std::string& emit_path) {
  RunOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  ManyFacesResult res;
  if (algo == "many-faces-fast") {
    res = many_faces_fast(inst.lines, inst.points, seed, r_override);
  } else if (algo == "many-faces-main") {
    res = many_faces_main(inst.lines, inst.points, seed);
  } else {
    res.faces = many_faces_naive(inst.lines, inst.points);
    res.r = 0;
  }
  const double dt = seconds_since(t0);

  out.report["algo"] = algo;
  out.report["params"] = {{"n", inst.lines.size()}, {"m", inst.points.size()},
                          {"r", res.r}, {"seed", seed}};
  out.report["faces"] = {{"count", res.faces.size()}, {"total_edges", total_face_edges(res.faces)}};
  out.report["timing"] = {{"wall_seconds", dt}};
  out.report["delegated_to_naive"] = res.delegated_to_naive;
  out.report["sum_hull_pieces"] = res.sum_hull_pieces;
  if (!res.cutting_stats.level_sizes.empty())
    out.report["cutting"] = cutting_stats_json(res.cutting_stats);
  if (algo == "many-faces-main") {
    out.report["zone_portions"] = res.zone_portion_count;
    out.report["glued_faces"] = res.glued_face_count;
  }

  if (verify) {
    const auto t1 = std::chrono::steady_clock::now();
    auto oracle = many_faces_naive(inst.lines, inst.points);
    std::string mismatch;
    const bool same = face_sets_equal(res.faces, oracle, &mismatch);
    out.report["verify"] = {{"verdict", same ? "PASS" : "FAIL"},
                            {"oracle_faces", oracle.size()},
                            {"oracle_seconds", seconds_since(t1)}};
    if (!same) {
      out.report["verify"]["detail"] = mismatch;
      std::cerr << "verification FAILED: " << mismatch << "\n";
      auto ia = res.faces.begin();
      auto ib = oracle.begin();
      while (ia != res.faces.end() && ib != oracle.end() && !(ia->first < ib->first) &&
             !(ib->first < ia->first) && faces_equal(ia->second, ib->second)) {
        ++ia;
        ++ib;
      }
      if (ia != res.faces.end()) std::cerr << "ours: " << face_to_json(ia->second).dump() << "\n";
      if (ib != oracle.end()) std::cerr << "oracle: " << face_to_json(ib->second).dump() << "\n";
      out.ok = false;
    }
  }
  if (emit) {
    json arr = json::array();
    for (const auto& [key, f] : res.faces) arr.push_back(face_to_json(f));
    write_report(arr, emit_path);
  }
  return out;
}

RunOutcome run_face_query(const std::string& algo, const Instance& inst,
                          const std::vector<Point>& queries, uint64_t seed, int r, bool verify) {
  RunOutcome out;
  const auto t0 = std::chrono::steady_clock::now();
  FaceQueryStructure s = (algo == "face-query") ? fq_build(inst.lines, seed)
                                                : fq_build_tradeoff(inst.lines, r, seed);
  const double build_dt = seconds_since(t0);

  FqQueryStats stats;
  std::map<FaceKey, Face> distinct;
  const auto t1 = std::chrono::steady_clock::now();
  std::vector<Face> answers;
  answers.reserve(queries.size());
  for (const Point& q : queries) answers.push_back(fq_query(s, q, &stats));
  const double query_dt = seconds_since(t1);
  for (const Face& f : answers) distinct.emplace(face_key(f), f);

  out.report["algo"] = algo;
  out.report["params"] = {{"n", inst.lines.size()}, {"queries", queries.size()},
                          {"r", algo == "face-query" ? 1 : r}, {"seed", seed}};
  out.report["timing"] = {{"build_seconds", build_dt}, {"query_seconds", query_dt}};
  out.report["faces"] = {{"count", distinct.size()}, {"total_edges", total_face_edges(distinct)}};
  out.report["tree"] = {{"nodes", s.tree.size()}, {"height", s.tree.height()}};
  out.report["canonical"] = {{"inside_total", stats.canonical_inside},
                             {"crossed_total", stats.canonical_crossed}};

  if (verify) {
    ArrangementDCEL arr = build_arrangement(inst.lines, queries);
    int pass = 0;
    std::string detail;
    for (size_t i = 0; i < queries.size(); ++i) {
      Face truth = arr.face_of(queries[i]);
      if (faces_equal(answers[i], truth)) {
        ++pass;
      } else if (detail.empty()) {
        detail = "query " + std::to_string(i) + " at " + to_string(queries[i]);
        std::cerr << "mismatch on " << detail << "\n"
                  << "ours: " << face_to_json(answers[i]).dump() << "\n"
                  << "oracle: " << face_to_json(truth).dump() << "\n";
      }
    }
    const bool same = pass == static_cast<int>(queries.size());
    out.report["verify"] = {{"verdict", same ? "PASS" : "FAIL"},
                            {"passed", pass},
                            {"total", queries.size()}};
    if (!detail.empty()) out.report["verify"]["detail"] = detail;
    out.ok = same;
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  size_t at = 0;
  while (at < text.size()) {
    size_t comma = text.find(',', at);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(std::stoi(text.substr(at, comma - at)));
    at = comma + 1;
  }
  return out;
}

// least-squares slope of log2(y) against log2(x)
double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (auto [x, y] : pts) {
    const double lx = std::log2(x), ly = std::log2(std::max(y, 1e-9));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"many faces in arrangements of lines"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "write a deterministic instance");
  std::string kind = "random-lines", out_path = "instance.txt";
  int gen_n = 8, gen_m = 4;
  uint64_t gen_seed = 1;
  int64_t coord_range = 1000000000;
  gen->add_option("--kind", kind, "random-lines|grid-lines|random-points|clustered-points");
  gen->add_option("--n", gen_n, "line count");
  gen->add_option("--m", gen_m, "point count");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--coord-range", coord_range, "coordinate range");
  gen->add_option("--out", out_path, "output path");

  auto* run = app.add_subcommand("run", "run an algorithm on an instance");
  std::string algo = "many-faces-fast", instance_path, queries_path, report_path, emit_path;
  uint64_t run_seed = 1;
  int run_r = 8;
  bool verify = false, emit = false, no_validate = false;
  run->add_option("--algo", algo,
                  "many-faces-fast|many-faces-main|many-faces-naive|face-query|face-query-tradeoff");
  run->add_option("--instance", instance_path, "instance file")->required();
  run->add_option("--queries", queries_path, "query points file (face queries)");
  run->add_option("--r", run_r, "override r / leaf capacity");
  run->add_option("--seed", run_seed, "seed for randomized constructions");
  run->add_flag("--verify", verify, "cross-check against the arrangement oracle");
  run->add_flag("--emit-faces", emit, "write explicit face cycles");
  run->add_option("--emit-path", emit_path, "face output path (default stdout)");
  run->add_option("--report", report_path, "JSON report path (default stdout)");
  run->add_flag("--no-validate", no_validate, "skip the general-position check");

  auto* bench = app.add_subcommand("bench", "sweep instance sizes and fit scaling slopes");
  std::string bench_algo = "many-faces-fast", n_list_text = "64,128,256,512,1024,2048";
  std::string m_mode = "equal", bench_report;
  int bench_seeds = 1, queries_per = 200, bench_r = 8;
  uint64_t bench_seed0 = 1;
  bench->add_option("--algo", bench_algo, "algorithm id");
  bench->add_option("--n-list", n_list_text, "comma-separated n values");
  bench->add_option("--m", m_mode, "equal | fixed:<count>");
  bench->add_option("--seeds", bench_seeds, "seeds per size");
  bench->add_option("--seed0", bench_seed0, "first seed");
  bench->add_option("--queries-per", queries_per, "queries per instance (face-query)");
  bench->add_option("--r", bench_r, "leaf capacity (face-query-tradeoff)");
  bench->add_option("--report", bench_report, "JSON report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      Instance inst = generate_instance(kind, gen_n, gen_m, gen_seed,
                                        GenParams{coord_range, 4});
      save_instance(inst, out_path);
      std::cout << "wrote " << out_path << " (" << inst.lines.size() << " lines, "
                << inst.points.size() << " points)\n";
      return 0;
    }

    if (run->parsed()) {
      Instance inst = load_instance(instance_path);
      std::vector<Point> queries;
      if (!queries_path.empty()) queries = load_points(queries_path);
      if (!no_validate) check_general_position(inst, false);

      RunOutcome out;
      if (algo == "face-query" || algo == "face-query-tradeoff") {
        if (queries.empty()) queries = inst.points;
        if (queries.empty()) {
          std::cerr << "face queries need --queries or P records in the instance\n";
          return 2;
        }
        out = run_face_query(algo, inst, queries, run_seed, run_r, verify);
      } else {
        std::optional<int> r_override;
        if (run->count("--r") > 0) r_override = run_r;
        if (!queries.empty()) {
          inst.points.insert(inst.points.end(), queries.begin(), queries.end());
        }
        out = run_many_faces(algo, inst, run_seed, r_override, verify, emit, emit_path);
      }
      out.report["schema_version"] = 1;
      out.report["command"] = "run";
      write_report(out.report, report_path);
      return out.ok ? 0 : 1;
    }

    // bench
    const std::vector<int> ns = parse_int_list(n_list_text);
    json runs = json::array();
    std::vector<std::pair<double, double>> curve;
    std::vector<std::pair<double, double>> canonical_curve;
    for (int n : ns) {
      int m = n;
      if (m_mode.rfind("fixed:", 0) == 0) m = std::stoi(m_mode.substr(6));
      std::vector<double> times;
      std::vector<double> canon;
      json per_seed = json::array();
      for (int sidx = 0; sidx < bench_seeds; ++sidx) {
        const uint64_t seed = bench_seed0 + sidx;
        Instance inst = generate_instance("random-lines", n,
                                          bench_algo.rfind("face-query", 0) == 0 ? 0 : m, seed);
        json rep;
        if (bench_algo.rfind("face-query", 0) == 0) {
          Rng qrng(hash_uint64(seed ^ 0xbe9cULL));
          auto queries = generate_points_for_lines(queries_per, inst.lines, qrng);
          RunOutcome out = run_face_query(bench_algo, inst, queries, seed,
                                          bench_algo == "face-query" ? 1 : bench_r, false);
          rep = out.report;
          times.push_back(rep["timing"]["query_seconds"].get<double>() / queries.size());
          canon.push_back(
              (rep["canonical"]["inside_total"].get<double>() +
               rep["canonical"]["crossed_total"].get<double>()) /
              (2.0 * queries.size()));
        } else {
          RunOutcome out = run_many_faces(bench_algo, inst, seed, std::nullopt, false, false, "");
          rep = out.report;
          times.push_back(rep["timing"]["wall_seconds"].get<double>());
        }
        per_seed.push_back(rep);
      }
      std::sort(times.begin(), times.end());
      const double med = times[times.size() / 2];
      curve.push_back({static_cast<double>(n), med});
      json entry = {{"n", n}, {"m", m}, {"median_seconds", med}, {"runs", per_seed}};
      if (!canon.empty()) {
        std::sort(canon.begin(), canon.end());
        entry["median_canonical"] = canon[canon.size() / 2];
        canonical_curve.push_back({static_cast<double>(n), canon[canon.size() / 2]});
      }
      runs.push_back(entry);
    }
    json summary;
    summary["schema_version"] = 1;
    summary["command"] = "bench";
    summary["algo"] = bench_algo;
    summary["points"] = runs;
    summary["time_slope"] = loglog_slope(curve);
    if (!canonical_curve.empty()) summary["canonical_slope"] = loglog_slope(canonical_curve);
    write_report(summary, bench_report);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
