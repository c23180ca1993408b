#include "arrfaces/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "arrfaces/errors.hpp"

namespace arrfaces {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  Instance inst;
  std::istringstream is(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "L") {
      if (toks.size() != 3)
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": want 'L a b'");
      inst.lines.push_back(Line{parse_scalar(toks[1]), parse_scalar(toks[2])});
    } else if (toks[0] == "P") {
      if (toks.size() != 3)
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": want 'P x y'");
      inst.points.push_back(Point{parse_scalar(toks[1]), parse_scalar(toks[2])});
    } else {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": unknown record '" + toks[0] + "'");
    }
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str());
}

std::string format_instance(const Instance& inst) {
  std::ostringstream os;
  for (const Line& l : inst.lines)
    os << "L " << scalar_to_string(l.a) << " " << scalar_to_string(l.b) << "\n";
  for (const Point& p : inst.points)
    os << "P " << scalar_to_string(p.x) << " " << scalar_to_string(p.y) << "\n";
  return os.str();
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail(ErrorCode::ParseError, "cannot open " + path + " for writing");
  f << format_instance(inst);
}

std::vector<Point> parse_points(const std::string& text) {
  Instance inst = parse_instance(text);
  if (!inst.lines.empty()) fail(ErrorCode::ParseError, "query file must contain only P records");
  return inst.points;
}

std::vector<Point> load_points(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_points(ss.str());
}

void check_general_position(const Instance& inst, bool thorough) {
  {
    auto lines = inst.lines;
    std::sort(lines.begin(), lines.end(), [](const Line& x, const Line& y) {
      const int c = cmp_sc(x.a, y.a);
      if (c != 0) return c < 0;
      return x.b < y.b;
    });
    for (size_t i = 0; i + 1 < lines.size(); ++i)
      if (lines[i] == lines[i + 1]) fail(ErrorCode::GeneralPosition, "duplicate line");
  }
  {
    auto pts = inst.points;
    std::sort(pts.begin(), pts.end(), lex_less);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      if (pts[i] == pts[i + 1]) fail(ErrorCode::GeneralPosition, "duplicate point");
      if (pts[i].x == pts[i + 1].x)
        fail(ErrorCode::GeneralPosition, "two points share an x-coordinate (parallel dual lines)");
    }
  }
  for (const Point& p : inst.points)
    for (const Line& l : inst.lines)
      if (side_of_line(l, p) == Side::On)
        fail(ErrorCode::GeneralPosition, "point " + to_string(p) + " lies on a line");
  if (!thorough) return;

  // three concurrent lines <=> duplicate intersection points
  {
    std::map<std::pair<std::string, std::string>, int> seen;
    for (size_t i = 0; i < inst.lines.size(); ++i)
      for (size_t j = i + 1; j < inst.lines.size(); ++j) {
        auto v = intersect_lines(inst.lines[i], inst.lines[j]);
        if (!v) continue;
        auto key = std::make_pair(scalar_to_string(v->x), scalar_to_string(v->y));
        if (++seen[key] > 1)
          fail(ErrorCode::GeneralPosition, "three concurrent lines through (" + key.first + ", " +
                                               key.second + ")");
      }
  }
  // three collinear points <=> concurrent dual lines
  {
    const auto& p = inst.points;
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = i + 1; j < p.size(); ++j)
        for (size_t k = j + 1; k < p.size(); ++k)
          if (orientation(p[i], p[j], p[k]) == Orientation::Collinear)
            fail(ErrorCode::GeneralPosition, "three collinear points");
  }
}

}  // namespace arrfaces
