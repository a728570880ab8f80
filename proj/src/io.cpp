#include "pearl/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pearl {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

namespace {

int line_of_offset(const std::string& text, std::size_t off) {
  off = std::min(off, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + off, '\n'));
}

// Line of the k-th occurrence of a key, or 0 when absent.
int line_of_key(const std::string& text, const std::string& key, int k) {
  const std::string needle = "\"" + key + "\"";
  std::size_t pos = 0;
  for (int i = 0; i <= k; ++i) {
    pos = text.find(needle, i ? pos + 1 : 0);
    if (pos == std::string::npos) return 0;
  }
  return line_of_offset(text, pos);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  throw InputError(source + ":" + (line > 0 ? std::to_string(line) + ":" : "") + " " + msg);
}

ordered_json parse_json(const std::string& text, const std::string& source) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(source, line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), "malformed JSON");
  }
}

template <class F>
auto field(const ordered_json& j, const char* key, const std::string& source, int line, F&& get) {
  if (!j.is_object() || !j.contains(key)) fail(source, line, std::string("missing field \"") + key + "\"");
  try {
    return get(j.at(key));
  } catch (const nlohmann::json::exception&) {
    fail(source, line, std::string("field \"") + key + "\" has the wrong type");
  }
}

int as_int(const ordered_json& v) {
  if (!v.is_number_integer()) throw nlohmann::json::type_error::create(302, "integer expected", nullptr);
  return v.get<int>();
}

std::string q_str(const Rational& q) { return to_string(q); }

ordered_json knot_json(const CubicalKnot& k) {
  ordered_json j;
  if (!k.name.empty()) j["name"] = k.name;
  j["ambient_dim"] = k.ambient_dim;
  j["knot_dim"] = k.knot_dim;
  ordered_json cubes = ordered_json::array();
  for (const auto& c : k.cubes) {
    ordered_json base = ordered_json::array(), axes = ordered_json::array();
    for (int i = 0; i < c.base.dim; ++i) base.push_back(c.base[i]);
    for (int a : c.axes) axes.push_back(a + 1);
    cubes.push_back({{"base", base}, {"axes", axes}});
  }
  j["cubes"] = cubes;
  return j;
}

// Cubes one per line keeps diffs and diagnostics readable.
std::string knot_text(const CubicalKnot& k, int indent) {
  ordered_json j = knot_json(k);
  std::string pad(indent, ' ');
  std::ostringstream os;
  os << "{\n";
  if (!k.name.empty()) os << pad << "  \"name\": " << ordered_json(k.name).dump() << ",\n";
  os << pad << "  \"ambient_dim\": " << k.ambient_dim << ",\n";
  os << pad << "  \"knot_dim\": " << k.knot_dim << ",\n";
  os << pad << "  \"cubes\": [\n";
  for (std::size_t i = 0; i < j["cubes"].size(); ++i)
    os << pad << "    " << j["cubes"][i].dump() << (i + 1 < j["cubes"].size() ? "," : "") << "\n";
  os << pad << "  ]\n" << pad << "}";
  return os.str();
}

CubicalKnot knot_from_json(const ordered_json& j, const std::string& text, const std::string& source,
                           int cube_key_offset) {
  CubicalKnot k;
  if (j.contains("name") && j["name"].is_string()) k.name = j["name"].get<std::string>();
  k.ambient_dim = field(j, "ambient_dim", source, line_of_key(text, "ambient_dim", 0), as_int);
  k.knot_dim = field(j, "knot_dim", source, line_of_key(text, "knot_dim", 0), as_int);
  if (k.ambient_dim != k.knot_dim + 2)
    fail(source, line_of_key(text, "ambient_dim", 0),
         "ambient_dim must equal knot_dim + 2 (got " + std::to_string(k.ambient_dim) + " and " +
             std::to_string(k.knot_dim) + ")");
  if (k.ambient_dim < 3 || k.ambient_dim > kMaxDim)
    fail(source, line_of_key(text, "ambient_dim", 0), "ambient_dim must be in 3..7");
  const int cubes_line = line_of_key(text, "cubes", 0);
  if (!j.contains("cubes") || !j["cubes"].is_array()) fail(source, cubes_line, "missing array \"cubes\"");
  if (j["cubes"].empty()) fail(source, cubes_line, "no cubes");
  std::set<Cube> seen;
  for (std::size_t i = 0; i < j["cubes"].size(); ++i) {
    const ordered_json& cj = j["cubes"][i];
    const int line = line_of_key(text, "base", cube_key_offset + static_cast<int>(i));
    const std::string where = "cube " + std::to_string(i + 1) + ": ";
    if (!cj.is_object() || !cj.contains("base") || !cj.contains("axes") || !cj["base"].is_array() ||
        !cj["axes"].is_array())
      fail(source, line, where + "needs arrays \"base\" and \"axes\"");
    Cube c{IPoint(k.ambient_dim), {}};
    if (static_cast<int>(cj["base"].size()) != k.ambient_dim)
      fail(source, line, where + "base has " + std::to_string(cj["base"].size()) +
                             " coordinates, expected " + std::to_string(k.ambient_dim));
    for (int a = 0; a < k.ambient_dim; ++a) {
      if (!cj["base"][a].is_number_integer()) fail(source, line, where + "base coordinates must be integers");
      c.base[a] = cj["base"][a].get<std::int64_t>();
    }
    if (static_cast<int>(cj["axes"].size()) != k.knot_dim)
      fail(source, line, where + "expected " + std::to_string(k.knot_dim) + " axes");
    for (const auto& a : cj["axes"]) {
      if (!a.is_number_integer()) fail(source, line, where + "axes must be integers");
      int v = a.get<int>();
      if (v < 1 || v > k.ambient_dim)
        fail(source, line, where + "axis " + std::to_string(v) + " outside 1.." + std::to_string(k.ambient_dim));
      c.axes.push_back(v - 1);
    }
    std::sort(c.axes.begin(), c.axes.end());
    if (std::adjacent_find(c.axes.begin(), c.axes.end()) != c.axes.end())
      fail(source, line, where + "repeated axis");
    if (!vertex_convention_ok(c.base))
      fail(source, line,
           where + "base vertex violates the lattice convention (first coordinate odd, others even)");
    if (!seen.insert(c).second) fail(source, line, where + "duplicate cube");
    k.cubes.push_back(std::move(c));
  }
  return k;
}

ordered_json ball_json(const Ball<Rational>& b, Provenance p) {
  ordered_json c = ordered_json::array();
  for (int i = 0; i < b.dim(); ++i) c.push_back(q_str(b.center[i]));
  return {{"center", c}, {"radius", q_str(b.radius)}, {"provenance", to_string(p)}};
}

std::string dec(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string word_text(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "." : "") + std::to_string(w[k] + 1);
  return s;
}

}  // namespace

CubicalKnot parse_knot(const std::string& text, const std::string& source) {
  return knot_from_json(parse_json(text, source), text, source, 0);
}

CubicalKnot load_knot(const std::string& path) { return parse_knot(read_file(path), path); }

std::string knot_to_json(const CubicalKnot& k) { return knot_text(k, 0) + "\n"; }

std::string necklace_to_json(const IncreasedNecklace& t) {
  std::ostringstream os;
  os << "{\n  \"dim\": " << t.base.dim << ",\n  \"knot\": " << knot_text(t.base.knot, 2) << ",\n";
  os << "  \"balls\": [\n";
  auto balls = t.balls();
  auto prov = t.provenance();
  for (std::size_t i = 0; i < balls.size(); ++i) {
    ordered_json b = ball_json(balls[i], prov[i]);
    if (i < t.base.pearl_cubes.size()) b["cubes"] = t.base.pearl_cubes[i];
    os << "    " << b.dump() << (i + 1 < balls.size() ? "," : "") << "\n";
  }
  os << "  ],\n  \"notes\": " << ordered_json(t.notes).dump() << "\n}\n";
  return os.str();
}

IncreasedNecklace parse_necklace(const std::string& text, const std::string& source) {
  ordered_json j = parse_json(text, source);
  IncreasedNecklace t;
  t.base.dim = field(j, "dim", source, line_of_key(text, "dim", 0), as_int);
  if (!j.contains("knot")) fail(source, 0, "missing field \"knot\"");
  t.base.knot = knot_from_json(j["knot"], text, source, 0);
  if (t.base.knot.ambient_dim != t.base.dim) fail(source, line_of_key(text, "dim", 0), "dim disagrees with the knot");
  if (!j.contains("balls") || !j["balls"].is_array()) fail(source, 0, "missing array \"balls\"");
  bool added = false;
  for (std::size_t i = 0; i < j["balls"].size(); ++i) {
    const auto& bj = j["balls"][i];
    const int line = line_of_key(text, "center", static_cast<int>(i));
    try {
      Point<Rational> c(t.base.dim);
      if (static_cast<int>(bj.at("center").size()) != t.base.dim) fail(source, line, "center has the wrong dimension");
      for (int a = 0; a < t.base.dim; ++a) c[a] = parse_rational(bj.at("center")[a].get<std::string>());
      Ball<Rational> b = make_ball(c, parse_rational(bj.at("radius").get<std::string>()));
      std::string prov = bj.at("provenance").get<std::string>();
      if (prov == "obc-pearl") {
        if (added) fail(source, line, "pearls must precede added balls");
        t.base.pearls.push_back(b);
        std::vector<int> cubes;
        if (bj.contains("cubes")) cubes = bj["cubes"].get<std::vector<int>>();
        t.base.pearl_cubes.push_back(cubes);
      } else if (prov == "flower-center") {
        added = true;
        t.added.push_back(b);
      } else {
        fail(source, line, "unknown provenance \"" + prov + "\"");
      }
    } catch (const nlohmann::json::exception&) {
      fail(source, line, "ball " + std::to_string(i + 1) + " is malformed");
    } catch (const GeometryError& e) {
      fail(source, line, e.what());
    }
  }
  if (j.contains("notes") && j["notes"].is_array()) t.notes = j["notes"].get<std::vector<std::string>>();
  return t;
}

FreeWord parse_free_word(const std::string& text, int rank) {
  FreeWord w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    int sgn = 1;
    std::string t = tok;
    auto hat = t.find("^-1");
    if (hat != std::string::npos && hat + 3 == t.size()) {
      sgn = -1;
      t = t.substr(0, hat);
    }
    if (t.size() < 2 || t[0] != 'a') throw InputError("bad letter '" + tok + "' in word '" + text + "'");
    int i = 0;
    for (std::size_t k = 1; k < t.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(t[k])))
        throw InputError("bad letter '" + tok + "' in word '" + text + "'");
      i = i * 10 + (t[k] - '0');
    }
    if (i < 1 || i > rank)
      throw InputError(ErrorKind::invalid_monodromy,
                       "letter '" + tok + "' outside the alphabet a1..a" + std::to_string(rank));
    w.push_back(sgn * i);
  }
  return w;
}

FiberedDescriptor parse_descriptor(const std::string& text, const std::string& source) {
  ordered_json j = parse_json(text, source);
  FiberedDescriptor d;
  d.name = field(j, "name", source, line_of_key(text, "name", 0),
                 [](const ordered_json& v) { return v.get<std::string>(); });
  d.knot_dim = field(j, "knot_dim", source, line_of_key(text, "knot_dim", 0), as_int);
  d.rank = field(j, "fiber_rank", source, line_of_key(text, "fiber_rank", 0), as_int);
  const int line = line_of_key(text, "monodromy", 0);
  auto words = field(j, "monodromy", source, line,
                     [](const ordered_json& v) { return v.get<std::vector<std::string>>(); });
  for (const auto& w : words) {
    try {
      d.monodromy.push_back(parse_free_word(w, d.rank));
    } catch (const InputError& e) {
      throw InputError(e.kind(), source + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  return d;
}

std::string descriptor_to_json(const FiberedDescriptor& d) {
  std::vector<std::string> names;
  for (int i = 1; i <= d.rank; ++i) names.push_back("a" + std::to_string(i));
  ordered_json words = ordered_json::array();
  for (const auto& w : d.monodromy) words.push_back(w.empty() ? "" : word_to_string(w, names));
  ordered_json j{{"name", d.name}, {"knot_dim", d.knot_dim}, {"fiber_rank", d.rank}, {"monodromy", words}};
  return j.dump(2) + "\n";
}

void write_ledger_csv(std::ostream& os, const GenerationLedger& l) {
  os << "# dim=" << l.dim << " group=" << l.group << " depth=" << l.depth()
     << " generators=" << l.generators << " min_radius=" << dec(l.options.min_radius)
     << " exact_depth=" << l.options.exact_depth << (l.capped ? " capped" : "") << "\n";
  os << "generation,word_length,word,origin,leaf";
  for (int i = 1; i <= l.dim; ++i) os << ",c" << i;
  os << ",radius";
  for (int i = 1; i <= l.dim; ++i) os << ",c" << i << "_dec";
  os << ",radius_dec\n";
  for (const auto& e : l.entries) {
    os << e.generation << "," << e.word.size() << "," << word_text(e.word) << "," << e.origin + 1 << ","
       << (e.leaf ? 1 : 0);
    for (int i = 0; i < l.dim; ++i) os << "," << (e.exact ? q_str(e.exact->center[i]) : "");
    os << "," << (e.exact ? q_str(e.exact->radius) : "");
    for (int i = 0; i < l.dim; ++i) os << "," << dec(e.ball.center[i]);
    os << "," << dec(e.ball.radius) << "\n";
  }
}

void write_cloud_csv(std::ostream& os, const LimitCloud& c) {
  os << "# dim=" << c.dim << " epsilon=" << dec(c.epsilon) << " points=" << c.points.size() << "\n";
  os << "generation,word_length";
  for (int i = 1; i <= c.dim; ++i) os << ",c" << i;
  os << ",radius";
  for (int i = 1; i <= c.dim; ++i) os << ",c" << i << "_dec";
  os << ",radius_dec\n";
  for (const auto& p : c.points) {
    os << p.generation << "," << p.word_length;
    for (int i = 0; i < c.dim; ++i) os << "," << (p.exact ? q_str(p.exact->center[i]) : "");
    os << "," << (p.exact ? q_str(p.exact->radius) : "");
    for (int i = 0; i < c.dim; ++i) os << "," << dec(p.center[i]);
    os << "," << dec(p.radius) << "\n";
  }
}

LimitCloud read_cloud_csv(std::istream& is) {
  LimitCloud c;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# dim=", 0) != 0) throw InputError("cloud CSV: missing header");
  {
    std::istringstream h(line.substr(2));
    std::string kv;
    while (h >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) continue;
      std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
      if (k == "dim") c.dim = std::stoi(v);
      if (k == "epsilon") c.epsilon = std::stod(v);
    }
  }
  if (c.dim < 1 || c.dim > kMaxDim) throw InputError("cloud CSV: bad dimension");
  std::getline(is, line);  // column names
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (line.back() == ',') cols.push_back("");
    const std::size_t want = 2 + 2 * (c.dim + 1);
    if (cols.size() != want) throw InputError("cloud CSV: wrong column count");
    CloudPoint p;
    p.generation = std::stoi(cols[0]);
    p.word_length = std::stoi(cols[1]);
    p.center = Point<double>(c.dim);
    for (int i = 0; i < c.dim; ++i) p.center[i] = std::stod(cols[2 + c.dim + 1 + i]);
    p.radius = std::stod(cols.back());
    c.points.push_back(p);
  }
  return c;
}

void write_obj(std::ostream& os, const LimitCloud& cloud, int level) {
  if (cloud.dim != 3) throw InputError("mesh export is available for dimension 3 only");
  if (level < 0 || level > 5) throw InputError("tessellation level must be in 0..5");
  // unit icosphere
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<std::array<double, 3>> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
                                          {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
                                          {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  std::vector<std::array<int, 3>> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                       {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                       {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                       {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  auto norm = [](std::array<double, 3> p) {
    double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return std::array<double, 3>{p[0] / n, p[1] / n, p[2] / n};
  };
  for (auto& p : v) p = norm(p);
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      v.push_back(norm({(v[a][0] + v[b][0]) / 2, (v[a][1] + v[b][1]) / 2, (v[a][2] + v[b][2]) / 2}));
      return mid[key] = static_cast<int>(v.size()) - 1;
    };
    std::vector<std::array<int, 3>> g;
    for (auto [a, b, c] : f) {
      int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
      g.push_back({a, ab, ca});
      g.push_back({b, bc, ab});
      g.push_back({c, ca, bc});
      g.push_back({ab, bc, ca});
    }
    f = std::move(g);
  }
  os << "# " << cloud.points.size() << " balls, icosphere level " << level << "\n";
  std::size_t base = 1;
  for (const auto& p : cloud.points) {
    for (const auto& q : v)
      os << "v " << dec(p.center[0] + p.radius * q[0]) << " " << dec(p.center[1] + p.radius * q[1]) << " "
         << dec(p.center[2] + p.radius * q[2]) << "\n";
    for (auto [a, b, c] : f) os << "f " << base + a << " " << base + b << " " << base + c << "\n";
    base += v.size();
  }
}

std::string complex_to_text(const SimplicialComplex& c) {
  std::ostringstream os;
  os << "vertices " << c.vertex_count << "\n";
  for (int k = 0; k <= c.top_dim(); ++k) {
    os << "dim " << k << " count " << c.simplices[k].size() << "\n";
    for (const auto& s : c.simplices[k]) {
      for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
      os << "\n";
    }
  }
  if (!c.flagged.empty()) os << "flagged " << c.flagged.size() << "\n";
  return os.str();
}

}  // namespace pearl
