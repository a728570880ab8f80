#include "pearl/fiber.hpp"

#include "pearl/error.hpp"

#include <cstdlib>
#include <sstream>

namespace pearl {

std::string word_to_string(const FreeWord& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += " ";
    out += names[std::abs(w[k]) - 1];
    if (w[k] < 0) out += "^-1";
  }
  return out;
}

FreeWord invert(const FreeWord& w) {
  FreeWord r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

FreeWord reduce(const FreeWord& w) {
  FreeWord out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

std::vector<std::vector<long>> abelianized_monodromy(const FiberedDescriptor& d) {
  std::vector<std::vector<long>> m(d.rank, std::vector<long>(d.rank, 0));
  for (int i = 0; i < d.rank; ++i)
    for (int x : d.monodromy[i]) m[i][std::abs(x) - 1] += x > 0 ? 1 : -1;
  return m;
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> a) {
  const int n = static_cast<int>(a.size());
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace

void validate_descriptor(const FiberedDescriptor& d) {
  auto bad = [&](const std::string& why) {
    throw InputError(ErrorKind::invalid_monodromy, "descriptor '" + d.name + "': " + why);
  };
  if (d.knot_dim < 1) bad("knot dimension must be at least 1");
  if (d.rank < 0) bad("negative fiber rank");
  if (static_cast<int>(d.monodromy.size()) != d.rank)
    bad("expected " + std::to_string(d.rank) + " monodromy words, got " +
        std::to_string(d.monodromy.size()));
  for (int i = 0; i < d.rank; ++i) {
    if (d.monodromy[i].empty()) bad("monodromy word " + std::to_string(i + 1) + " is empty");
    for (int x : d.monodromy[i])
      if (x == 0 || std::abs(x) > d.rank)
        bad("letter " + std::to_string(x) + " outside the alphabet a1..a" + std::to_string(d.rank));
  }
  if (d.rank == 0) return;
  auto m = abelianized_monodromy(d);
  std::vector<std::vector<Rational>> q(d.rank, std::vector<Rational>(d.rank));
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) q[i][j] = m[i][j];
  Rational det = determinant(q);
  if (det != 1 && det != -1) bad("abelianized monodromy has determinant " + to_string(det));
}

FiberedDescriptor spin(const FiberedDescriptor& d) {
  FiberedDescriptor s = d;
  s.knot_dim = d.knot_dim + 1;
  return s;
}

BigInt fiber_sum_rank(const FiberedDescriptor& d, const BigInt& copies) {
  if (copies < 1) throw InputError("fiber_sum_rank needs at least one copy");
  return BigInt(d.rank) * copies;
}

std::string LimitPresentation::to_string() const {
  std::vector<std::string> names = generators;
  std::ostringstream os;
  os << "<";
  for (std::size_t k = 0; k < names.size(); ++k) os << (k ? ", " : "") << names[k];
  os << " |";
  for (std::size_t k = 0; k < relations.size(); ++k)
    os << (k ? ", " : " ") << word_to_string(relations[k].lhs, names) << " = "
       << word_to_string(relations[k].rhs, names);
  os << ">";
  return os.str();
}

LimitPresentation limit_presentation(const FiberedDescriptor& d, int depth, CopyReading reading) {
  if (depth < 1) throw InputError("limit_presentation needs depth >= 1");
  validate_descriptor(d);
  LimitPresentation p;
  p.depth = depth;
  p.rank = d.rank;
  p.reading = reading;
  const int m = d.rank;
  for (int j = 1; j <= depth; ++j)
    for (int i = 1; i <= m; ++i) p.generators.push_back("a" + std::to_string(i) + "^" + std::to_string(j));
  p.generators.push_back("c");
  const int c = p.stable_letter();

  // psi^j(a_i) over the fiber alphabet
  std::vector<FreeWord> power(m);
  for (int i = 0; i < m; ++i) power[i] = {i + 1};
  auto apply = [&](const std::vector<FreeWord>& w) {
    std::vector<FreeWord> out(m);
    for (int i = 0; i < m; ++i) {
      FreeWord r;
      for (int x : w[i]) {
        const FreeWord& img = d.monodromy[std::abs(x) - 1];
        if (x > 0)
          r.insert(r.end(), img.begin(), img.end());
        else {
          FreeWord inv = invert(img);
          r.insert(r.end(), inv.begin(), inv.end());
        }
      }
      out[i] = reduce(r);
    }
    return out;
  };

  for (int j = 1; j <= depth; ++j) {
    const std::vector<FreeWord>* images = &d.monodromy;
    if (reading == CopyReading::iterate) {
      power = apply(power);
      images = &power;
    }
    const int offset = (j - 1) * m;
    for (int i = 0; i < m; ++i) {
      Relation r;
      r.lhs = {c, offset + i + 1, -c};
      for (int x : (*images)[i]) r.rhs.push_back(x > 0 ? offset + x : x - offset);
      p.relations.push_back(std::move(r));
    }
  }
  return p;
}

HomologyGroup abelianization(const LimitPresentation& p) {
  IntMatrix mat;
  mat.rows = static_cast<int>(p.relations.size());
  mat.cols = static_cast<int>(p.generators.size());
  for (int r = 0; r < mat.rows; ++r) {
    const Relation& rel = p.relations[r];
    for (int x : rel.lhs) mat.entries.push_back({r, std::abs(x) - 1, x > 0 ? 1 : -1});
    for (int x : rel.rhs) mat.entries.push_back({r, std::abs(x) - 1, x > 0 ? -1 : 1});
  }
  SmithForm s = smith_form(mat);
  HomologyGroup g;
  g.rank = mat.cols - s.rank;
  g.torsion = s.factors;
  return g;
}

AuditReport WildnessCertificate::report() const {
  AuditReport rep;
  rep.title = "wildness certificate (" + name + ")";
  std::ostringstream os;
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    os << (k ? " " : "") << "J=" << rows[k].depth << ":" << rows[k].fiber_generators.get_str();
    rows_json.push_back({{"depth", rows[k].depth}, {"fiber_generators", rows[k].fiber_generators.get_str()}});
  }
  rep.add("fiber generator counts strictly increasing", pass, os.str());
  rep.data["rows"] = rows_json;
  return rep;
}

WildnessCertificate wildness_certificate(const FiberedDescriptor& d, const std::vector<int>& depths) {
  validate_descriptor(d);
  if (d.rank == 0)
    throw Error(ErrorKind::trivial_descriptor,
                "descriptor '" + d.name + "' has fiber rank 0 (disk fibers): no wildness claim");
  if (depths.empty()) throw InputError("wildness certificate needs at least one depth");
  for (std::size_t k = 0; k < depths.size(); ++k) {
    if (depths[k] < 1) throw InputError("depths must be positive");
    if (k && depths[k] <= depths[k - 1]) throw InputError("depths must be strictly increasing");
  }
  WildnessCertificate w;
  w.name = d.name;
  for (int j : depths) w.rows.push_back({j, BigInt(d.rank) * j});
  w.pass = true;
  for (std::size_t k = 1; k < w.rows.size(); ++k)
    if (!(w.rows[k].fiber_generators > w.rows[k - 1].fiber_generators)) w.pass = false;
  return w;
}

}  // namespace pearl
