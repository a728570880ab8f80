#include "pearl/geom.hpp"

#include <cmath>
#include <sstream>

namespace pearl {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::center_input: return "center-input";
    case ErrorKind::half_space: return "half-space";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::unsupported_dimension: return "unsupported-dimension";
    case ErrorKind::non_finite: return "non-finite";
    case ErrorKind::inconsistent_dimension: return "inconsistent-dimension";
    case ErrorKind::not_face_closed: return "not-face-closed";
    case ErrorKind::unknown_name: return "unknown-name";
    case ErrorKind::audit_failed: return "audit-failed";
    case ErrorKind::explosion_guard: return "explosion-guard";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::trivial_descriptor: return "trivial-descriptor";
    case ErrorKind::invalid_monodromy: return "invalid-monodromy";
    case ErrorKind::input: return "input";
    case ErrorKind::overflow: return "overflow";
  }
  return "unknown";
}

const char* to_string(PairKind k) {
  switch (k) {
    case PairKind::disjoint: return "disjoint";
    case PairKind::tangent: return "tangent";
    case PairKind::orthogonal: return "orthogonal";
    case PairKind::equal: return "equal";
    case PairKind::nested: return "nested";
    case PairKind::transversal: return "transversal-other";
  }
  return "unknown";
}

const char* to_string(IntersectionStatus s) {
  switch (s) {
    case IntersectionStatus::nonempty: return "nonempty";
    case IntersectionStatus::single_point: return "single-point";
    case IntersectionStatus::empty: return "empty";
    case IntersectionStatus::indeterminate: return "indeterminate";
  }
  return "unknown";
}

std::string to_string(const Point<Rational>& p) {
  std::string s = "(";
  for (int i = 0; i < p.dim; ++i) {
    if (i) s += ",";
    s += to_string(p[i]);
  }
  return s + ")";
}

std::string to_string(const Point<double>& p) {
  std::ostringstream os;
  os.precision(12);
  os << "(";
  for (int i = 0; i < p.dim; ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

Ball<double> to_double(const Ball<Rational>& b) {
  return Ball<double>{to_double(b.center), b.radius.get_d(), b.openness};
}

std::string to_string(const Ball<Rational>& b) {
  return "B(" + to_string(b.center) + ", " + to_string(b.radius) + ")";
}

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

}  // namespace

std::vector<Point<double>> sphere_directions(int d, int count, std::uint64_t seed) {
  std::vector<Point<double>> out;
  out.reserve(count);
  // Axis directions first: tangency points of lattice balls sit on them.
  for (int i = 0; i < d && static_cast<int>(out.size()) < count; ++i)
    for (double s : {1.0, -1.0}) {
      if (static_cast<int>(out.size()) >= count) break;
      Point<double> p(d);
      p[i] = s;
      out.push_back(p);
    }
  const int pairs = (d + 1) / 2;
  for (std::uint64_t idx = seed + 1; static_cast<int>(out.size()) < count; ++idx) {
    Point<double> p(d);
    double norm2 = 0;
    for (int k = 0; k < pairs; ++k) {
      double u1 = radical_inverse(idx, kPrimes[2 * k]);
      double u2 = radical_inverse(idx, kPrimes[2 * k + 1]);
      if (u1 <= 0) u1 = 0.5 / (idx + 1);
      double rad = std::sqrt(-2.0 * std::log(u1));
      double th = 2.0 * M_PI * u2;
      p[2 * k] = rad * std::cos(th);
      if (2 * k + 1 < d) p[2 * k + 1] = rad * std::sin(th);
    }
    for (int i = 0; i < d; ++i) norm2 += p[i] * p[i];
    if (norm2 < 1e-24) continue;
    double inv = 1.0 / std::sqrt(norm2);
    for (int i = 0; i < d; ++i) p[i] *= inv;
    out.push_back(p);
  }
  return out;
}

}  // namespace pearl
