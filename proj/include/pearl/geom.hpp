#pragma once

// Conformal geometry of round balls in R^d (2 <= d <= 7).
//
// Every routine is a template over the scalar field:
//   Rational      exact mode, no tolerance anywhere
//   double        float mode, absolute tolerance on squared-distance tests
//   std::int64_t  exact scaled-lattice mode (classification only)

#include "pearl/error.hpp"
#include "pearl/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pearl {

inline constexpr int kMaxDim = 7;

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr bool field = true;
  static constexpr const char* name = "exact";
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr bool field = true;
  static constexpr const char* name = "float";
};

template <>
struct ScalarTraits<std::int64_t> {
  static constexpr bool exact = true;
  static constexpr bool field = false;
  static constexpr const char* name = "lattice";
};

struct Tolerance {
  double abs = 1e-9;
};

template <class T>
int sign(const T& v, const Tolerance& tol = {}) {
  if constexpr (ScalarTraits<T>::exact) {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  } else {
    return v > tol.abs ? 1 : (v < -tol.abs ? -1 : 0);
  }
}

template <class T>
int compare(const T& a, const T& b, const Tolerance& tol = {}) {
  return sign(T(a - b), tol);
}

template <class T>
struct Point {
  std::array<T, kMaxDim> x{};
  int dim = 0;

  Point() = default;
  explicit Point(int d) : dim(d) {}
  Point(std::initializer_list<T> coords) : dim(static_cast<int>(coords.size())) {
    std::copy(coords.begin(), coords.end(), x.begin());
  }

  T& operator[](int i) { return x[i]; }
  const T& operator[](int i) const { return x[i]; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.dim != b.dim) return false;
    for (int i = 0; i < a.dim; ++i)
      if (!(a.x[i] == b.x[i])) return false;
    return true;
  }
};

template <class T>
Point<T> operator-(const Point<T>& a, const Point<T>& b) {
  Point<T> r(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T>
Point<T> operator+(const Point<T>& a, const Point<T>& b) {
  Point<T> r(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
Point<T> scaled(const Point<T>& a, const T& k) {
  Point<T> r(a.dim);
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] * k;
  return r;
}

template <class T>
T dot(const Point<T>& a, const Point<T>& b) {
  T s = 0;
  for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T dist2(const Point<T>& a, const Point<T>& b) {
  T s = 0;
  for (int i = 0; i < a.dim; ++i) {
    T t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

/// Lexicographic order on coordinates; the canonical order used for reports.
template <class T>
bool lex_less(const Point<T>& a, const Point<T>& b) {
  for (int i = 0; i < a.dim; ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

template <class T>
Point<double> to_double(const Point<T>& p) {
  Point<double> r(p.dim);
  for (int i = 0; i < p.dim; ++i) r[i] = pearl::to_double(p[i]);
  return r;
}

inline double to_double(std::int64_t v) { return static_cast<double>(v); }

std::string to_string(const Point<Rational>& p);
std::string to_string(const Point<double>& p);

enum class Openness { closed, open };

template <class T>
struct Ball {
  Point<T> center;
  T radius = 1;
  Openness openness = Openness::closed;

  int dim() const { return center.dim; }

  friend bool operator==(const Ball& a, const Ball& b) {
    return a.center == b.center && a.radius == b.radius;
  }
};

template <class T>
Ball<T> make_ball(Point<T> center, T radius, Openness openness = Openness::closed) {
  if (center.dim < 1 || center.dim > kMaxDim)
    throw GeometryError(ErrorKind::unsupported_dimension, "ball dimension out of range");
  if (!(radius > 0)) throw GeometryError(ErrorKind::input, "ball radius must be positive");
  if constexpr (!ScalarTraits<T>::exact) {
    for (int i = 0; i < center.dim; ++i)
      if (!std::isfinite(center[i]))
        throw GeometryError(ErrorKind::non_finite, "non-finite ball center");
    if (!std::isfinite(radius)) throw GeometryError(ErrorKind::non_finite, "non-finite radius");
  }
  return Ball<T>{std::move(center), std::move(radius), openness};
}

Ball<double> to_double(const Ball<Rational>& b);
std::string to_string(const Ball<Rational>& b);

template <class T>
bool ball_less(const Ball<T>& a, const Ball<T>& b) {
  if (lex_less(a.center, b.center)) return true;
  if (lex_less(b.center, a.center)) return false;
  return a.radius < b.radius;
}

template <class T>
void require_same_dim(const Point<T>& a, const Point<T>& b) {
  if (a.dim != b.dim)
    throw GeometryError(ErrorKind::dimension_mismatch,
                        "dimension mismatch: " + std::to_string(a.dim) + " vs " +
                            std::to_string(b.dim));
}

template <class T>
void require_finite(const Point<T>& p) {
  if constexpr (!ScalarTraits<T>::exact) {
    for (int i = 0; i < p.dim; ++i)
      if (!std::isfinite(p[i])) throw GeometryError(ErrorKind::non_finite, "non-finite result");
  }
}

// ---------------------------------------------------------------------------
// Inversions

/// Inversion in the mirror sphere: x -> c + r^2 (x - c) / |x - c|^2.
template <class T>
Point<T> invert_point(const Ball<T>& mirror, const Point<T>& x, const Tolerance& tol = {}) {
  static_assert(ScalarTraits<T>::field);
  require_same_dim(mirror.center, x);
  Point<T> v = x - mirror.center;
  T d2 = dot(v, v);
  if (sign(d2, tol) == 0)
    throw GeometryError(ErrorKind::center_input, "inversion of the mirror center");
  T k = mirror.radius * mirror.radius / d2;
  Point<T> r = mirror.center + scaled(v, k);
  require_finite(r);
  return r;
}

/// Image of the sphere bounding `b`. When the mirror center lies inside `b`
/// the image region is the exterior of the returned ball; see
/// `contains_mirror_center`.
template <class T>
Ball<T> invert_ball(const Ball<T>& mirror, const Ball<T>& b, const Tolerance& tol = {}) {
  static_assert(ScalarTraits<T>::field);
  require_same_dim(mirror.center, b.center);
  Point<T> v = b.center - mirror.center;
  T denom = dot(v, v) - b.radius * b.radius;
  if (sign(denom, tol) == 0)
    throw GeometryError(ErrorKind::half_space, "mirror center on the ball boundary");
  T k = mirror.radius * mirror.radius / denom;
  T abs_k = k < 0 ? T(-k) : k;
  Ball<T> r{mirror.center + scaled(v, k), T(abs_k * b.radius), b.openness};
  require_finite(r.center);
  return r;
}

template <class T>
bool contains_mirror_center(const Ball<T>& mirror, const Ball<T>& b) {
  return dist2(mirror.center, b.center) < b.radius * b.radius;
}

// ---------------------------------------------------------------------------
// Pair classification

enum class PairKind { disjoint, tangent, orthogonal, equal, nested, transversal };

const char* to_string(PairKind k);

template <class T>
struct PairClass {
  PairKind kind;
  T dist2;  // |c1 - c2|^2
};

template <class T>
PairClass<T> classify_pair(const Ball<T>& a, const Ball<T>& b, const Tolerance& tol = {}) {
  require_same_dim(a.center, b.center);
  T d2 = dist2(a.center, b.center);
  const T& r1 = a.radius;
  const T& r2 = b.radius;
  T sum = r1 + r2;
  T diff = r1 - r2;
  T sum2 = sum * sum;
  T diff2 = diff * diff;
  T orth = r1 * r1 + r2 * r2;
  if (sign(d2, tol) == 0 && sign(diff, tol) == 0) return {PairKind::equal, d2};
  if (compare(d2, orth, tol) == 0) return {PairKind::orthogonal, d2};
  int c_sum = compare(d2, sum2, tol);
  if (c_sum == 0) return {PairKind::tangent, d2};
  if (c_sum > 0) return {PairKind::disjoint, d2};
  int c_diff = compare(d2, diff2, tol);
  if (c_diff == 0) return {PairKind::tangent, d2};
  if (c_diff < 0) return {PairKind::nested, d2};
  return {PairKind::transversal, d2};
}

// ---------------------------------------------------------------------------
// Common intersection

enum class IntersectionStatus { nonempty, single_point, empty, indeterminate };

const char* to_string(IntersectionStatus s);

template <class T>
struct IntersectionWitness {
  IntersectionStatus status = IntersectionStatus::indeterminate;
  Point<T> point;  // minimizer of max_i (|x - c_i|^2 - r_i^2)
  T value = 0;     // the minimum value
  std::vector<int> active;

  bool empty() const { return status == IntersectionStatus::empty; }
};

namespace detail {

// Solves the square system g * mu = b in place. Returns false when singular.
template <class T>
bool solve_linear(std::vector<std::vector<T>>& g, std::vector<T>& b, const Tolerance& tol) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    if constexpr (ScalarTraits<T>::exact) {
      for (int r = col; r < n; ++r)
        if (sgn(g[r][col]) != 0) {
          piv = r;
          break;
        }
    } else {
      double best = 1e-12;
      for (int r = col; r < n; ++r)
        if (std::abs(g[r][col]) > best) {
          best = std::abs(g[r][col]);
          piv = r;
        }
    }
    if (piv < 0) return false;
    std::swap(g[piv], g[col]);
    std::swap(b[piv], b[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      if constexpr (ScalarTraits<T>::exact) {
        if (sgn(g[r][col]) == 0) continue;
      }
      T f = g[r][col] / g[col][col];
      for (int c = col; c < n; ++c) g[r][c] -= f * g[col][c];
      b[r] -= f * b[col];
    }
  }
  for (int r = 0; r < n; ++r) b[r] /= g[r][r];
  (void)tol;
  return true;
}

template <class T>
T power(const Ball<T>& b, const Point<T>& x) {
  return dist2(x, b.center) - b.radius * b.radius;
}

// Candidate minimizer for the active subset `s`: the point of the affine hull
// of the active centers with equal power to all of them. Valid when it is a
// convex combination of those centers and no other ball has larger power.
template <class T>
std::optional<std::pair<Point<T>, T>> try_active_set(std::span<const Ball<T>> balls,
                                                     const std::vector<int>& s,
                                                     const Tolerance& tol) {
  const int k = static_cast<int>(s.size());
  const Ball<T>& b0 = balls[s[0]];
  std::vector<Point<T>> u;
  u.reserve(k - 1);
  for (int m = 1; m < k; ++m) u.push_back(balls[s[m]].center - b0.center);
  std::vector<std::vector<T>> g(k - 1, std::vector<T>(k - 1));
  std::vector<T> rhs(k - 1);
  for (int m = 0; m < k - 1; ++m) {
    for (int l = 0; l < k - 1; ++l) g[m][l] = dot(u[m], u[l]);
    const T& rm = balls[s[m + 1]].radius;
    rhs[m] = (dot(u[m], u[m]) - rm * rm + b0.radius * b0.radius) / 2;
  }
  if (k > 1 && !solve_linear(g, rhs, tol)) return std::nullopt;
  T lambda0 = 1;
  for (int m = 0; m < k - 1; ++m) {
    if (sign(rhs[m], tol) < 0) return std::nullopt;
    lambda0 -= rhs[m];
  }
  if (sign(lambda0, tol) < 0) return std::nullopt;
  Point<T> x = b0.center;
  for (int m = 0; m < k - 1; ++m) x = x + scaled(u[m], rhs[m]);
  T v = power(b0, x);
  for (int j = 0; j < static_cast<int>(balls.size()); ++j) {
    if (std::find(s.begin(), s.end(), j) != s.end()) continue;
    if (compare(power(balls[j], x), v, tol) > 0) return std::nullopt;
  }
  return std::make_pair(std::move(x), std::move(v));
}

}  // namespace detail

/// Decides whether the balls share a point by minimizing the strongly convex
/// function g(x) = max_i (|x - c_i|^2 - r_i^2). Its minimizer is the
/// equal-power point of some active subset lying in the convex hull of that
/// subset's centers, so enumerating active subsets yields the exact optimum in
/// exact mode. Open mode: nonempty iff min g < 0. Closed mode: nonempty iff
/// min g <= 0, and min g = 0 means the intersection is exactly the minimizer.
/// Float mode reports indeterminate if no subset passes within tolerance.
template <class T>
IntersectionWitness<T> common_intersection(std::span<const Ball<T>> balls, Openness mode,
                                           const Tolerance& tol = {}) {
  static_assert(ScalarTraits<T>::field);
  if (balls.empty()) throw GeometryError(ErrorKind::input, "common_intersection of no balls");
  const int d = balls[0].dim();
  for (const auto& b : balls) require_same_dim(balls[0].center, b.center);
  const int n = static_cast<int>(balls.size());
  IntersectionWitness<T> w;
  const int kmax = std::min(n, d + 1);
  std::vector<int> s;
  for (int k = 1; k <= kmax; ++k) {
    s.resize(k);
    for (int i = 0; i < k; ++i) s[i] = i;
    while (true) {
      if (auto hit = detail::try_active_set(balls, s, tol)) {
        w.point = std::move(hit->first);
        w.value = std::move(hit->second);
        w.active = s;
        int sg = sign(w.value, tol);
        if (mode == Openness::open)
          w.status = sg < 0 ? IntersectionStatus::nonempty : IntersectionStatus::empty;
        else
          w.status = sg < 0 ? IntersectionStatus::nonempty
                     : sg == 0 ? IntersectionStatus::single_point
                               : IntersectionStatus::empty;
        return w;
      }
      int i = k - 1;
      while (i >= 0 && s[i] == n - k + i) --i;
      if (i < 0) break;
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
  }
  w.status = IntersectionStatus::indeterminate;
  return w;
}

template <class T>
IntersectionWitness<T> common_intersection(const std::vector<Ball<T>>& balls, Openness mode,
                                           const Tolerance& tol = {}) {
  return common_intersection(std::span<const Ball<T>>(balls), mode, tol);
}

// ---------------------------------------------------------------------------
// Containment in the interior of a union of balls

/// Deterministic Halton-based unit directions in R^d.
std::vector<Point<double>> sphere_directions(int d, int count, std::uint64_t seed = 0);

struct RegionOptions {
  Tolerance tol;
  int samples = 0;  // 0 means 4^d
  std::uint64_t seed = 0;
  double margin = 0.0;  // required slack on every sample
  std::span<const Point<double>> directions;  // precomputed; overrides samples/seed
};

struct Containment {
  bool inside = false;
  bool exact = false;    // decided by the single-ball fast path
  double margin = 0.0;   // min over samples of best slack (sampled path)
  int witness = -1;      // cover ball for the exact fast path
  int samples = 0;
  std::optional<Point<double>> uncovered;
};

template <class T>
bool strictly_inside_ball(const Ball<T>& b, const Ball<T>& c, const Tolerance& tol = {}) {
  T room = c.radius - b.radius;
  if (sign(room, tol) <= 0) return false;
  return compare(T(room * room), dist2(b.center, c.center), tol) > 0;
}

/// True when b lies in the interior of the union of `cover`. The fast path is
/// exact: b inside a single cover ball with |c_b - c| + r_b < r. Otherwise a
/// sampled certificate over the center and boundary of b is used.
template <class T>
Containment ball_in_region(const Ball<T>& b, std::span<const Ball<T>> cover,
                           const RegionOptions& opts = {}) {
  Containment out;
  for (int i = 0; i < static_cast<int>(cover.size()); ++i) {
    require_same_dim(b.center, cover[i].center);
    if (strictly_inside_ball(b, cover[i], opts.tol)) {
      out.inside = true;
      out.exact = true;
      out.witness = i;
      return out;
    }
  }
  std::vector<Point<double>> owned;
  std::span<const Point<double>> dirs = opts.directions;
  if (dirs.empty()) {
    int count = opts.samples > 0 ? opts.samples : 1 << (2 * b.dim());
    owned = sphere_directions(b.dim(), count, opts.seed);
    dirs = owned;
  }
  const Point<double> c = to_double(b.center);
  const double rho = pearl::to_double(b.radius);
  std::vector<Point<double>> cc;
  std::vector<double> cr;
  cc.reserve(cover.size());
  for (const auto& k : cover) {
    cc.push_back(to_double(k.center));
    cr.push_back(pearl::to_double(k.radius));
  }
  double worst = std::numeric_limits<double>::infinity();
  auto probe = [&](const Point<double>& y) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cc.size(); ++i)
      best = std::max(best, cr[i] - std::sqrt(dist2(y, cc[i])));
    if (best < worst) {
      worst = best;
      if (!(best > opts.margin)) out.uncovered = y;
    }
    ++out.samples;
  };
  probe(c);
  for (const auto& u : dirs) {
    Point<double> y(c.dim);
    for (int i = 0; i < c.dim; ++i) y[i] = c[i] + rho * u[i];
    probe(y);
  }
  out.margin = cover.empty() ? -rho : worst;
  out.inside = !cover.empty() && worst > opts.margin;
  if (out.inside) out.uncovered.reset();
  return out;
}

template <class T>
Containment ball_in_region(const Ball<T>& b, const std::vector<Ball<T>>& cover,
                           const RegionOptions& opts = {}) {
  return ball_in_region(b, std::span<const Ball<T>>(cover), opts);
}

/// Closed axis-aligned box.
template <class T>
struct Box {
  Point<T> lo;
  Point<T> hi;
  int dim() const { return lo.dim; }
};

/// Squared distance from a point to an axis-aligned box.
template <class T>
T dist2_to_box(const Point<T>& p, const Point<T>& lo, const Point<T>& hi) {
  T s = 0;
  for (int i = 0; i < p.dim; ++i) {
    T t = 0;
    if (p[i] < lo[i]) t = lo[i] - p[i];
    else if (hi[i] < p[i]) t = p[i] - hi[i];
    s += t * t;
  }
  return s;
}

}  // namespace pearl
