#pragma once

// Uniform grid over axis-aligned boxes; used only to prune candidate pairs,
// never to decide a predicate.

#include "pearl/geom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

namespace pearl {

class GridIndex {
 public:
  GridIndex(int dim, double cell) : dim_(dim), cell_(cell) {}

  void insert(const Point<double>& lo, const Point<double>& hi, int id) {
    for_cells(lo, hi, [&](const Key& k) { cells_[k].push_back(id); });
  }

  /// Ids whose boxes share a cell with [lo, hi], sorted and unique.
  std::vector<int> query(const Point<double>& lo, const Point<double>& hi) const {
    std::vector<int> out;
    for_cells(lo, hi, [&](const Key& k) {
      auto it = cells_.find(k);
      if (it != cells_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  template <class T>
  void insert_ball(const Ball<T>& b, int id) {
    auto [lo, hi] = bounds(b);
    insert(lo, hi, id);
  }

  template <class T>
  std::vector<int> query_ball(const Ball<T>& b, double pad = 0.0) const {
    auto [lo, hi] = bounds(b, pad);
    return query(lo, hi);
  }

  template <class T>
  static std::pair<Point<double>, Point<double>> bounds(const Ball<T>& b, double pad = 0.0) {
    Point<double> c = to_double(b.center);
    double r = pearl::to_double(b.radius) + pad;
    Point<double> lo(c.dim), hi(c.dim);
    for (int i = 0; i < c.dim; ++i) {
      lo[i] = c[i] - r;
      hi[i] = c[i] + r;
    }
    return {lo, hi};
  }

 private:
  using Key = std::vector<long long>;

  template <class F>
  void for_cells(const Point<double>& lo, const Point<double>& hi, F&& f) const {
    Key a(dim_), b(dim_), k(dim_);
    for (int i = 0; i < dim_; ++i) {
      // small slack keeps boundary-touching boxes in a shared cell
      a[i] = static_cast<long long>(std::floor((lo[i] - 1e-9) / cell_));
      b[i] = static_cast<long long>(std::floor((hi[i] + 1e-9) / cell_));
      k[i] = a[i];
    }
    while (true) {
      f(k);
      int i = dim_ - 1;
      while (i >= 0 && ++k[i] > b[i]) {
        k[i] = a[i];
        --i;
      }
      if (i < 0) return;
    }
  }

  int dim_;
  double cell_;
  std::map<Key, std::vector<int>> cells_;
};

}  // namespace pearl
