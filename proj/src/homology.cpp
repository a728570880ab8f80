#include "pearl/homology.hpp"

#include "pearl/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>

namespace pearl {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::overflow, "integer overflow in Smith form");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::overflow, "integer overflow in Smith form");
  return r;
}

std::int64_t iabs(std::int64_t v) {
  if (v == std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorKind::overflow, "integer overflow in Smith form");
  return v < 0 ? -v : v;
}

using Dense = std::vector<std::vector<std::int64_t>>;

// Classic Smith reduction on a small dense matrix; returns diagonal entries.
std::vector<std::int64_t> dense_smith(Dense a) {
  std::vector<std::int64_t> diag;
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return diag;
  const int cols = static_cast<int>(a[0].size());
  for (int t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      int pr = -1, pc = -1;
      std::int64_t best = 0;
      for (int r = t; r < rows; ++r)
        for (int c = t; c < cols; ++c)
          if (a[r][c] != 0 && (best == 0 || iabs(a[r][c]) < best)) {
            best = iabs(a[r][c]);
            pr = r;
            pc = c;
          }
      if (pr < 0) return diag;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (int r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0) continue;
        std::int64_t q = a[r][t] / a[t][t];
        for (int c = t; c < cols; ++c) a[r][c] = checked_sub(a[r][c], checked_mul(q, a[t][c]));
        if (a[r][t] != 0) clean = false;
      }
      for (int c = t + 1; c < cols; ++c) {
        if (a[t][c] == 0) continue;
        std::int64_t q = a[t][c] / a[t][t];
        for (int r = t; r < rows; ++r) a[r][c] = checked_sub(a[r][c], checked_mul(q, a[r][t]));
        if (a[t][c] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold a row with a non-multiple into row t and retry.
      int bad = -1;
      for (int r = t + 1; r < rows && bad < 0; ++r)
        for (int c = t + 1; c < cols; ++c)
          if (a[r][c] % a[t][t] != 0) {
            bad = r;
            break;
          }
      if (bad < 0) break;
      for (int c = t; c < cols; ++c) a[t][c] = a[t][c] + a[bad][c];
    }
    diag.push_back(iabs(a[t][t]));
  }
  return diag;
}

}  // namespace

SmithForm smith_form(const IntMatrix& m) {
  std::vector<std::map<int, std::int64_t>> rows(m.rows);
  for (const auto& e : m.entries) {
    if (e.row < 0 || e.row >= m.rows || e.col < 0 || e.col >= m.cols)
      throw Error(ErrorKind::input, "matrix entry out of range");
    auto& v = rows[e.row][e.col];
    v += e.value;
    if (v == 0) rows[e.row].erase(e.col);
  }
  std::vector<std::set<int>> col_rows(m.cols);
  for (int r = 0; r < m.rows; ++r)
    for (auto& [c, v] : rows[r]) col_rows[c].insert(r);

  SmithForm out;
  std::vector<char> alive(m.rows, 1);
  while (true) {
    int pr = -1, pc = -1;
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (int r = 0; r < m.rows; ++r) {
      if (!alive[r] || rows[r].empty()) continue;
      for (auto& [c, v] : rows[r]) {
        if (v != 1 && v != -1) continue;
        std::size_t cost = (rows[r].size() - 1) * (col_rows[c].size() - 1);
        if (cost < best) {
          best = cost;
          pr = r;
          pc = c;
          if (cost == 0) break;
        }
      }
      if (best == 0) break;
    }
    if (pr < 0) break;
    const std::int64_t pv = rows[pr][pc];
    std::vector<int> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (int r : targets) {
      if (r == pr) continue;
      std::int64_t f = checked_mul(rows[r][pc], pv);
      for (auto& [c, v] : rows[pr]) {
        auto it = rows[r].find(c);
        std::int64_t nv = checked_sub(it == rows[r].end() ? 0 : it->second, checked_mul(f, v));
        if (nv == 0) {
          if (it != rows[r].end()) rows[r].erase(it);
          col_rows[c].erase(r);
        } else if (it == rows[r].end()) {
          rows[r].emplace(c, nv);
          col_rows[c].insert(r);
        } else {
          it->second = nv;
        }
      }
    }
    for (auto& [c, v] : rows[pr]) col_rows[c].erase(pr);
    rows[pr].clear();
    alive[pr] = 0;
    ++out.rank;
  }

  std::vector<int> rest_rows;
  std::map<int, int> col_map;
  for (int r = 0; r < m.rows; ++r) {
    if (rows[r].empty()) continue;
    rest_rows.push_back(r);
    for (auto& [c, v] : rows[r]) col_map.emplace(c, 0);
  }
  int k = 0;
  for (auto& [c, idx] : col_map) idx = k++;
  Dense dense(rest_rows.size(), std::vector<std::int64_t>(col_map.size(), 0));
  for (std::size_t i = 0; i < rest_rows.size(); ++i)
    for (auto& [c, v] : rows[rest_rows[i]]) dense[i][col_map[c]] = v;
  for (std::int64_t d : dense_smith(std::move(dense))) {
    if (d == 0) continue;
    ++out.rank;
    if (d > 1) out.factors.push_back(d);
  }
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

bool HomologyProfile::is_sphere(int n) const {
  if (static_cast<int>(groups.size()) < n + 1) return false;
  for (int k = 0; k < static_cast<int>(groups.size()); ++k) {
    const auto& g = groups[k];
    if (!g.torsion.empty()) return false;
    int want = (k == 0 || k == n) ? 1 : 0;
    if (n == 0 && k == 0) want = 2;
    if (g.rank != want) return false;
  }
  return true;
}

std::string to_string(const HomologyGroup& g) {
  std::string s;
  if (g.rank == 0 && g.torsion.empty()) return "0";
  if (g.rank == 1) s = "Z";
  else if (g.rank > 1) s = "Z^" + std::to_string(g.rank);
  for (auto t : g.torsion) {
    if (!s.empty()) s += "+";
    s += "Z/" + std::to_string(t);
  }
  return s;
}

std::string HomologyProfile::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (k) s += ", ";
    s += pearl::to_string(groups[k]);
  }
  return s + ")";
}

HomologyProfile homology_from_chain_complex(const std::vector<int>& chain_sizes,
                                            const std::vector<IntMatrix>& boundaries) {
  const int top = static_cast<int>(chain_sizes.size()) - 1;
  std::vector<SmithForm> sf(top + 2);
  for (int k = 1; k <= top; ++k) sf[k] = smith_form(boundaries[k]);
  HomologyProfile p;
  for (int k = 0; k <= top; ++k) {
    HomologyGroup g;
    int kernel = chain_sizes[k] - (k >= 1 ? sf[k].rank : 0);
    int image = k + 1 <= top ? sf[k + 1].rank : 0;
    g.rank = kernel - image;
    if (k + 1 <= top) g.torsion = sf[k + 1].factors;
    p.groups.push_back(g);
  }
  return p;
}

}  // namespace pearl
