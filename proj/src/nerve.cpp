#include "pearl/nerve.hpp"

#include "pearl/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace pearl {

bool SimplicialComplex::contains(const Simplex& s) const {
  int k = static_cast<int>(s.size()) - 1;
  if (k < 0 || k > top_dim()) return false;
  return std::binary_search(simplices[k].begin(), simplices[k].end(), s);
}

std::vector<std::int64_t> SimplicialComplex::f_vector() const {
  std::vector<std::int64_t> f;
  for (int k = 0; k <= top_dim(); ++k) f.push_back(count(k));
  return f;
}

SimplicialComplex complex_from_facets(int vertex_count, const std::vector<Simplex>& facets) {
  std::vector<std::set<Simplex>> levels;
  for (auto s : facets) {
    std::sort(s.begin(), s.end());
    const int n = static_cast<int>(s.size());
    if (n == 0) continue;
    if (static_cast<int>(levels.size()) < n) levels.resize(n);
    for (unsigned m = 1; m < (1u << n); ++m) {
      Simplex f;
      for (int i = 0; i < n; ++i)
        if ((m >> i) & 1u) f.push_back(s[i]);
      levels[f.size() - 1].insert(f);
    }
  }
  SimplicialComplex c;
  c.vertex_count = vertex_count;
  for (auto& l : levels) c.simplices.emplace_back(l.begin(), l.end());
  return c;
}

bool is_face_closed(const SimplicialComplex& c) {
  for (int k = 1; k <= c.top_dim(); ++k)
    for (const auto& s : c.simplices[k])
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) f.push_back(s[i]);
        if (!c.contains(f)) return false;
      }
  for (const auto& s : c.count(0) ? c.simplices[0] : std::vector<Simplex>{})
    if (s[0] < 0 || s[0] >= c.vertex_count) return false;
  return true;
}

namespace {

struct NerveSearch {
  const std::vector<Ball<Rational>>& balls;
  const std::vector<std::vector<int>>& adj;  // sorted neighbor lists, open intersection
  int cap;                                   // largest subset size that is tested
  std::vector<Simplex> found;
  std::vector<Simplex> flagged;

  void extend(Simplex& s, std::vector<int> cands) {
    for (std::size_t t = 0; t < cands.size(); ++t) {
      int v = cands[t];
      s.push_back(v);
      bool ok;
      if (static_cast<int>(s.size()) > cap) {
        flagged.push_back(s);
        ok = false;
      } else if (s.size() <= 2) {
        ok = true;
      } else {
        std::vector<Ball<Rational>> sub;
        for (int i : s) sub.push_back(balls[i]);
        auto w = common_intersection(sub, Openness::open);
        if (w.status == IntersectionStatus::indeterminate) flagged.push_back(s);
        ok = w.status == IntersectionStatus::nonempty;
      }
      if (ok) {
        found.push_back(s);
        std::vector<int> next;
        for (std::size_t u = t + 1; u < cands.size(); ++u)
          if (std::binary_search(adj[v].begin(), adj[v].end(), cands[u])) next.push_back(cands[u]);
        extend(s, next);
      }
      s.pop_back();
    }
  }
};

}  // namespace

SimplicialComplex nerve_complex(const std::vector<Ball<Rational>>& input, const NerveOptions& opts,
                                std::vector<int>* order) {
  const int n = static_cast<int>(input.size());
  if (n == 0) return {};
  const int d = input[0].dim();
  for (const auto& b : input) require_same_dim(input[0].center, b.center);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return ball_less(input[a], input[b]); });
  std::vector<Ball<Rational>> balls;
  for (int i : perm) balls.push_back(input[i]);
  if (order) *order = perm;

  std::vector<std::vector<int>> adj(n);
  std::vector<std::vector<int>> higher(n);
  parallel_for(n, opts.threads, [&](std::int64_t i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Rational s = balls[i].radius + balls[j].radius;
      if (dist2(balls[i].center, balls[j].center) < s * s) adj[i].push_back(j);
    }
  });
  for (int i = 0; i < n; ++i)
    for (int j : adj[i])
      if (j > i) higher[i].push_back(j);

  std::vector<std::vector<Simplex>> per_vertex(n), flagged(n);
  parallel_for(n, opts.threads, [&](std::int64_t v) {
    NerveSearch s{balls, adj, d + 2, {}, {}};
    Simplex base{static_cast<int>(v)};
    s.found.push_back(base);
    s.extend(base, higher[v]);
    per_vertex[v] = std::move(s.found);
    flagged[v] = std::move(s.flagged);
  });
  SimplicialComplex c;
  c.vertex_count = n;
  for (const auto& b : balls) c.positions.push_back(b.center);
  for (int v = 0; v < n; ++v) {
    for (auto& s : per_vertex[v]) {
      if (static_cast<int>(c.simplices.size()) < static_cast<int>(s.size())) c.simplices.resize(s.size());
      c.simplices[s.size() - 1].push_back(std::move(s));
    }
    for (auto& s : flagged[v]) c.flagged.push_back(std::move(s));
  }
  for (auto& level : c.simplices) std::sort(level.begin(), level.end());
  std::sort(c.flagged.begin(), c.flagged.end());
  return c;
}

HomologyProfile simplicial_homology(const SimplicialComplex& c) {
  if (!is_face_closed(c)) throw InputError(ErrorKind::not_face_closed, "complex is not closed under faces");
  const int top = c.top_dim();
  if (top < 0) return {};
  std::vector<std::map<Simplex, int>> index(top + 1);
  std::vector<int> sizes(top + 1);
  for (int k = 0; k <= top; ++k) {
    int i = 0;
    for (const auto& s : c.simplices[k]) index[k].emplace(s, i++);
    sizes[k] = i;
  }
  std::vector<IntMatrix> bd(top + 1);
  for (int k = 1; k <= top; ++k) {
    bd[k].rows = sizes[k - 1];
    bd[k].cols = sizes[k];
    int col = 0;
    for (const auto& s : c.simplices[k]) {
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) f.push_back(s[i]);
        bd[k].entries.push_back({index[k - 1].at(f), col, drop % 2 == 0 ? 1 : -1});
      }
      ++col;
    }
  }
  return homology_from_chain_complex(sizes, bd);
}

AuditReport sphere_check(const SimplicialComplex& c, int n) {
  AuditReport rep;
  rep.title = "sphere check n=" + std::to_string(n);
  {
    bool pure = c.top_dim() == n;
    // every maximal simplex has dimension n
    if (pure) {
      std::set<Simplex> covered;
      for (const auto& s : c.simplices[n]) covered.insert(s);
      for (int k = n - 1; k >= 0 && pure; --k) {
        std::set<Simplex> next;
        for (const auto& s : covered)
          for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex f;
            for (std::size_t i = 0; i < s.size(); ++i)
              if (i != drop) f.push_back(s[i]);
            next.insert(f);
          }
        for (const auto& s : c.simplices[k])
          if (!next.count(s)) pure = false;
        covered = std::move(next);
      }
    }
    rep.add("pure " + std::to_string(n) + "-dimensional", pure, "top dimension " + std::to_string(c.top_dim()));
  }
  if (n >= 1 && c.top_dim() >= n) {
    std::map<Simplex, int> deg;
    for (const auto& s : c.simplices[n - 1]) deg[s] = 0;
    for (const auto& s : c.simplices[n])
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) f.push_back(s[i]);
        ++deg[f];
      }
    int bad = 0;
    for (auto& [s, k] : deg)
      if (k != 2) ++bad;
    rep.add("every (n-1)-simplex in exactly two n-simplices", bad == 0, std::to_string(bad) + " exceptions");
  }
  {
    std::vector<int> parent(c.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    if (c.top_dim() >= 1)
      for (const auto& e : c.simplices[1]) parent[find(e[0])] = find(e[1]);
    std::set<int> roots;
    if (c.top_dim() >= 0)
      for (const auto& v : c.simplices[0]) roots.insert(find(v[0]));
    rep.add("connected", roots.size() == 1, std::to_string(roots.size()) + " component(s)");
  }
  HomologyProfile h = simplicial_homology(c);
  rep.add("homology of S^" + std::to_string(n), h.is_sphere(n), h.to_string());
  rep.add("no undecided subsets", c.flagged.empty(), std::to_string(c.flagged.size()) + " flagged");
  rep.notes.push_back("necessary conditions for an n-sphere; not a PL recognition");
  nlohmann::ordered_json f = c.f_vector();
  rep.data["f_vector"] = f;
  rep.data["homology"] = h.to_string();
  return rep;
}

}  // namespace pearl
