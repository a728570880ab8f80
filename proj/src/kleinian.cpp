#include "pearl/kleinian.hpp"

#include "pearl/parallel.hpp"
#include "pearl/spatial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

namespace pearl {

// ---------------------------------------------------------------------------
// Presentation

std::string GroupPresentation::to_string() const {
  std::ostringstream os;
  os << "<";
  for (int i = 0; i < generators; ++i) os << (i ? "," : "") << "I" << i + 1;
  os << " |";
  for (int i = 0; i < generators; ++i) os << (i ? ", " : " ") << "I" << i + 1 << "^2";
  for (auto [i, j] : commuting) os << ", (I" << i + 1 << " I" << j + 1 << ")^2";
  os << ">";
  return os.str();
}

GroupPresentation presentation_of(const std::vector<Ball<Rational>>& mirrors) {
  GroupPresentation p;
  p.generators = static_cast<int>(mirrors.size());
  p.angle.assign(p.generators, std::vector<std::uint8_t>(p.generators, 0));
  for (int i = 0; i < p.generators; ++i)
    for (int j = i + 1; j < p.generators; ++j) {
      PairKind k = classify_pair(mirrors[i], mirrors[j]).kind;
      if (k == PairKind::orthogonal) {
        p.angle[i][j] = p.angle[j][i] = 2;
        p.commuting.push_back({i, j});
      } else if (k != PairKind::disjoint && k != PairKind::tangent) {
        throw Error(ErrorKind::audit_failed, "mirrors " + std::to_string(i + 1) + " and " +
                                                 std::to_string(j + 1) + " are " +
                                                 pearl::to_string(k));
      }
    }
  return p;
}

GroupPresentation presentation(const Necklace& t) { return presentation_of(t.pearls); }

std::vector<std::vector<Word>> normal_form_words(const GroupPresentation& p, int depth) {
  std::vector<std::vector<Word>> out(depth + 1);
  out[0].push_back({});
  for (int g = 1; g <= depth; ++g)
    for (const Word& w : out[g - 1])
      for (int s = 0; s < p.generators; ++s) {
        bool ok = true;
        // scan back through letters that commute with s
        for (int k = static_cast<int>(w.size()) - 1; k >= 0; --k) {
          if (w[k] == s || (p.commute(w[k], s) && s < w[k])) {
            ok = false;
            break;
          }
          if (!p.commute(w[k], s)) break;
        }
        if (!ok) continue;
        Word v = w;
        v.push_back(s);
        out[g].push_back(std::move(v));
      }
  return out;
}

// ---------------------------------------------------------------------------
// Orbit enumeration

namespace {

struct ExactHash {
  std::size_t operator()(const Ball<Rational>& b) const {
    std::size_t h = hash_value(b.radius);
    for (int i = 0; i < b.dim(); ++i) h = h * 1000003u ^ hash_value(b.center[i]);
    return h;
  }
};

using RKey = std::array<std::int64_t, kMaxDim + 1>;

struct RKeyHash {
  std::size_t operator()(const RKey& k) const {
    std::size_t h = 0;
    for (auto v : k) h = h * 0x100000001b3ull ^ static_cast<std::size_t>(v);
    return h;
  }
};

RKey rounded_key(const Ball<double>& b) {
  RKey k{};
  for (int i = 0; i < b.dim(); ++i) k[i] = std::llround(b.center[i] * 1e12);
  k[kMaxDim] = std::llround(b.radius * 1e12);
  return k;
}

using Bits = std::vector<std::uint64_t>;

struct Node {
  Ball<double> d;
  std::optional<Ball<Rational>> q;
  int origin = 0;
  int first_level = -1;
  int first_even = -1;
  Word word, even_word;
  bool leaf = false;
};

struct LevelItem {
  int node;
  Bits letters;
  Word word;
};

struct Image {
  int letter = -1;
  bool skipped = false;
  Ball<double> d;
  std::optional<Ball<Rational>> q;
};

bool single_letter(const Bits& b, int i) {
  for (std::size_t w = 0; w < b.size(); ++w) {
    std::uint64_t expect = (static_cast<std::size_t>(i) / 64 == w) ? (1ull << (i % 64)) : 0;
    if (b[w] != expect) return false;
  }
  return true;
}

class Enumerator {
 public:
  Enumerator(const std::vector<Ball<Rational>>& balls, const std::vector<Ball<Rational>>& mirrors,
             const OrbitOptions& opts, bool serial)
      : balls_(balls), mirrors_(mirrors), opts_(opts), serial_(serial) {
    for (const auto& m : mirrors_) mirrors_d_.push_back(to_double(m));
    words_ = (mirrors_.size() + 63) / 64;
  }

  GenerationLedger run() {
    if (opts_.depth < 0) throw InputError("depth must be non-negative");
    if (balls_.empty()) throw InputError("no balls to reflect");
    ledger_.dim = balls_[0].dim();
    ledger_.generators = static_cast<int>(mirrors_.size());
    ledger_.options = opts_;
    if (opts_.even_only) ledger_.group = "even subgroup";

    std::vector<LevelItem> level;
    for (int i = 0; i < static_cast<int>(balls_.size()); ++i) {
      Node n;
      n.q = balls_[i];
      n.d = to_double(balls_[i]);
      n.origin = i;
      int id = add_node(std::move(n), 0, {});
      level.push_back({id, Bits(words_, 0), {}});
    }
    levels_.push_back(level);
    stages_.push_back(stage_for(0, level.size()));
    stages_[0].count = nodes_.size();

    if (opts_.mode == OrbitMode::normal_form) {
      run_normal_form();
    } else {
      for (int g = 0; g < opts_.depth && !capped_; ++g) {
        level = expand(level, g);
        levels_.push_back(level);
      }
    }
    return finish();
  }

 private:
  int add_node(Node n, int level, const Word& w) {
    n.first_level = level;
    n.word = w;
    if (level % 2 == 0) {
      n.first_even = level;
      n.even_word = w;
    }
    n.leaf = n.d.radius < opts_.min_radius;
    int id = static_cast<int>(nodes_.size());
    if (n.q) exact_.emplace(*n.q, id);
    rounded_.emplace(rounded_key(n.d), id);
    nodes_.push_back(std::move(n));
    return id;
  }

  int find(const Image& im) const {
    if (im.q) {
      auto it = exact_.find(*im.q);
      return it == exact_.end() ? -1 : it->second;
    }
    auto it = rounded_.find(rounded_key(im.d));
    return it == rounded_.end() ? -1 : it->second;
  }

  StageRecord stage_for(int g, std::size_t level_size) const {
    StageRecord s;
    s.generation = g;
    s.level = level_size;
    s.exact = g <= opts_.exact_depth;
    return s;
  }

  Image reflect(const Node& x, int i, bool exact) const {
    Image im;
    im.letter = i;
    if (exact && x.q) {
      const Ball<Rational>& m = mirrors_[i];
      if (!(dist2(m.center, x.q->center) > x.q->radius * x.q->radius)) {
        im.skipped = true;
        return im;
      }
      im.q = invert_ball(m, *x.q);
      im.d = to_double(*im.q);
    } else {
      const Ball<double>& m = mirrors_d_[i];
      if (compare(dist2(m.center, x.d.center), x.d.radius * x.d.radius, opts_.tol) <= 0) {
        im.skipped = true;
        return im;
      }
      im.d = invert_ball(m, x.d, opts_.tol);
    }
    return im;
  }

  // Images of every level item under every admissible letter, then a serial
  // merge in item order.
  std::vector<LevelItem> expand(const std::vector<LevelItem>& level, int g) {
    const int next = g + 1;
    const bool exact = next <= opts_.exact_depth;
    StageRecord st = stage_for(next, 0);
    std::vector<LevelItem> out;
    std::unordered_map<int, int> pos;
    const int r = static_cast<int>(mirrors_.size());
    const std::int64_t chunk = 2048;
    const std::int64_t total = static_cast<std::int64_t>(level.size());
    std::vector<std::vector<Image>> slots;
    for (std::int64_t base = 0; base < total && !capped_; base += chunk) {
      const std::int64_t n = std::min(chunk, total - base);
      slots.assign(n, {});
      auto work = [&](std::int64_t k) {
        const LevelItem& it = level[base + k];
        const Node& x = nodes_[it.node];
        if (x.leaf) return;
        std::vector<Image>& dst = slots[k];
        for (int i = 0; i < r; ++i) {
          if (single_letter(it.letters, i)) continue;
          dst.push_back(reflect(x, i, exact));
        }
      };
      if (serial_) {
        for (std::int64_t k = 0; k < n; ++k) work(k);
      } else {
        parallel_for(n, opts_.threads, work);
      }
      for (std::int64_t k = 0; k < n && !capped_; ++k) {
        const LevelItem& it = level[base + k];
        for (Image& im : slots[k]) {
          if (im.skipped) {
            ++st.skipped;
            continue;
          }
          Word w;
          w.reserve(it.word.size() + 1);
          w.push_back(im.letter);
          w.insert(w.end(), it.word.begin(), it.word.end());
          int id = find(im);
          if (id < 0) {
            if (nodes_.size() >= opts_.cap) {
              capped_ = true;
              break;
            }
            Node nn;
            nn.d = im.d;
            nn.q = std::move(im.q);
            nn.origin = nodes_[it.node].origin;
            id = add_node(std::move(nn), next, w);
            ++st.count;
          } else if (id == it.node) {
            ++st.fixed;
          } else if (nodes_[id].first_level < next) {
            ++st.duplicates;
          }
          Node& nd = nodes_[id];
          if (nd.first_even < 0 && next % 2 == 0) {
            nd.first_even = next;
            nd.even_word = w;
          }
          auto [p, fresh] = pos.emplace(id, static_cast<int>(out.size()));
          if (fresh) out.push_back({id, Bits(words_, 0), std::move(w)});
          out[p->second].letters[im.letter / 64] |= 1ull << (im.letter % 64);
        }
      }
    }
    st.level = out.size();
    stages_.push_back(st);
    return out;
  }

  void run_normal_form() {
    if (opts_.depth > 3) throw InputError("normal-form mode is limited to depth 3");
    GroupPresentation p = presentation_of(mirrors_);
    auto words = normal_form_words(p, opts_.depth);
    const int nb = static_cast<int>(balls_.size());
    for (int g = 1; g <= opts_.depth; ++g) {
      StageRecord st = stage_for(g, 0);
      const bool exact = g <= opts_.exact_depth;
      std::vector<LevelItem> out;
      std::unordered_map<int, int> pos;
      for (const Word& w : words[g])
        for (int b = 0; b < nb; ++b) {
          Node x;
          x.q = balls_[b];
          x.d = to_double(balls_[b]);
          bool skipped = false;
          for (int k = g - 1; k >= 0 && !skipped; --k) {
            Image im = reflect(x, w[k], exact);
            if (im.skipped) {
              skipped = true;
              break;
            }
            x.d = im.d;
            x.q = std::move(im.q);
          }
          if (skipped) {
            ++st.skipped;
            continue;
          }
          Image im;
          im.d = x.d;
          im.q = x.q;
          int id = find(im);
          if (id < 0) {
            x.origin = b;
            id = add_node(std::move(x), g, w);
            ++st.count;
          } else if (nodes_[id].first_level < g) {
            ++st.duplicates;
          }
          Node& nd = nodes_[id];
          if (nd.first_even < 0 && g % 2 == 0) {
            nd.first_even = g;
            nd.even_word = w;
          }
          auto [it, fresh] = pos.emplace(id, static_cast<int>(out.size()));
          if (fresh) out.push_back({id, Bits(words_, 0), w});
        }
      st.level = out.size();
      stages_.push_back(st);
      levels_.push_back(std::move(out));
    }
  }

  GenerationLedger finish() {
    const int depth = static_cast<int>(levels_.size()) - 1;
    const bool even = opts_.even_only;
    std::vector<std::vector<int>> by_gen(depth + 1);
    for (int id = 0; id < static_cast<int>(nodes_.size()); ++id) {
      int g = even ? nodes_[id].first_even : nodes_[id].first_level;
      if (g >= 0 && g <= depth) by_gen[g].push_back(id);
    }
    std::vector<int> entry_of(nodes_.size(), -1);
    ledger_.gen_begin.push_back(0);
    for (int g = 0; g <= depth; ++g) {
      auto& ids = by_gen[g];
      std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        const Node& x = nodes_[a];
        const Node& y = nodes_[b];
        if (ball_less(x.d, y.d)) return true;
        if (ball_less(y.d, x.d)) return false;
        if (x.q && y.q) return ball_less(*x.q, *y.q);
        return a < b;
      });
      StageRecord& st = stages_[g];
      st.count = ids.size();
      st.leaves = 0;
      st.max_radius = 0;
      for (int id : ids) {
        const Node& n = nodes_[id];
        entry_of[id] = static_cast<int>(ledger_.entries.size());
        LedgerEntry e;
        e.ball = n.d;
        e.exact = n.q;
        e.generation = g;
        e.origin = n.origin;
        e.word = even ? n.even_word : n.word;
        e.leaf = n.leaf;
        st.leaves += n.leaf;
        st.max_radius = std::max(st.max_radius, n.d.radius);
        ledger_.entries.push_back(std::move(e));
      }
      ledger_.gen_begin.push_back(ledger_.entries.size());
    }
    for (int g = 0; g <= depth; ++g) {
      std::vector<int> lv;
      if (!even || g % 2 == 0)
        for (const auto& it : levels_[g])
          if (entry_of[it.node] >= 0) lv.push_back(entry_of[it.node]);
      std::sort(lv.begin(), lv.end());
      ledger_.levels.push_back(std::move(lv));
      if (even && g % 2 == 1) stages_[g].level = 0;
    }
    ledger_.stages = stages_;
    ledger_.capped = capped_;
    if (capped_)
      ledger_.notes.push_back("explosion guard: stopped at " + std::to_string(opts_.cap) +
                              " balls; ledger is partial");
    if (depth >= 1 && ledger_.generators >= 1)
      ledger_.knot_sum = knot_sum_ledger(ledger_.generators, depth);
    ledger_.notes.push_back(
        "discontinuity set: complement of the union of the deepest level (not materialized)");
    if (opts_.mode == OrbitMode::normal_form)
      ledger_.notes.push_back("normal-form enumeration (geodesic shortlex words)");
    return ledger_;
  }

  const std::vector<Ball<Rational>>& balls_;
  const std::vector<Ball<Rational>>& mirrors_;
  std::vector<Ball<double>> mirrors_d_;
  OrbitOptions opts_;
  bool serial_;
  std::size_t words_ = 1;
  std::vector<Node> nodes_;
  std::unordered_map<Ball<Rational>, int, ExactHash> exact_;
  std::unordered_map<RKey, int, RKeyHash> rounded_;
  std::vector<std::vector<LevelItem>> levels_;
  std::vector<StageRecord> stages_;
  GenerationLedger ledger_;
  bool capped_ = false;
};

}  // namespace

GenerationLedger orbit_stage(const std::vector<Ball<Rational>>& balls,
                             const std::vector<Ball<Rational>>& mirrors, const OrbitOptions& opts) {
  return Enumerator(balls, mirrors, opts, false).run();
}

GenerationLedger orbit_stage_serial(const std::vector<Ball<Rational>>& balls,
                                    const std::vector<Ball<Rational>>& mirrors,
                                    const OrbitOptions& opts) {
  return Enumerator(balls, mirrors, opts, true).run();
}

GenerationLedger orbit_stage(const IncreasedNecklace& t, const OrbitOptions& opts) {
  presentation(t.base);  // rejects transversal mirror pairs
  return orbit_stage(t.balls(), t.base.pearls, opts);
}

GenerationLedger even_subgroup_ledger(const IncreasedNecklace& t, OrbitOptions opts) {
  opts.even_only = true;
  return orbit_stage(t, opts);
}

// ---------------------------------------------------------------------------
// Nesting

namespace {

// Buckets balls by radius scale so that one grid cell size fits each bucket.
class ScaledIndex {
 public:
  ScaledIndex(int dim, const std::vector<Ball<double>>& balls) : dim_(dim), balls_(balls) {
    for (int i = 0; i < static_cast<int>(balls.size()); ++i) {
      int k = static_cast<int>(std::floor(std::log2(balls[i].radius)));
      auto it = buckets_.find(k);
      if (it == buckets_.end())
        it = buckets_.emplace(k, Bucket{GridIndex(dim_, std::ldexp(4.0, k)), {}}).first;
      it->second.grid.insert_ball(balls[i], i);
      it->second.ids.push_back(i);
    }
  }

  // Balls whose interiors may meet b.
  std::vector<int> near(const Ball<double>& b) const {
    std::vector<int> out;
    for (const auto& [k, bucket] : buckets_) {
      double cell = std::ldexp(4.0, k);
      double span = 2 * b.radius / cell + 2;
      std::vector<int> cand;
      if (std::pow(span, dim_) > static_cast<double>(bucket.ids.size()))
        cand = bucket.ids;
      else
        cand = bucket.grid.query_ball(b);
      for (int i : cand) {
        double s = b.radius + balls_[i].radius;
        if (dist2(b.center, balls_[i].center) < s * s) out.push_back(i);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Bucket {
    GridIndex grid;
    std::vector<int> ids;
  };
  int dim_;
  const std::vector<Ball<double>>& balls_;
  std::map<int, Bucket> buckets_;
};

std::string describe(const LedgerEntry& e) {
  std::ostringstream os;
  os << (e.exact ? to_string(*e.exact) : "B(" + to_string(e.ball.center) + ", " +
                                              std::to_string(e.ball.radius) + ")");
  os << " word ";
  if (e.word.empty()) os << "e";
  for (std::size_t k = 0; k < e.word.size(); ++k) os << (k ? "." : "") << "I" << e.word[k] + 1;
  return os.str();
}

}  // namespace

AuditReport nesting_audit(const GenerationLedger& ledger, const NestingOptions& opts) {
  AuditReport rep;
  rep.title = "nesting (" + ledger.group + ")";
  const int depth = ledger.depth();
  if (depth < 1) {
    rep.add("depth", false, "ledger has no generation beyond 0");
    return rep;
  }
  const int d = ledger.dim;
  const int count = opts.samples > 0 ? opts.samples : 1 << (2 * d);
  const std::vector<Point<double>> dirs = sphere_directions(d, count, opts.seed);
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  int prev = 0;
  for (int g = 1; g <= depth; ++g) {
    const std::size_t n = ledger.generation_size(g);
    if (n == 0) continue;
    const auto& lv = ledger.levels[prev];
    std::vector<Ball<double>> cover;
    std::vector<const Ball<Rational>*> cover_q;
    for (int id : lv) {
      cover.push_back(ledger.entries[id].ball);
      cover_q.push_back(ledger.entries[id].exact ? &*ledger.entries[id].exact : nullptr);
    }
    ScaledIndex index(d, cover);
    struct Verdict {
      bool strict = false, closed = false, exact = false;
      double slack = 0;
    };
    std::vector<Verdict> out(n);
    const std::size_t begin = ledger.gen_begin[g];
    parallel_for(static_cast<std::int64_t>(n), opts.threads, [&](std::int64_t k) {
      const LedgerEntry& e = ledger.entries[begin + k];
      std::vector<int> near = index.near(e.ball);
      Verdict& v = out[k];
      if (e.exact) {
        for (int i : near)
          if (cover_q[i] && strictly_inside_ball(*e.exact, *cover_q[i])) {
            v = {true, true, true, 0};
            return;
          }
      }
      std::vector<Ball<double>> local;
      for (int i : near) local.push_back(cover[i]);
      RegionOptions ro;
      ro.tol = opts.tol;
      ro.margin = opts.tol.abs;
      ro.directions = dirs;
      Containment c = ball_in_region(e.ball, std::span<const Ball<double>>(local), ro);
      v.strict = c.inside;
      v.exact = c.exact;
      v.slack = c.margin;
      v.closed = c.inside || c.margin >= -opts.tol.abs;
    });
    std::size_t strict = 0, closed = 0, exact = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> first_bad;
    for (std::size_t k = 0; k < n; ++k) {
      strict += out[k].strict;
      closed += out[k].closed;
      exact += out[k].exact;
      if (!out[k].exact) worst = std::min(worst, out[k].slack);
      if (!out[k].strict && !first_bad) first_bad = k;
    }
    std::ostringstream det;
    det << strict << "/" << n << " strictly inside the level-" << prev << " union (" << exact
        << " exact), " << closed << "/" << n << " inside its closure";
    if (std::isfinite(worst)) det << ", min sampled slack " << worst;
    if (first_bad) det << "; first failure " << describe(ledger.entries[begin + *first_bad]);
    rep.add("generation " + std::to_string(g) + " inside level " + std::to_string(prev),
            strict == n, det.str(), exact < n);
    gens.push_back({{"generation", g},
                    {"balls", n},
                    {"strict", strict},
                    {"closed", closed},
                    {"exact", exact},
                    {"min_slack", std::isfinite(worst) ? worst : 0.0}});
    prev = g;
  }
  // max radius over new balls, strictly decreasing from generation 1 on
  std::vector<double> radii;
  std::ostringstream seq;
  bool mono = true;
  for (int g = 0; g <= depth; ++g) {
    if (ledger.generation_size(g) == 0) continue;
    double m = ledger.stages[g].max_radius;
    for (std::size_t k = ledger.gen_begin[g]; k < ledger.gen_begin[g + 1]; ++k)
      m = std::max(m, ledger.entries[k].ball.radius);
    if (g >= 2 && !radii.empty() && !(m < radii.back())) mono = false;
    radii.push_back(m);
    seq << (seq.tellp() > 0 ? " " : "") << m;
  }
  rep.add("max radius strictly decreasing from generation 1", mono, seq.str());
  rep.data["generations"] = gens;
  rep.data["max_radius"] = radii;
  return rep;
}

// ---------------------------------------------------------------------------
// Limit cloud and counts

LimitCloud limit_cloud(const GenerationLedger& ledger, double epsilon) {
  LimitCloud c;
  c.dim = ledger.dim;
  c.epsilon = epsilon;
  for (const auto& e : ledger.entries)
    if (e.ball.radius < epsilon)
      c.points.push_back({e.ball.center, e.ball.radius, e.generation,
                          static_cast<int>(e.word.size()), e.exact});
  std::sort(c.points.begin(), c.points.end(), [](const CloudPoint& a, const CloudPoint& b) {
    if (lex_less(a.center, b.center)) return true;
    if (lex_less(b.center, a.center)) return false;
    if (a.radius != b.radius) return a.radius < b.radius;
    return a.generation < b.generation;
  });
  if (c.points.empty())
    c.notes.push_back("empty cloud: no ball below epsilon at the achieved depth");
  if (ledger.capped) c.notes.push_back("ledger was capped; cloud is partial");
  return c;
}

std::pair<BigInt, BigInt> knot_sum_ledger(int r, int k) {
  if (r < 1 || k < 1) throw InputError("knot_sum_ledger needs r >= 1 and k >= 1");
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(k) * r - 1);
  return {v, v};
}

DimensionEstimate box_dimension(const std::vector<Point<double>>& pts) {
  if (pts.size() < 100)
    throw Error(ErrorKind::insufficient_data,
                "box dimension needs at least 100 points, got " + std::to_string(pts.size()));
  const int d = pts[0].dim;
  Point<double> lo = pts[0], hi = pts[0];
  for (const auto& p : pts)
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  double extent = 0;
  for (int i = 0; i < d; ++i) extent = std::max(extent, hi[i] - lo[i]);
  if (!(extent > 0)) throw Error(ErrorKind::insufficient_data, "cloud has zero extent");
  DimensionEstimate est;
  std::vector<double> xs, ys;
  for (int k = 1; k <= 40; ++k) {
    double delta = std::ldexp(extent, -k);
    std::vector<std::array<std::int64_t, kMaxDim>> cells;
    cells.reserve(pts.size());
    for (const auto& p : pts) {
      std::array<std::int64_t, kMaxDim> c{};
      for (int i = 0; i < d; ++i) c[i] = static_cast<std::int64_t>(std::floor((p[i] - lo[i]) / delta));
      cells.push_back(c);
    }
    std::sort(cells.begin(), cells.end());
    std::size_t boxes = std::unique(cells.begin(), cells.end()) - cells.begin();
    // stop once boxes saturate toward one point per box
    if (boxes * 8 > pts.size()) break;
    est.counts.push_back({delta, boxes});
    if (boxes >= 4) {
      xs.push_back(std::log(1.0 / delta));
      ys.push_back(std::log(static_cast<double>(boxes)));
    }
  }
  if (xs.size() < 3)
    throw Error(ErrorKind::insufficient_data, "too few usable scales for a box-dimension fit");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  est.slope = sxy / sxx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (my + est.slope * (xs[i] - mx));
    ss += e * e;
  }
  est.residual = std::sqrt(ss / n);
  return est;
}

DimensionEstimate box_dimension(const LimitCloud& cloud) {
  std::vector<Point<double>> pts;
  pts.reserve(cloud.points.size());
  for (const auto& p : cloud.points) pts.push_back(p.center);
  return box_dimension(pts);
}

}  // namespace pearl
