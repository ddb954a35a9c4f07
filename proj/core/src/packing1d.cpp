#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "fdp/packing1d/packing1d.hpp"
#include "fdp/support/error.hpp"

#include "json.hpp"

namespace fdp::pack1d {

DistanceSet DistanceSet::from_values(std::vector<Rational> vals) {
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  if (vals.empty() || vals.front() != 1)
    raise(ErrorKind::domain, "distance set must contain 1 as its smallest element");
  DistanceSet k;
  k.values = std::move(vals);
  return k;
}

DistanceSet DistanceSet::parse(const std::string& comma_list) {
  std::vector<Rational> vals;
  std::stringstream ss(comma_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    vals.push_back(exactnum::parse_rational(item));
  }
  if (vals.empty()) raise(ErrorKind::usage, "empty distance list");
  return from_values(std::move(vals));
}

bool DistanceSet::contains(const Rational& x) const {
  return std::binary_search(values.begin(), values.end(), x);
}

bool DistanceSet::distance_ok(const Rational& x) const { return x > sup() || contains(x); }

Rational Word::norm() const {
  Rational s(0);
  for (const auto& a : letters) s += a;
  return s;
}

std::string Word::str() const {
  std::string out;
  for (size_t i = 0; i < letters.size(); ++i) {
    if (i) out += " ";
    out += letters[i].get_str();
  }
  return out;
}

bool word_internally_admissible(const DistanceSet& k, const Word& w) {
  for (size_t i = 0; i < w.letters.size(); ++i) {
    Rational acc(0);
    for (size_t j = i; j < w.letters.size(); ++j) {
      acc += w.letters[j];
      if (acc > k.sup()) break;
      if (!k.contains(acc)) return false;
    }
  }
  return true;
}

bool edge_admissible(const DistanceSet& k, const Word& a, const Word& b) {
  // only subwords crossing the junction need checking
  for (size_t i = 0; i < a.letters.size(); ++i) {
    Rational acc(0);
    for (size_t j = i; j < a.letters.size(); ++j) acc += a.letters[j];
    if (acc > k.sup()) continue;
    Rational cross = acc;
    for (size_t j = 0; j < b.letters.size(); ++j) {
      cross += b.letters[j];
      if (cross > k.sup()) break;
      if (!k.contains(cross)) return false;
    }
  }
  return true;
}

bool repetition_admissible(const DistanceSet& k, const Word& period, int copies) {
  if (period.letters.empty()) return false;
  Word cat;
  for (int c = 0; c < copies; ++c)
    cat.letters.insert(cat.letters.end(), period.letters.begin(), period.letters.end());
  return word_internally_admissible(k, cat);
}

DominoGraph build_domino_graph(const DistanceSet& k, const GraphLimits& limits) {
  DominoGraph g;
  g.k = k;
  g.word_len = exactnum::ceil_rational(k.sup()).get_si();

  // grow admissible prefixes letter by letter; the subword condition prunes
  std::vector<Word> frontier{Word{}};
  for (long len = 0; len < g.word_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (const auto& a : k.values) {
        // new subwords all end at the appended letter
        Rational acc = a;
        bool ok = k.contains(a);
        for (size_t back = w.letters.size(); ok && back-- > 0;) {
          acc += w.letters[back];
          if (acc > k.sup()) break;
          if (!k.contains(acc)) ok = false;
        }
        if (!ok) continue;
        Word nw = w;
        nw.letters.push_back(a);
        next.push_back(std::move(nw));
        if (next.size() > limits.max_vertices)
          raise(ErrorKind::resource, "domino graph vertex cap exceeded");
      }
    }
    frontier = std::move(next);
  }
  g.vertices = std::move(frontier);

  g.adj.assign(g.vertices.size(), {});
  for (size_t u = 0; u < g.vertices.size(); ++u) {
    for (size_t v = 0; v < g.vertices.size(); ++v) {
      if (!edge_admissible(k, g.vertices[u], g.vertices[v])) continue;
      g.adj[u].push_back((int)v);
      if (++g.edge_count > limits.max_edges)
        raise(ErrorKind::resource, "domino graph edge cap exceeded");
    }
  }
  return g;
}

namespace {

// Bellman-Ford longest-path sweep over integer edge weights
// w(u->v) = gain_scale - rho_num * cost_int[v]; detects a positive cycle.
struct ParametricGraph {
  const DominoGraph* g;
  std::vector<Int> cost_int; // D * |word_v|
  Int d_scale;               // lcm of letter denominators times word length

  template <typename T>
  bool bf_positive(const std::vector<T>& w) const {
    size_t n = g->vertices.size();
    std::vector<T> dist(n, T(0));
    for (size_t round = 0; round <= n; ++round) {
      bool changed = false;
      for (size_t u = 0; u < n; ++u) {
        for (int v : g->adj[u]) {
          T cand = dist[u] + w[v];
          if (cand > dist[v]) {
            dist[v] = cand;
            changed = true;
          }
        }
      }
      if (!changed) return false;
      if (round == n) return true;
    }
    return false;
  }

  bool has_positive_cycle(const Int& rho_num, const Int& rho_den) const {
    size_t n = g->vertices.size();
    // weight of u->v: rho_den * d_scale * N - rho_num * cost_int[v]
    Int gain = rho_den * d_scale * g->word_len;
    std::vector<Int> w(n);
    Int wmax = 0;
    for (size_t v = 0; v < n; ++v) {
      w[v] = gain - rho_num * cost_int[v];
      if (abs(w[v]) > wmax) wmax = abs(w[v]);
    }
    // path sums stay within int64 when (n+1) * wmax does
    Int limit = wmax * Int((long)n + 1);
    if (limit.fits_slong_p() && limit.get_si() < (1L << 62)) {
      std::vector<long> wi(n);
      for (size_t v = 0; v < n; ++v) wi[v] = w[v].get_si();
      return bf_positive(wi);
    }
    return bf_positive(w);
  }

  // at the exact optimum, extract a zero-weight cycle from the tight graph
  std::vector<int> extract_cycle(const Int& rho_num, const Int& rho_den) const {
    size_t n = g->vertices.size();
    Int gain = rho_den * d_scale * g->word_len;
    std::vector<Int> w(n);
    for (size_t v = 0; v < n; ++v) w[v] = gain - rho_num * cost_int[v];
    std::vector<Int> dist(n, Int(0));
    for (size_t round = 0; round < n; ++round) {
      bool changed = false;
      for (size_t u = 0; u < n; ++u)
        for (int v : g->adj[u]) {
          Int cand = dist[u] + w[v];
          if (cand > dist[v]) {
            dist[v] = cand;
            changed = true;
          }
        }
      if (!changed) break;
    }
    // tight subgraph: dist[u] + w == dist[v]; any cycle there is optimal
    std::vector<int> color(n, 0), stack;
    std::vector<int> next_on_stack(n, -1);
    for (size_t s = 0; s < n; ++s) {
      if (color[s]) continue;
      std::vector<std::pair<int, size_t>> dfs{{(int)s, 0}};
      stack.clear();
      while (!dfs.empty()) {
        auto& [u, it] = dfs.back();
        if (it == 0) {
          color[u] = 1;
          stack.push_back(u);
        }
        bool descended = false;
        while (it < g->adj[u].size()) {
          int v = g->adj[u][it++];
          if (!(dist[u] + w[v] == dist[v])) continue;
          if (color[v] == 1) {
            // found a tight cycle: unwind the stack
            std::vector<int> cyc;
            for (size_t t = stack.size(); t-- > 0;) {
              cyc.push_back(stack[t]);
              if (stack[t] == v) break;
            }
            std::reverse(cyc.begin(), cyc.end());
            return cyc;
          }
          if (color[v] == 0) {
            dfs.emplace_back(v, 0);
            descended = true;
            break;
          }
        }
        if (!descended && it >= g->adj[u].size()) {
          color[u] = 2;
          stack.pop_back();
          dfs.pop_back();
        }
      }
    }
    raise(ErrorKind::internal, "no tight cycle at the claimed optimum");
  }
};

} // namespace

PeriodicPacking max_density_cycle(const DominoGraph& g) {
  if (g.vertices.empty())
    raise(ErrorKind::check_failed, "domino graph has no admissible words");
  ParametricGraph pg;
  pg.g = &g;
  Int d = 1;
  for (const auto& a : g.k.values) d = exactnum::lcm_int(d, a.get_den());
  pg.d_scale = d;
  pg.cost_int.reserve(g.vertices.size());
  for (const auto& w : g.vertices) {
    Rational nm = w.norm();
    pg.cost_int.push_back(nm.get_num() * (d / nm.get_den()));
  }

  if (!pg.has_positive_cycle(0, 1))
    raise(ErrorKind::check_failed, "domino graph is acyclic: no periodic packing exists");

  // denominator bound for the optimal ratio #cycle / |cycle|
  Int bound = d * Int((long)g.vertices.size()) * g.word_len *
              exactnum::ceil_rational(g.k.sup());

  // Stern-Brocot walk: G(a/b) true (optimum above), G(c/d) false
  Int a = 0, b = 1, c = 1, dd = 1;
  auto oracle = [&](const Int& num, const Int& den) { return pg.has_positive_cycle(num, den); };
  while (b + dd <= bound) {
    // gallop toward the side the oracle keeps choosing
    if (oracle(a + c, b + dd)) {
      Int t = 1;
      while (true) {
        Int t2 = t * 2;
        if (b + t2 * dd > bound || !oracle(a + t2 * c, b + t2 * dd)) break;
        t = t2;
      }
      // largest step within the doubled bracket
      Int lo = t, hi = t * 2;
      while (lo + 1 < hi) {
        Int mid = (lo + hi) / 2;
        if (b + mid * dd <= bound && oracle(a + mid * c, b + mid * dd)) lo = mid;
        else hi = mid;
      }
      a += lo * c;
      b += lo * dd;
    } else {
      Int t = 1;
      while (true) {
        Int t2 = t * 2;
        if (t2 * b + dd > bound || oracle(t2 * a + c, t2 * b + dd)) break;
        t = t2;
      }
      Int lo = t, hi = t * 2;
      while (lo + 1 < hi) {
        Int mid = (lo + hi) / 2;
        if (mid * b + dd <= bound && !oracle(mid * a + c, mid * b + dd)) lo = mid;
        else hi = mid;
      }
      c += lo * a;
      dd += lo * b;
    }
  }
  Rational rho = exactnum::make_rational(c, dd);

  std::vector<int> cyc = pg.extract_cycle(c, dd);
  PeriodicPacking out;
  for (int v : cyc)
    out.period.letters.insert(out.period.letters.end(), g.vertices[v].letters.begin(),
                              g.vertices[v].letters.end());
  out.density = Rational((long)out.period.length()) / out.period.norm();
  if (out.density != rho)
    raise(ErrorKind::internal, "extracted cycle does not realize the optimal ratio");
  if (!repetition_admissible(g.k, out.period))
    raise(ErrorKind::internal, "optimal period fails re-validation");

  // reduce to the primitive repeating block
  {
    auto& L = out.period.letters;
    size_t n = L.size();
    for (size_t p = 1; p <= n / 2; ++p) {
      if (n % p != 0) continue;
      bool periodic = true;
      for (size_t i = 0; periodic && i + p < n; ++i)
        if (!(L[i] == L[i + p])) periodic = false;
      if (periodic) {
        L.resize(p);
        break;
      }
    }
  }

  // canonical rotation for deterministic output
  auto& L = out.period.letters;
  size_t n = L.size();
  size_t best = 0;
  for (size_t r = 1; r < n; ++r) {
    for (size_t i = 0; i < n; ++i) {
      const Rational& x = L[(r + i) % n];
      const Rational& y = L[(best + i) % n];
      if (x < y) {
        best = r;
        break;
      }
      if (y < x) break;
    }
  }
  std::rotate(L.begin(), L.begin() + best, L.end());
  return out;
}

PeriodicPacking kalbe(const Rational& alpha, const Rational& beta) {
  if (!(1 < alpha && alpha < beta)) raise(ErrorKind::domain, "kalbe: need 1 < alpha < beta");
  auto pack = [](std::vector<Rational> w) {
    PeriodicPacking p;
    p.period.letters = std::move(w);
    p.density = Rational((long)p.period.length()) / p.period.norm();
    return p;
  };
  Rational one(1);
  if (beta <= 2) return pack({one});
  if (alpha == 2) {
    if (beta <= 3) return pack({one});              // row 1
    return pack({one, one, beta});                  // row 2
  }
  if (beta <= 1 + alpha) return pack({one, alpha}); // row 3
  if (beta <= 2 * alpha) {
    if (2 * alpha <= beta + 1) return pack({alpha});      // row 4
    return pack({one, beta});                             // row 5
  }
  return pack({one, beta});                               // row 6
}

GreedyResult greedy(const DistanceSet& k, long steps) {
  if (steps < 1) raise(ErrorKind::domain, "greedy: steps must be >= 1");
  GreedyResult res;
  for (long t = 0; t < steps; ++t) {
    bool placed = false;
    for (const auto& a : k.values) {
      Rational acc = a;
      bool ok = true; // single letters are in K by construction
      for (size_t back = res.word.letters.size(); ok && back-- > 0;) {
        acc += res.word.letters[back];
        if (acc > k.sup()) break;
        if (!k.contains(acc)) ok = false;
      }
      if (ok) {
        res.word.letters.push_back(a);
        placed = true;
        break;
      }
    }
    if (!placed) {
      res.dead_end = true;
      break;
    }
  }
  if (!res.word.letters.empty())
    res.density = Rational((long)res.word.length()) / res.word.norm();
  return res;
}

namespace {

struct TailSet {
  std::vector<Rational> alphas;
  std::vector<GeometricTail> tails; // aligned with alphas
  std::vector<Rational> hat_k;      // alphas + betas, sorted
  Rational beta_max;

  Rational lambda(size_t j, long t) const {
    return tails[j].c * exactnum::pow_rational(tails[j].rho, t);
  }

  bool in_k(const Rational& x) const {
    if (std::binary_search(hat_k.begin(), hat_k.end(), x)) return true;
    for (size_t j = 0; j < alphas.size(); ++j) {
      if (!(x > alphas[j])) continue;
      Rational diff = x - alphas[j];
      for (long t = 1;; ++t) {
        Rational lt = lambda(j, t);
        if (lt < diff) break;
        if (lt == diff) return true;
      }
    }
    return false;
  }

  // min distance from x0 to the part of K u [beta_max, inf) strictly above
  // x0 (using alphas as cluster anchors; tail points sit above their alpha)
  Rational dist_above(const Rational& x0) const {
    Rational best = beta_max - x0; // beta_max >= every element, so > x0 here
    auto consider = [&](const Rational& v) {
      if (v > x0 && v - x0 < best) best = v - x0;
    };
    for (const auto& v : hat_k) consider(v);
    for (size_t j = 0; j < alphas.size(); ++j) {
      if (alphas[j] > x0) {
        consider(alphas[j]); // tail points approach alpha from above
      } else {
        // finitely many tail points can land above x0
        Rational diff = x0 - alphas[j];
        for (long t = 1;; ++t) {
          Rational lt = lambda(j, t);
          if (!(lt > diff)) break;
          consider(alphas[j] + lt);
        }
      }
    }
    return best;
  }

  // sup{ s >= 1 : x0 + lambda_s^r in K u (beta_max, inf) }; -1 encodes
  // infinity, 0 encodes the empty set
  long m_value(const Rational& x0, size_t r) const {
    if (x0 >= beta_max) return -1;
    for (const auto& av : alphas)
      if (x0 == av) return -1;
    Rational d0 = dist_above(x0);
    long best = 0;
    for (long s = 1;; ++s) {
      Rational ls = lambda(r, s);
      if (ls < d0) break;
      Rational x = x0 + ls;
      if (x > beta_max || in_k(x)) best = s;
    }
    return best;
  }
};

} // namespace

AccumulationDescription AccumulationDescription::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  AccumulationDescription d;
  for (const auto& b : j.at("betas")) d.betas.push_back(exactnum::parse_rational(b.get<std::string>()));
  for (const auto& t : j.at("tails")) {
    GeometricTail g;
    g.alpha = exactnum::parse_rational(t.at("alpha").get<std::string>());
    g.c = exactnum::parse_rational(t.at("c").get<std::string>());
    g.rho = exactnum::parse_rational(t.at("rho").get<std::string>());
    d.tails.push_back(g);
  }
  return d;
}

std::string AccumulationDescription::to_json() const {
  nlohmann::ordered_json j;
  nlohmann::ordered_json bs = nlohmann::ordered_json::array();
  for (const auto& b : betas) bs.push_back(b.get_str());
  j["betas"] = bs;
  nlohmann::ordered_json ts = nlohmann::ordered_json::array();
  for (const auto& t : tails)
    ts.push_back({{"alpha", t.alpha.get_str()}, {"c", t.c.get_str()}, {"rho", t.rho.get_str()}});
  j["tails"] = ts;
  return j.dump(2) + "\n";
}

ReducedSet reduce_to_finite(const AccumulationDescription& desc) {
  TailSet ts;
  for (const auto& t : desc.tails) {
    if (!(t.c > 0 && t.rho > 0 && t.rho < 1))
      raise(ErrorKind::domain, "reduce_to_finite: tails must be geometric with rho in (0,1)");
    ts.alphas.push_back(t.alpha);
    ts.tails.push_back(t);
  }
  ts.hat_k = desc.betas;
  for (const auto& a : ts.alphas) ts.hat_k.push_back(a);
  std::sort(ts.hat_k.begin(), ts.hat_k.end());
  ts.hat_k.erase(std::unique(ts.hat_k.begin(), ts.hat_k.end()), ts.hat_k.end());
  if (ts.hat_k.empty() || ts.hat_k.front() != 1)
    raise(ErrorKind::domain, "reduce_to_finite: the finite core must contain 1");
  if (desc.betas.empty()) raise(ErrorKind::domain, "reduce_to_finite: empty beta list");
  ts.beta_max = ts.hat_k.back();
  if (std::find(desc.betas.begin(), desc.betas.end(), ts.beta_max) == desc.betas.end())
    raise(ErrorKind::domain, "reduce_to_finite: max of the set must be one of the betas (iv)");

  // (ii): lambda_1 < delta/2 with delta the minimal alpha gap
  if (ts.alphas.size() >= 2) {
    std::vector<Rational> sorted = ts.alphas;
    std::sort(sorted.begin(), sorted.end());
    Rational delta = sorted[1] - sorted[0];
    for (size_t i = 2; i < sorted.size(); ++i)
      delta = std::min(delta, Rational(sorted[i] - sorted[i - 1]));
    for (size_t j = 0; j < ts.alphas.size(); ++j)
      if (!(ts.lambda(j, 1) < delta / 2))
        raise(ErrorKind::domain, "reduce_to_finite: condition (ii) fails, lambda_1 >= delta/2");
  }
  // (i): alpha_i + alpha_j never equals an alpha
  for (const auto& x : ts.alphas)
    for (const auto& y : ts.alphas)
      for (const auto& z : ts.alphas)
        if (x + y == z)
          raise(ErrorKind::domain, "reduce_to_finite: condition (i) fails, alpha sum hits an alpha");
  // tails must stay below the maximum
  for (size_t j = 0; j < ts.alphas.size(); ++j)
    if (ts.alphas[j] + ts.lambda(j, 1) > ts.beta_max)
      raise(ErrorKind::domain, "reduce_to_finite: tail escapes above the maximum (iv)");

  long c_bound = 0;
  // Step-2 part: gamma ranging over the finite core
  for (const auto& gamma : ts.hat_k)
    for (const auto& ai : ts.alphas)
      for (size_t r = 0; r < ts.alphas.size(); ++r) {
        long m = ts.m_value(gamma + ai, r);
        if (m > c_bound) c_bound = m;
      }
  // Step-1 part: gamma = alpha_j + lambda_k^j, uniformly over k
  for (size_t j = 0; j < ts.alphas.size(); ++j) {
    for (size_t i = 0; i < ts.alphas.size(); ++i) {
      Rational y0 = ts.alphas[j] + ts.alphas[i];
      if (y0 >= ts.beta_max) continue; // M infinite for all k
      Rational eps = ts.dist_above(y0) / 2;
      for (size_t r = 0; r < ts.alphas.size(); ++r) {
        // explicit small k, then the limit regime bounded via eps
        for (long kk = 1;; ++kk) {
          Rational lk = ts.lambda(j, kk);
          if (lk < eps) break;
          long m = ts.m_value(y0 + lk, r);
          if (m > c_bound) c_bound = m;
        }
        // for lambda_k < eps any hit needs lambda_s >= dist_above(y0) - eps >= eps
        long s = 0;
        for (long t = 1;; ++t) {
          if (ts.lambda(r, t) < eps) break;
          s = t;
        }
        if (s > c_bound) c_bound = s;
      }
    }
  }

  std::vector<Rational> vals = ts.hat_k;
  for (size_t j = 0; j < ts.alphas.size(); ++j)
    for (long t = 1; t <= c_bound; ++t) vals.push_back(ts.alphas[j] + ts.lambda(j, t));
  ReducedSet out;
  out.k = DistanceSet::from_values(std::move(vals));
  out.cutoff = c_bound;
  return out;
}

std::pair<long, Rational> fejer_sharpness(const Rational& lambda) {
  if (!(lambda >= 7)) raise(ErrorKind::domain, "fejer_sharpness: lambda must be >= 7");
  long n = exactnum::floor_rational((lambda - 1) / 6).get_si();
  Rational ratio = (lambda + 2) / Rational(2 * n + 1);
  return {n, ratio};
}

} // namespace fdp::pack1d
