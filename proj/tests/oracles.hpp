#pragma once

// Brute-force oracles used by the test suites. Everything here is kept
// independent of the library code paths it cross-checks.

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "fdp/exactnum/ratpoly.hpp"
#include "fdp/packing1d/packing1d.hpp"

namespace oracles {

using fdp::exactnum::RatPoly;
using fdp::exactnum::Rational;

// Distinct real roots of p in (a,b) by a rational sign scan with the given
// step plus bisection refinement of each bracket. Exact arithmetic; roots
// closer than `step` to each other are the caller's risk (seeds are fixed).
inline int scan_count_roots(const RatPoly& p, const Rational& a, const Rational& b,
                            const Rational& step) {
  int count = 0, last = 0;
  for (Rational x = a + step / 2; x < b; x += step) {
    int s = sgn(p.eval(x));
    if (s == 0) { // sampled an exact root
      ++count;
      last = 0;
      continue;
    }
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

// Minimum of p over a dense rational grid on [a,b].
inline Rational grid_min(const RatPoly& p, const Rational& a, const Rational& b, long points) {
  Rational best = p.eval(a + (b - a) / (2 * points));
  for (long i = 1; i < points; ++i) {
    Rational x = a + (b - a) * Rational(2 * i + 1) / Rational(2 * points);
    Rational v = p.eval(x);
    if (v < best) best = v;
  }
  return best;
}

// Simple-cycle enumeration (Johnson-style blocked DFS) over an adjacency
// list; returns the maximum of (length * gain_per_vertex) / sum of costs,
// i.e. the best density cycle, or nullopt if acyclic. Aborts via exception
// when more than `cap` cycles exist.
struct TooManyCycles {};

inline std::optional<Rational> best_cycle_brute(const std::vector<std::vector<int>>& adj,
                                                const std::vector<Rational>& cost,
                                                long gain_per_vertex, long cap) {
  size_t n = adj.size();
  std::optional<Rational> best;
  long seen = 0;

  std::vector<char> blocked(n, 0);
  std::vector<std::vector<int>> block_map(n);
  std::vector<int> stack;
  Rational stack_cost(0);

  // Johnson's circuit enumeration rooted at increasing start vertices
  for (size_t s = 0; s < n; ++s) {
    std::fill(blocked.begin(), blocked.end(), 0);
    for (auto& b : block_map) b.clear();

    std::function<bool(int)> circuit = [&](int v) -> bool {
      bool found = false;
      stack.push_back(v);
      stack_cost += cost[v];
      blocked[v] = 1;
      for (int w : adj[v]) {
        if (w < (int)s) continue; // only cycles through the least vertex s
        if (w == (int)s) {
          Rational density = Rational((long)stack.size() * gain_per_vertex) / stack_cost;
          if (!best || density > *best) best = density;
          if (++seen > cap) throw TooManyCycles{};
          found = true;
        } else if (!blocked[w]) {
          if (circuit(w)) found = true;
        }
      }
      if (found) {
        // unblock
        std::function<void(int)> unblock = [&](int u) {
          blocked[u] = 0;
          for (int w : block_map[u]) {
            if (blocked[w]) unblock(w);
          }
          block_map[u].clear();
        };
        unblock(v);
      } else {
        for (int w : adj[v])
          if (w >= (int)s) block_map[w].push_back(v);
      }
      stack.pop_back();
      stack_cost -= cost[v];
      return found;
    };
    circuit((int)s);
  }
  return best;
}

// All length-n tuples over k filtered by internal admissibility, for
// cross-checking the incremental graph builder.
inline std::vector<fdp::pack1d::Word> brute_vertices(const fdp::pack1d::DistanceSet& k, long n) {
  std::vector<fdp::pack1d::Word> out;
  std::vector<size_t> idx(n, 0);
  for (;;) {
    fdp::pack1d::Word w;
    for (long i = 0; i < n; ++i) w.letters.push_back(k.values[idx[i]]);
    if (fdp::pack1d::word_internally_admissible(k, w)) out.push_back(w);
    long pos = n - 1;
    while (pos >= 0 && ++idx[pos] == k.values.size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

} // namespace oracles
