#pragma once

#include <string>
#include <vector>

#include "fdp/exactnum/rational.hpp"

namespace fdp::pack1d {

using exactnum::Int;
using exactnum::Rational;

// Finite set of prescribed center distances: strictly increasing rationals,
// smallest element 1, all >= 1.
struct DistanceSet {
  std::vector<Rational> values;

  static DistanceSet from_values(std::vector<Rational> vals);
  static DistanceSet parse(const std::string& comma_list); // "1,3/2,5/2"
  const Rational& sup() const { return values.back(); }
  bool contains(const Rational& x) const;
  // x in K or x > sup(K)
  bool distance_ok(const Rational& x) const;
};

// Finite word over the alphabet K; |w| is the sum of its letters.
struct Word {
  std::vector<Rational> letters;

  size_t length() const { return letters.size(); }
  Rational norm() const;
  std::string str() const; // space-separated exact rationals
};

// Directed graph on admissible words of length N = ceil(sup K); an edge
// (w, w') means every contiguous subword of ww' has its norm in
// K u (sup K, inf).
struct DominoGraph {
  DistanceSet k;
  long word_len = 0;
  std::vector<Word> vertices;
  std::vector<std::vector<int>> adj;
  size_t edge_count = 0;
};

struct GraphLimits {
  size_t max_vertices = 200000;
  size_t max_edges = 4000000;
};

bool word_internally_admissible(const DistanceSet& k, const Word& w);
bool edge_admissible(const DistanceSet& k, const Word& a, const Word& b);
// the infinite repetition of `period`, checked over `copies` concatenations
bool repetition_admissible(const DistanceSet& k, const Word& period, int copies = 3);

DominoGraph build_domino_graph(const DistanceSet& k, const GraphLimits& limits = {});

struct PeriodicPacking {
  Word period;
  Rational density; // letters per unit length, in (0, 1]
};

// Exact maximum of (#cycle)/(norm of cycle) over directed cycles, via
// parametric reweighting and a Stern-Brocot search with Bellman-Ford
// positive-cycle detection. The returned period realizes the optimum and
// its repetition is re-validated. Raises check_failed on acyclic graphs.
PeriodicPacking max_density_cycle(const DominoGraph& g);

// Closed-form optimal packing for K = {1, alpha, beta}, 1 < alpha < beta.
PeriodicPacking kalbe(const Rational& alpha, const Rational& beta);

struct GreedyResult {
  Word word;
  Rational density; // letters / norm of the generated word
  bool dead_end = false;
};

// Leftmost-feasible placement for `steps` letters; stops early (dead_end)
// when no distance can extend the word.
GreedyResult greedy(const DistanceSet& k, long steps);

// Geometric tail attached to an accumulation point: lambda_t = c rho^t.
struct GeometricTail {
  Rational alpha;
  Rational c;
  Rational rho;
};

// K = {betas} u {alphas} u {alpha_j + c_j rho_j^t : t >= 1}, with the
// alphas accumulating from the right.
struct AccumulationDescription {
  std::vector<Rational> betas; // must contain 1 and max K
  std::vector<GeometricTail> tails;

  static AccumulationDescription from_json(const std::string& text);
  std::string to_json() const;
};

// Truncates every tail at a computed uniform depth C so that the finite set
// keeps the same optimal density; validates the structural conditions on
// the description.
struct ReducedSet {
  DistanceSet k;
  long cutoff = 0; // C
};

ReducedSet reduce_to_finite(const AccumulationDescription& desc);

// Sharpness family for the 1-D kissing bound: N = floor((lambda-1)/6),
// ratio = (2+lambda)/(1+2N) -> 3.
std::pair<long, Rational> fejer_sharpness(const Rational& lambda);

} // namespace fdp::pack1d
