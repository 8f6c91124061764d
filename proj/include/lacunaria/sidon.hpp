#pragma once

// Symmetric word sets Q_n, freeness certification by Stallings folding with
// a brute-force oracle mirroring the inductive length argument, the a^k b a^-k
// homomorphism into F_2, the growth-count experiment and empirical Sidon /
// Lambda_infty witness ratios.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "lacunaria/algebra.hpp"
#include "lacunaria/regular_rep.hpp"
#include "lacunaria/word.hpp"

namespace lac {

struct SymmetricWordSpec {
  int n = 1;  // half-length
  int m = 1;  // index bound |k_j| <= m
  // Injection on positive indices, extended by phi(-k) = -phi(k); empty map
  // means the identity. Values must be positive and pairwise distinct.
  std::map<int, int> phi;
};

// All reduced g_{k_1}..g_{k_n} g_{phi(k_n)}..g_{phi(k_1)} with k_{j+1} != -k_j,
// deduplicated, in deterministic (odometer) order. Non-reduced candidates
// arising from nontrivial phi are filtered out.
std::vector<Word> generate_qn(const SymmetricWordSpec& spec);

// ---- Stallings folding ------------------------------------------------------

class FoldingGraph {
 public:
  // Wedge of loops at the base vertex, one per word, folded on the fly:
  // inserting an edge whose (vertex, label) slot is taken queues a vertex
  // identification, and the queue is drained to a fixed point.
  static FoldingGraph fold(std::span<const Word> words);

  std::int64_t vertex_count() const;
  std::int64_t edge_count() const;
  std::int64_t rank() const { return edge_count() - vertex_count() + 1; }
  bool folded() const;

  // Removes degree-1 vertices other than the base, iteratively.
  void extract_core();

  // Canonical relabeling by BFS from the base with label-ordered edges;
  // equal canonical forms = isomorphic based labeled graphs.
  std::vector<std::tuple<int, Letter, int>> canonical_edges() const;

 private:
  // adjacency: per live vertex, label -> target; both directions stored.
  std::vector<std::map<Letter, int>> adj_;
  std::vector<int> parent_;  // union-find
  int base_ = 0;

  int find(int v);
  int find_const(int v) const;
  void insert_edge(int from, Letter label, int to,
                   std::vector<std::pair<int, int>>& merge_queue);
  void merge(int a, int b, std::vector<std::pair<int, int>>& merge_queue);
};

struct FreeBasisReport {
  bool free = false;
  std::int64_t rank = 0;  // rank of the generated subgroup
};

// free iff the folded core has rank equal to the number of input words.
// Throws on duplicates or the identity among the inputs.
FreeBasisReport is_free_basis(std::span<const Word> words);

struct BruteForceReport {
  bool free_up_to_m = true;   // no product of <= M factors reduces to e
  bool monotone = true;       // |x_j...x_1| > |x_{j-1}...x_1| at every step
  // Signed 1-based indices of the factors of the first violation,
  // rightmost factor first.
  std::optional<std::vector<int>> counterexample;
  std::string violation;  // "", "identity_product" or "length_monotonicity"
  std::int64_t products_checked = 0;
};

// Enumerates all products x_M'...x_1 (2 <= M' <= M) with factors from
// words and their inverses, adjacent inverse pairs excluded.
BruteForceReport freeness_bruteforce(std::span<const Word> words, int m,
                                     std::int64_t budget = kDefaultBallCap);

// k -> a^k b a^{-k} into the rank-2 alphabet, all positive k.
Homomorphism pi_homomorphism();

struct CountReport {
  std::int64_t count = 0;      // #(pi(Q_n) cap P_{<= 2nm})
  double ratio_to_mn = 0.0;    // count / m^n
  double ball_exponent = 0.0;  // log(#P_{<= 2nm}) / (2nm) on F_2
};

CountReport count_intersection(int n, int m,
                               std::int64_t budget = kDefaultBallCap);

// ---- empirical witness ratios ----------------------------------------------

struct WitnessOptions {
  int trials = 16;
  int radius = 6;
  std::uint64_t seed = 0;
  std::int64_t ball_cap = kDefaultBallCap;
  OpNormOptions norm;
};

struct WitnessReport {
  double value = 0.0;          // max observed ratio
  std::string numerator;       // "truncated_lower"
  std::string denominator;     // "hp_upper" or "l1_upper"
  bool valid_lower_bound = true;
  bool support_certified_free = false;
  int trials = 0;
};

// max over random sign/coefficient trials of
//   sigma_R(sum eps_k c_k lambda_{h_k}) / upper(sum c_k lambda_{h_k}),
// upper = min(l1 bound, Haagerup-Pisier when the support certifies free).
WitnessReport unconditionality_witness(std::span<const Word> words,
                                       const WitnessOptions& opts);

// max over random coefficient trials of
//   sigma_R(x) / max(rcp_norms(x))^{1/2}.
WitnessReport lambda_infty_witness(std::span<const Word> words,
                                   const WitnessOptions& opts);

}  // namespace lac
