#pragma once

// psi-lacunarity constants of finite sequences, the heat-kernel coefficient
// matrix a_{k,j}, and the Schur row/column-sum bound against c_delta.

#include <span>
#include <vector>

#include "lacunaria/lengths.hpp"
#include "lacunaria/word.hpp"

namespace lac {

struct LacunaryReport {
  double delta_growth = 0.0;      // min_k psi(h_{k+1})/psi(h_k) - 1
  double delta_separation = 0.0;  // min_{k != k'} psi(h_k^-1 h_k') / max(...)
  double delta = 0.0;             // min of the two
  double c_delta = 0.0;           // 1 + 1/delta + 1/(1 - exp(-delta^2))
  bool passed = false;            // delta > 0
};

double c_delta_formula(double delta);

// Throws ZeroLengthError when some psi(h_k) = 0 and DuplicateElementError
// when the sequence repeats a word (distinct diagnostics).
LacunaryReport lacunarity_constants(const LengthFunction& psi,
                                    std::span<const Word> seq);

// a[k][j] = exp(-t psi(h_k^-1 h_j)) (1 - exp(-t psi(h_k))) (1 - exp(-t psi(h_j))),
// row-major K x K; psi(h_k^-1) = psi(h_k) since psi is symmetric.
std::vector<double> coefficient_matrix(const LengthFunction& psi,
                                       std::span<const Word> seq, double t);

struct SchurReport {
  double worst_row_sum = 0.0;
  double worst_col_sum = 0.0;
  double c_delta = 0.0;
  double margin = 0.0;  // c_delta - max(worst sums)
  bool passed = false;
};

// Worst row/column sums of a_{k,j} over the t grid versus c_delta.
SchurReport verify_schur_bound(const LengthFunction& psi,
                               std::span<const Word> seq,
                               std::span<const double> t_grid);
SchurReport verify_schur_bound_serial(const LengthFunction& psi,
                                      std::span<const Word> seq,
                                      std::span<const double> t_grid);

// 49 log-spaced points in [1e-6/psi_max, 1e3/psi_min] over the sequence.
std::vector<double> default_t_grid(const LengthFunction& psi,
                                   std::span<const Word> seq, int n = 49);
std::vector<double> log_spaced_grid(double tmin, double tmax, int n);

struct ProposedSequence {
  std::vector<Word> sequence;
  LacunaryReport report;  // computed by lacunarity_constants, never asserted
};

// Deterministic doubling-length candidates (a^{2^k} on Z, (g1 g2)^{2^k}
// otherwise), post-verified; throws when no candidate family verifies.
ProposedSequence propose_lacunary_sequence(int rank,
                                           const LengthFunction& psi, int k);

}  // namespace lac
