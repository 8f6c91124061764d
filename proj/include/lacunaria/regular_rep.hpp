#pragma once

// The left regular representation restricted to inputs supported on a ball
// P_{<=R}, applied matrix-free. The index plan (which output slot each
// (support word, ball word) pair feeds) is precomputed once per support set
// and reused across coefficient values; power iteration on lambda(x)*lambda(x)
// then yields certified lower bounds of the operator norm.

#include <cstdint>
#include <span>
#include <vector>

#include "lacunaria/algebra.hpp"
#include "lacunaria/word.hpp"

namespace lac {

struct OpNormOptions {
  double rel_tol = 1e-8;
  int iter_cap = 10000;
  std::uint64_t seed = 0;  // start vector seed; one restart uses seed + 1
  std::int64_t ball_cap = kDefaultBallCap;
};

struct OpNormResult {
  double value = 0.0;
  bool converged = true;  // false: iteration cap hit, value = best iterate
  int iterations = 0;
};

class TruncatedRepresentation {
 public:
  // Outputs land in the ball of radius R + max support length; they are
  // indexed compactly (only words actually reachable get a slot), so the
  // range is never truncated and sigma_max is a true lower bound of ||x||.
  TruncatedRepresentation(int rank, int radius, std::span<const Word> support,
                          int dim, std::int64_t ball_cap = kDefaultBallCap);

  int rank() const { return rank_; }
  int radius() const { return radius_; }
  int dim() const { return dim_; }
  std::int64_t domain_words() const { return n_in_; }
  std::int64_t range_words() const { return n_out_; }
  std::size_t support_size() const { return support_.size(); }
  const std::vector<Word>& support() const { return support_; }

  // out = lambda(x) in, coefficients given per support slot.
  void forward(std::span<const CMat> coeffs, std::span<const cplx> in,
               std::span<cplx> out) const;
  void forward_serial(std::span<const CMat> coeffs, std::span<const cplx> in,
                      std::span<cplx> out) const;
  // out = lambda(x)^* v for v on the range.
  void adjoint_apply(std::span<const CMat> coeffs, std::span<const cplx> v,
                     std::span<cplx> out) const;
  void adjoint_apply_serial(std::span<const CMat> coeffs,
                            std::span<const cplx> v,
                            std::span<cplx> out) const;

  // Scalar real fast path (dim 1, all-real coefficients).
  void forward_real(std::span<const double> coeffs,
                    std::span<const double> in, std::span<double> out) const;
  void forward_real_serial(std::span<const double> coeffs,
                           std::span<const double> in,
                           std::span<double> out) const;
  void adjoint_real(std::span<const double> coeffs,
                    std::span<const double> v, std::span<double> out) const;
  void adjoint_real_serial(std::span<const double> coeffs,
                           std::span<const double> v,
                           std::span<double> out) const;

 private:
  int rank_;
  int radius_;
  int dim_;
  std::int64_t n_in_ = 0;
  std::int64_t n_out_ = 0;
  std::vector<Word> support_;
  // pair (s, i) feeds output slot ito_[i * S + s]
  std::vector<std::int32_t> ito_;
  // the same pairs, grouped by output slot
  std::vector<std::int64_t> row_ptr_;
  std::vector<std::int32_t> ent_support_;
  std::vector<std::int32_t> ent_in_;
};

// Rayleigh power iteration on xi -> lambda(x)* lambda(x) xi with a fixed-seed
// start vector and one restart with a shifted seed; the max of the two runs
// is reported. The value is nondecreasing in R and never exceeds ||x||.
OpNormResult truncated_sigma_max(const TruncatedRepresentation& plan,
                                 std::span<const CMat> coeffs,
                                 const OpNormOptions& opts = {});

OpNormResult operator_norm_lower(const GroupAlgebraElement& x, int rank,
                                 int radius, const OpNormOptions& opts = {});

}  // namespace lac
