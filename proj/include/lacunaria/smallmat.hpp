#pragma once

// Dense d x d complex matrices for group-algebra coefficients (d <= 8) and
// the small symmetric eigensolvers used by the conditional-negativity check.

#include <complex>
#include <cstdint>
#include <vector>

#include "lacunaria/errors.hpp"

namespace lac {

using cplx = std::complex<double>;

inline constexpr int kMaxCoeffDim = 8;

class CMat {
 public:
  CMat() = default;  // dim 0, used as "absent"
  explicit CMat(int d);
  static CMat identity(int d);
  static CMat scalar(int d, cplx z);

  int dim() const { return d_; }
  cplx& at(int i, int j) { return a_[static_cast<std::size_t>(i) * d_ + j]; }
  const cplx& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * d_ + j];
  }
  const std::vector<cplx>& data() const { return a_; }

  CMat adjoint() const;
  double max_abs() const;
  bool is_zero() const { return max_abs() == 0.0; }
  cplx trace() const;
  double frobenius_sq() const;
  bool all_real(double tol = 0.0) const;

  CMat& operator+=(const CMat& o);
  CMat& operator-=(const CMat& o);
  CMat& operator*=(cplx z);
  friend CMat operator+(CMat a, const CMat& b) { return a += b; }
  friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
  friend CMat operator*(cplx z, CMat a) { return a *= z; }
  friend CMat operator*(const CMat& a, const CMat& b);  // matrix product
  bool operator==(const CMat&) const = default;

 private:
  int d_ = 0;
  std::vector<cplx> a_;
};

// ---- real symmetric eigenproblems ------------------------------------------

struct SymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major, vectors[i + n*k] = v_k[i]
};

// Cyclic Jacobi rotations; exactness over speed, for n <= a few hundred.
SymmetricEigen jacobi_eigen(const std::vector<double>& m, int n);

// Largest eigenvalue of a symmetric matrix via power iteration on
// M + shift*I with shift = max row sum (makes the iterate PSD).
// Throws ConvergenceError when the iteration cap is exceeded.
double max_eigenvalue_power(const std::vector<double>& m, int n,
                            double rel_tol, int iter_cap,
                            std::uint64_t seed);

// Largest eigenvalue of a Hermitian matrix via the real 2d x 2d embedding.
double hermitian_max_eigenvalue(const CMat& h);

// Spectral norm sqrt(lambda_max(A* A)).
double spectral_norm(const CMat& a);

}  // namespace lac
