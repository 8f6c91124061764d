#pragma once

// The group algebra with d x d matrix coefficients: convolution, adjoint,
// canonical trace, L2, exact even-p moments, the heat semigroup action and
// the Haagerup-Pisier upper bound.

#include <complex>
#include <map>
#include <span>
#include <utility>

#include "lacunaria/lengths.hpp"
#include "lacunaria/smallmat.hpp"
#include "lacunaria/word.hpp"

namespace lac {

class GroupAlgebraElement {
 public:
  explicit GroupAlgebraElement(int dim = 1);

  // c * lambda_w with a scalar coefficient (dim 1).
  static GroupAlgebraElement lambda(const Word& w, cplx c = 1.0);

  int dim() const { return dim_; }
  std::size_t support_size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  // Accumulates; prunes the term when the sum becomes exactly zero.
  void add_term(const Word& w, const CMat& c);
  void add_scalar_term(const Word& w, cplx c);

  // Zero matrix when the word is unsupported.
  CMat coefficient(const Word& w) const;

  // Canonically ordered (length-major lexicographic) support traversal.
  const std::map<Word, CMat, CanonicalLess>& terms() const { return coeffs_; }

  // Largest absolute generator index in the support.
  int max_index() const;
  // Longest support word.
  int max_length() const;

  bool is_scalar() const { return dim_ == 1; }
  bool all_real(double tol = 0.0) const;

 private:
  int dim_;
  std::map<Word, CMat, CanonicalLess> coeffs_;
};

// (xy)(g) = sum_h x(h) y(h^-1 g), matrix product on coefficients.
// product_cap bounds |supp x| * |supp y|.
GroupAlgebraElement convolve(const GroupAlgebraElement& x,
                             const GroupAlgebraElement& y,
                             std::int64_t product_cap = kDefaultBallCap);

// x*(g) = x(g^-1)^dagger.
GroupAlgebraElement adjoint(const GroupAlgebraElement& x);

// tau(x) = (1/d) tr x(e); tau(1) = 1.
cplx trace(const GroupAlgebraElement& x);

// sqrt(tau(x* x)) computed directly from the coefficients.
double l2_norm(const GroupAlgebraElement& x);

// T_t: lambda_g -> exp(-t psi(g)) lambda_g.
GroupAlgebraElement apply_semigroup(const LengthFunction& psi, double t,
                                    const GroupAlgebraElement& x);

// T_t(y* y) for y = x - T_t x, computed exactly in the group algebra.
GroupAlgebraElement bmo_integrand(const LengthFunction& psi, double t,
                                  const GroupAlgebraElement& x,
                                  std::int64_t product_cap = kDefaultBallCap);

// (tau |x|^p)^{1/p} for even p via repeated convolution of x* x.
double moment_norm(const GroupAlgebraElement& x, int p,
                   std::int64_t product_cap = kDefaultBallCap);

// (|| sum_k c_k^dagger c_k ||, || sum_k c_k c_k^dagger ||), spectral norms.
std::pair<double, double> rcp_norms(const GroupAlgebraElement& x);

// 2 max(||sum c^dagger c||^{1/2}, ||sum c c^dagger||^{1/2}); valid upper
// bound for ||x|| when the support is a free set. Refuses without the
// certificate.
double haagerup_pisier_bound(const GroupAlgebraElement& x,
                             bool free_support_certificate);

}  // namespace lac
