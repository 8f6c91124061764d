#include "lacunaria/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace lac {

GroupAlgebraElement::GroupAlgebraElement(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxCoeffDim)
    throw PreconditionError("coefficient dimension must be in [1, 8]");
}

GroupAlgebraElement GroupAlgebraElement::lambda(const Word& w, cplx c) {
  GroupAlgebraElement x(1);
  x.add_scalar_term(w, c);
  return x;
}

void GroupAlgebraElement::add_term(const Word& w, const CMat& c) {
  if (c.dim() != dim_) throw PreconditionError("coefficient dimension mismatch");
  auto it = coeffs_.find(w);
  if (it == coeffs_.end()) {
    if (!c.is_zero()) coeffs_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

void GroupAlgebraElement::add_scalar_term(const Word& w, cplx c) {
  add_term(w, CMat::scalar(dim_, c));
}

CMat GroupAlgebraElement::coefficient(const Word& w) const {
  auto it = coeffs_.find(w);
  if (it == coeffs_.end()) return CMat(dim_);
  return it->second;
}

int GroupAlgebraElement::max_index() const {
  int m = 0;
  for (const auto& [w, c] : coeffs_) m = std::max(m, w.max_index());
  return m;
}

int GroupAlgebraElement::max_length() const {
  int m = 0;
  for (const auto& [w, c] : coeffs_)
    m = std::max(m, static_cast<int>(w.length()));
  return m;
}

bool GroupAlgebraElement::all_real(double tol) const {
  for (const auto& [w, c] : coeffs_)
    if (!c.all_real(tol)) return false;
  return true;
}

GroupAlgebraElement convolve(const GroupAlgebraElement& x,
                             const GroupAlgebraElement& y,
                             std::int64_t product_cap) {
  if (x.dim() != y.dim())
    throw PreconditionError("convolution dimension mismatch");
  std::int64_t products = static_cast<std::int64_t>(x.support_size()) *
                          static_cast<std::int64_t>(y.support_size());
  if (products > product_cap)
    throw BudgetError("convolution support product exceeds cap");
  GroupAlgebraElement out(x.dim());
  for (const auto& [h, ch] : x.terms())
    for (const auto& [g, cg] : y.terms()) out.add_term(h * g, ch * cg);
  return out;
}

GroupAlgebraElement adjoint(const GroupAlgebraElement& x) {
  GroupAlgebraElement out(x.dim());
  for (const auto& [w, c] : x.terms()) out.add_term(w.inverse(), c.adjoint());
  return out;
}

cplx trace(const GroupAlgebraElement& x) {
  return x.coefficient(Word()).trace() / static_cast<double>(x.dim());
}

double l2_norm(const GroupAlgebraElement& x) {
  double s = 0.0;
  for (const auto& [w, c] : x.terms()) s += c.frobenius_sq();
  return std::sqrt(s / x.dim());
}

GroupAlgebraElement apply_semigroup(const LengthFunction& psi, double t,
                                    const GroupAlgebraElement& x) {
  if (t < 0.0) throw PreconditionError("semigroup time must be >= 0");
  GroupAlgebraElement out(x.dim());
  for (const auto& [w, c] : x.terms())
    out.add_term(w, std::exp(-t * psi(w)) * c);
  return out;
}

GroupAlgebraElement bmo_integrand(const LengthFunction& psi, double t,
                                  const GroupAlgebraElement& x,
                                  std::int64_t product_cap) {
  if (!(t > 0.0)) throw PreconditionError("integrand needs t > 0");
  GroupAlgebraElement tx = apply_semigroup(psi, t, x);
  GroupAlgebraElement y(x.dim());
  for (const auto& [w, c] : x.terms()) y.add_term(w, c);
  for (const auto& [w, c] : tx.terms()) y.add_term(w, -1.0 * c);
  GroupAlgebraElement yy = convolve(adjoint(y), y, product_cap);
  return apply_semigroup(psi, t, yy);
}

double moment_norm(const GroupAlgebraElement& x, int p,
                   std::int64_t product_cap) {
  if (p < 2 || p % 2 != 0)
    throw PreconditionError("moment norm needs even p >= 2");
  GroupAlgebraElement xx = convolve(adjoint(x), x, product_cap);
  GroupAlgebraElement acc = xx;
  for (int i = 1; i < p / 2; ++i) acc = convolve(acc, xx, product_cap);
  double m = trace(acc).real();
  return std::pow(std::max(m, 0.0), 1.0 / p);
}

std::pair<double, double> rcp_norms(const GroupAlgebraElement& x) {
  if (x.empty()) return {0.0, 0.0};
  int d = x.dim();
  CMat col(d), row(d);
  for (const auto& [w, c] : x.terms()) {
    col += c.adjoint() * c;
    row += c * c.adjoint();
  }
  return {hermitian_max_eigenvalue(col), hermitian_max_eigenvalue(row)};
}

double haagerup_pisier_bound(const GroupAlgebraElement& x,
                             bool free_support_certificate) {
  if (!free_support_certificate)
    throw CertificateError(
        "Haagerup-Pisier bound requires a free-support certificate");
  auto [col, row] = rcp_norms(x);
  return 2.0 * std::sqrt(std::max(col, row));
}

}  // namespace lac
