#include "lacunaria/bmo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <numbers>

namespace lac {

namespace {

// Support words of T_t |x - T_t x|^2 for every t: all products u^{-1} v
// over the support of x.
std::vector<Word> integrand_support(const GroupAlgebraElement& x) {
  std::map<Word, int, CanonicalLess> seen;
  for (const auto& [u, cu] : x.terms())
    for (const auto& [v, cv] : x.terms()) seen.emplace(u.inverse() * v, 0);
  std::vector<Word> words;
  words.reserve(seen.size());
  for (const auto& [w, unused] : seen) words.push_back(w);
  return words;
}

std::vector<CMat> integrand_coeffs(const LengthFunction& psi, double t,
                                   const GroupAlgebraElement& x,
                                   std::span<const Word> support_order) {
  GroupAlgebraElement y = bmo_integrand(psi, t, x);
  std::map<Word, int, CanonicalLess> slot;
  for (std::size_t i = 0; i < support_order.size(); ++i)
    slot.emplace(support_order[i], static_cast<int>(i));
  std::vector<CMat> coeffs(support_order.size(), CMat(x.dim()));
  for (const auto& [w, c] : y.terms()) {
    auto it = slot.find(w);
    if (it == slot.end())
      throw PreconditionError("integrand support escaped the product set");
    coeffs[static_cast<std::size_t>(it->second)] = c;
  }
  return coeffs;
}

int infer_rank(const GroupAlgebraElement& x) {
  return std::max(1, x.max_index());
}

}  // namespace

double bmo_c_estimate(const LengthFunction& psi, const GroupAlgebraElement& x,
                      std::span<const double> t_grid, int radius,
                      const OpNormOptions& opts, double* t_star_out) {
  if (t_grid.empty()) throw PreconditionError("t grid must be nonempty");
  for (double t : t_grid)
    if (!(t > 0.0)) throw PreconditionError("t grid must be positive");
  if (x.empty()) {
    if (t_star_out) *t_star_out = t_grid[0];
    return 0.0;
  }

  std::vector<Word> support = integrand_support(x);
  TruncatedRepresentation plan(infer_rank(x), radius, support, x.dim(),
                               opts.ball_cap);

  const std::int64_t n = static_cast<std::int64_t>(t_grid.size());
  std::vector<double> values(t_grid.size(), 0.0);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      std::vector<CMat> coeffs =
          integrand_coeffs(psi, t_grid[i], x, support);
      values[static_cast<std::size_t>(i)] =
          truncated_sigma_max(plan, coeffs, opts).value;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  if (t_star_out) *t_star_out = t_grid[best];
  return std::sqrt(std::max(values[best], 0.0));
}

BmoEstimate bmo_estimate(const LengthFunction& psi,
                         const GroupAlgebraElement& x,
                         std::span<const double> t_grid, int radius,
                         const OpNormOptions& opts) {
  BmoEstimate est;
  est.radius_used = radius;
  double t_col = 0.0, t_row = 0.0;
  est.bmo_c_lower = bmo_c_estimate(psi, x, t_grid, radius, opts, &t_col);
  est.bmo_c_adjoint_lower =
      bmo_c_estimate(psi, adjoint(x), t_grid, radius, opts, &t_row);
  if (est.bmo_c_lower >= est.bmo_c_adjoint_lower) {
    est.bmo_lower = est.bmo_c_lower;
    est.t_star = t_col;
  } else {
    est.bmo_lower = est.bmo_c_adjoint_lower;
    est.t_star = t_row;
  }
  est.certified_upper = theorem1_certificate(psi, x);
  return est;
}

std::optional<double> theorem1_certificate(const LengthFunction& psi,
                                           const GroupAlgebraElement& x) {
  if (x.empty()) return 0.0;
  if (x.support_size() == 1) {
    // Single term c lambda_h: T_t|y|^2 = (1-e^{-t psi(h)})^2 c^dagger c
    // lambda_e, so the BMO norm is exactly the spectral norm of c.
    return spectral_norm(x.terms().begin()->second);
  }
  std::vector<std::pair<double, Word>> ordered;
  ordered.reserve(x.support_size());
  for (const auto& [w, c] : x.terms()) ordered.emplace_back(psi(w), w);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) {
                     return a.first < b.first;
                   });
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i)
    if (ordered[i].first == ordered[i + 1].first) return std::nullopt;
  std::vector<Word> seq;
  seq.reserve(ordered.size());
  for (auto& [v, w] : ordered) seq.push_back(std::move(w));
  LacunaryReport rep;
  try {
    rep = lacunarity_constants(psi, seq);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!rep.passed) return std::nullopt;
  auto [col, row] = rcp_norms(x);
  return std::sqrt(rep.c_delta * std::max(col, row));
}

double bmo_lower_witness(const LengthFunction& psi,
                         const GroupAlgebraElement& x,
                         std::span<const double> t_grid) {
  const double d = static_cast<double>(x.dim());
  double best = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw PreconditionError("t grid must be positive");
    double s = 0.0;
    for (const auto& [w, c] : x.terms()) {
      double defect = 1.0 - std::exp(-t * psi(w));
      s += defect * defect * c.frobenius_sq() / d;
    }
    best = std::max(best, s);
  }
  // Analytic large-t limit: every psi > 0 factor tends to 1.
  double limit = 0.0;
  for (const auto& [w, c] : x.terms())
    if (psi(w) > 0.0) limit += c.frobenius_sq() / d;
  return std::max(best, limit);
}

namespace {

// Signed frequency of a rank-1 word a^k.
int rank1_frequency(const Word& w) {
  if (w.is_identity()) return 0;
  int len = static_cast<int>(w.length());
  return w.letters().front() > 0 ? len : -len;
}

struct TorusPoly {
  double constant = 0.0;
  std::vector<int> freq;     // positive frequencies
  std::vector<cplx> coeff;   // coefficient of e^{+i f theta}

  double eval(double theta) const {
    double v = constant;
    for (std::size_t i = 0; i < freq.size(); ++i) {
      cplx rot(std::cos(freq[i] * theta), std::sin(freq[i] * theta));
      v += 2.0 * (coeff[i] * rot).real();
    }
    return v;
  }
};

TorusPoly torus_poly(const GroupAlgebraElement& y) {
  TorusPoly p;
  for (const auto& [w, c] : y.terms()) {
    int f = rank1_frequency(w);
    cplx z = c.at(0, 0);
    if (f == 0)
      p.constant += z.real();
    else if (f > 0) {
      p.freq.push_back(f);
      p.coeff.push_back(z);
    }
    // negative frequencies are the conjugates of the positive ones for the
    // Hermitian integrand; they are folded into the 2 Re(...) evaluation
  }
  return p;
}

double golden_max(const TorusPoly& p, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = p.eval(x1), f2 = p.eval(x2);
  while (b - a > 1e-10 * (2.0 * std::numbers::pi)) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = p.eval(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = p.eval(x1);
    }
  }
  return std::max(f1, f2);
}

double torus_profile_max(const TorusPoly& p, int n_samples, bool parallel) {
  const double step = 2.0 * std::numbers::pi / n_samples;
  std::vector<double> vals(static_cast<std::size_t>(n_samples));
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int j = 0; j < n_samples; ++j) vals[j] = p.eval(j * step);
  } else {
    for (int j = 0; j < n_samples; ++j) vals[j] = p.eval(j * step);
  }
  int best = 0;
  for (int j = 1; j < n_samples; ++j)
    if (vals[j] > vals[best]) best = j;
  double refined =
      golden_max(p, (best - 1) * step, (best + 1) * step);
  return std::max(vals[static_cast<std::size_t>(best)], refined);
}

double torus_bmo_impl(const GroupAlgebraElement& x,
                      std::span<const double> t_grid, int n_samples,
                      bool parallel) {
  if (x.dim() != 1)
    throw PreconditionError("torus path needs scalar coefficients");
  if (x.max_index() > 1)
    throw PreconditionError("torus path needs rank-1 support");
  if (t_grid.empty()) throw PreconditionError("t grid must be nonempty");
  if (n_samples < 4) throw PreconditionError("need at least 4 samples");
  LengthFunction psi = abs_length_function();
  double best = 0.0;
  for (double t : t_grid) {
    GroupAlgebraElement y = bmo_integrand(psi, t, x);
    TorusPoly p = torus_poly(y);
    best = std::max(best, torus_profile_max(p, n_samples, parallel));
  }
  return std::sqrt(std::max(best, 0.0));
}

}  // namespace

double torus_bmo_estimate(const GroupAlgebraElement& x,
                          std::span<const double> t_grid, int n_samples) {
  return torus_bmo_impl(x, t_grid, n_samples, true);
}

double torus_bmo_estimate_serial(const GroupAlgebraElement& x,
                                 std::span<const double> t_grid,
                                 int n_samples) {
  return torus_bmo_impl(x, t_grid, n_samples, false);
}

std::vector<double> default_bmo_grid(const LengthFunction& psi,
                                     const GroupAlgebraElement& x, int n) {
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = 0.0;
  for (const auto& [w, c] : x.terms()) {
    double v = psi(w);
    if (v > 0.0) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  }
  if (vmax == 0.0) return log_spaced_grid(1e-6, 1e3, n);
  return log_spaced_grid(1e-6 / vmax, 1e3 / vmin, n);
}

Corollary1Report corollary1_check(const LengthFunction& psi,
                                  const GroupAlgebraElement& x, int p,
                                  std::int64_t product_cap) {
  if (p < 2 || p % 2 != 0)
    throw PreconditionError("corollary check needs even p >= 2");
  if (x.support_size() < 2)
    throw CertificateError("lacunarity certificate needs >= 2 support words");

  std::vector<std::pair<double, Word>> ordered;
  for (const auto& [w, c] : x.terms()) ordered.emplace_back(psi(w), w);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) {
                     return a.first < b.first;
                   });
  std::vector<Word> seq;
  for (auto& [v, w] : ordered) seq.push_back(std::move(w));
  LacunaryReport rep = lacunarity_constants(psi, seq);
  if (!rep.passed)
    throw CertificateError("support is not psi-lacunary (delta <= 0)");

  Corollary1Report out;
  out.p = p;
  out.c_delta = rep.c_delta;
  double norm_p = moment_norm(x, p, product_cap);
  out.lhs = norm_p * norm_p;
  auto [col, row] = rcp_norms(x);
  out.rhs = std::pow(rep.c_delta, (p - 2.0) / p) * p * p *
            std::max(col, row);
  out.passed = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

}  // namespace lac
