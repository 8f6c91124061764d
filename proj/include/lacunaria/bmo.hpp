#pragma once

// Semigroup BMO norm estimation: certified lower bounds from the truncated
// regular representation, the Theorem-style certified upper bound from the
// lacunarity constants, the exact torus path for rank 1, and the even-p
// moment inequality check.

#include <optional>
#include <span>
#include <vector>

#include "lacunaria/algebra.hpp"
#include "lacunaria/lacunary.hpp"
#include "lacunaria/regular_rep.hpp"

namespace lac {

struct BmoEstimate {
  double bmo_c_lower = 0.0;          // column estimate for x
  double bmo_c_adjoint_lower = 0.0;  // column estimate for x*
  double bmo_lower = 0.0;            // max of the two
  std::optional<double> certified_upper;
  double t_star = 0.0;  // grid point attaining bmo_lower
  int radius_used = 0;
};

// max over t of sigma_max(lambda(T_t |x - T_t x|^2), R)^{1/2}; a lower bound
// of the true BMO_c norm, nondecreasing in grid refinement and in R.
double bmo_c_estimate(const LengthFunction& psi, const GroupAlgebraElement& x,
                      std::span<const double> t_grid, int radius,
                      const OpNormOptions& opts = {},
                      double* t_star_out = nullptr);

BmoEstimate bmo_estimate(const LengthFunction& psi,
                         const GroupAlgebraElement& x,
                         std::span<const double> t_grid, int radius,
                         const OpNormOptions& opts = {});

// sqrt(c_delta * max(rcp_norms)) when the support, ordered by increasing
// psi, verifies as lacunary; exact ||c|| for a single term; absent when
// lacunarity fails (ties in psi included).
std::optional<double> theorem1_certificate(const LengthFunction& psi,
                                           const GroupAlgebraElement& x);

// sup_t tau(T_t |x - T_t x|^2) over the grid plus the analytic large-t
// limit; a lower bound of BMO_c^2 that needs no truncation.
double bmo_lower_witness(const LengthFunction& psi,
                         const GroupAlgebraElement& x,
                         std::span<const double> t_grid);

// Exact rank-1 path: the integrand is a trigonometric polynomial whose sup
// norm is found by dense sampling plus one golden-section refinement around
// the discrete argmax. Returns sup_t max_theta sqrt(y_t(theta)).
double torus_bmo_estimate(const GroupAlgebraElement& x,
                          std::span<const double> t_grid,
                          int n_samples = 1 << 16);
double torus_bmo_estimate_serial(const GroupAlgebraElement& x,
                                 std::span<const double> t_grid,
                                 int n_samples = 1 << 16);

// Default grid for BMO work: 49 log-spaced points spanning
// [1e-6/psi_max(support), 1e3/psi_min(support)].
std::vector<double> default_bmo_grid(const LengthFunction& psi,
                                     const GroupAlgebraElement& x, int n = 49);

struct Corollary1Report {
  int p = 0;
  double lhs = 0.0;      // ||x||_p^2, exact even-p moments
  double rhs = 0.0;      // c_delta^{(p-2)/p} p^2 max(rcp_norms)
  double c_delta = 0.0;
  bool passed = false;
};

// Requires a lacunarity certificate on the psi-sorted support.
Corollary1Report corollary1_check(const LengthFunction& psi,
                                  const GroupAlgebraElement& x, int p,
                                  std::int64_t product_cap = kDefaultBallCap);

}  // namespace lac
