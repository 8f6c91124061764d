#include "lacunaria/smallmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace lac {

CMat::CMat(int d) : d_(d) {
  if (d < 1 || d > kMaxCoeffDim)
    throw PreconditionError("coefficient dimension must be in [1, 8]");
  a_.assign(static_cast<std::size_t>(d) * d, cplx(0.0, 0.0));
}

CMat CMat::identity(int d) {
  CMat m(d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
  return m;
}

CMat CMat::scalar(int d, cplx z) {
  CMat m(d);
  for (int i = 0; i < d; ++i) m.at(i, i) = z;
  return m;
}

CMat CMat::adjoint() const {
  CMat m(d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) m.at(i, j) = std::conj(at(j, i));
  return m;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const cplx& z : a_)
    m = std::max(m, std::max(std::abs(z.real()), std::abs(z.imag())));
  return m;
}

cplx CMat::trace() const {
  cplx t = 0.0;
  for (int i = 0; i < d_; ++i) t += at(i, i);
  return t;
}

double CMat::frobenius_sq() const {
  double s = 0.0;
  for (const cplx& z : a_) s += std::norm(z);
  return s;
}

bool CMat::all_real(double tol) const {
  for (const cplx& z : a_)
    if (std::abs(z.imag()) > tol) return false;
  return true;
}

CMat& CMat::operator+=(const CMat& o) {
  if (d_ != o.d_) throw PreconditionError("matrix dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& o) {
  if (d_ != o.d_) throw PreconditionError("matrix dimension mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CMat& CMat::operator*=(cplx z) {
  for (cplx& v : a_) v *= z;
  return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
  if (a.d_ != b.d_) throw PreconditionError("matrix dimension mismatch");
  int d = a.d_;
  CMat c(d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      cplx aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < d; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

SymmetricEigen jacobi_eigen(const std::vector<double>& m, int n) {
  if (n < 1 || m.size() != static_cast<std::size_t>(n) * n)
    throw PreconditionError("bad matrix size");
  std::vector<double> a = m;
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i + static_cast<std::size_t>(n) * i] = 1.0;

  auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[idx(i, j)] * a[idx(i, j)];
    if (off <= 1e-300) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[idx(p, q)];
        if (apq == 0.0) continue;
        double app = a[idx(p, p)];
        double aqq = a[idx(q, q)];
        double scale = std::abs(app) + std::abs(aqq) + std::abs(apq);
        if (scale == 0.0 || std::abs(apq) <= 1e-18 * scale) {
          a[idx(p, q)] = a[idx(q, p)] = 0.0;
          continue;
        }
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;

        for (int k = 0; k < n; ++k) {
          double akp = a[idx(k, p)];
          double akq = a[idx(k, q)];
          a[idx(k, p)] = c * akp - s * akq;
          a[idx(k, q)] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[idx(p, k)];
          double aqk = a[idx(q, k)];
          a[idx(p, k)] = c * apk - s * aqk;
          a[idx(q, k)] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v[idx(k, p)];
          double vkq = v[idx(k, q)];
          v[idx(k, p)] = c * vkp - s * vkq;
          v[idx(k, q)] = s * vkp + c * vkq;
        }
      }
    }
  }

  // Sort ascending, carrying eigenvectors along.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return a[idx(x, x)] < a[idx(y, y)];
  });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k) {
    out.values[k] = a[idx(order[k], order[k])];
    for (int i = 0; i < n; ++i)
      out.vectors[i + static_cast<std::size_t>(n) * k] =
          v[idx(i, order[k])];
  }
  return out;
}

double max_eigenvalue_power(const std::vector<double>& m, int n,
                            double rel_tol, int iter_cap,
                            std::uint64_t seed) {
  if (n < 1 || m.size() != static_cast<std::size_t>(n) * n)
    throw PreconditionError("bad matrix size");
  // Shift by the max absolute row sum so the iterated matrix is PSD and the
  // dominant eigenvalue of M + shift*I is lambda_max(M) + shift.
  double shift = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j)
      row += std::abs(m[static_cast<std::size_t>(i) * n + j]);
    shift = std::max(shift, row);
  }
  std::mt19937_64 rng(seed);
  std::vector<double> x(n), y(n);
  for (double& xi : x)
    xi = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  double prev = 0.0;
  for (int it = 0; it < iter_cap; ++it) {
    double nx = std::sqrt(
        std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    if (nx == 0.0) {
      x.assign(n, 1.0);
      continue;
    }
    for (double& xi : x) xi /= nx;
    for (int i = 0; i < n; ++i) {
      double s = shift * x[i];
      for (int j = 0; j < n; ++j)
        s += m[static_cast<std::size_t>(i) * n + j] * x[j];
      y[i] = s;
    }
    double lambda =
        std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    if (it > 0 && std::abs(lambda - prev) <=
                      rel_tol * std::max(std::abs(lambda), 1e-300))
      return lambda - shift;
    prev = lambda;
    x = y;
  }
  throw ConvergenceError("power iteration did not converge");
}

double hermitian_max_eigenvalue(const CMat& h) {
  int d = h.dim();
  if (d == 0) return 0.0;
  // [X -Y; Y X] for H = X + iY has the eigenvalues of H, each doubled.
  int n = 2 * d;
  std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
  auto set = [&](int i, int j, double v) {
    e[static_cast<std::size_t>(i) * n + j] = v;
  };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double x = h.at(i, j).real();
      double y = h.at(i, j).imag();
      set(i, j, x);
      set(i + d, j + d, x);
      set(i, j + d, -y);
      set(i + d, j, y);
    }
  SymmetricEigen eig = jacobi_eigen(e, n);
  return eig.values.back();
}

double spectral_norm(const CMat& a) {
  int d = a.dim();
  if (d == 0) return 0.0;
  CMat ata = a.adjoint() * a;
  double lam = hermitian_max_eigenvalue(ata);
  return std::sqrt(std::max(lam, 0.0));
}

}  // namespace lac
