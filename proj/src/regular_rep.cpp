#include "lacunaria/regular_rep.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace lac {

namespace {

constexpr std::int64_t kMaxPairs = 300'000'000;

double uniform_pm1(std::mt19937_64& rng) {
  // 53-bit mantissa draw in [0, 1), mapped to [-1, 1); bit-exact everywhere.
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

}  // namespace

TruncatedRepresentation::TruncatedRepresentation(int rank, int radius,
                                                 std::span<const Word> support,
                                                 int dim,
                                                 std::int64_t ball_cap)
    : rank_(rank), radius_(radius), dim_(dim) {
  if (rank < 1) throw PreconditionError("rank must be >= 1");
  if (radius < 0) throw PreconditionError("radius must be >= 0");
  if (dim < 1 || dim > kMaxCoeffDim)
    throw PreconditionError("coefficient dimension must be in [1, 8]");
  if (ball_cap >= (std::int64_t{1} << 31))
    throw PreconditionError("ball cap must stay below 2^31 words");
  n_in_ = ball_size(rank, radius);
  if (n_in_ > ball_cap) throw BudgetError("ball size exceeds cap");
  support_.assign(support.begin(), support.end());
  const std::int64_t s_count = static_cast<std::int64_t>(support_.size());
  if (s_count == 0) return;

  int max_len = 0;
  for (const Word& w : support_) {
    if (w.max_index() > rank_)
      throw PreconditionError("support word outside alphabet of given rank");
    max_len = std::max(max_len, static_cast<int>(w.length()));
  }
  const std::int64_t pairs = s_count * n_in_;
  if (pairs > kMaxPairs)
    throw BudgetError("truncated representation would be too large");

  std::vector<Word> ball = enumerate_ball(rank_, radius_, ball_cap);

  // Output slots: canonical rank of each product word when that fits int64,
  // hash-consed words otherwise (very long supports).
  bool rank_indexable = true;
  try {
    (void)ball_size(rank_, radius_ + max_len);
  } catch (const BudgetError&) {
    rank_indexable = false;
  }

  ito_.assign(static_cast<std::size_t>(pairs), 0);
  if (rank_indexable) {
    std::vector<std::int64_t> keys(static_cast<std::size_t>(pairs));
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n_in_; ++i)
      for (std::int64_t s = 0; s < s_count; ++s)
        keys[static_cast<std::size_t>(i) * s_count + s] =
            word_rank(support_[static_cast<std::size_t>(s)] * ball[i], rank_);
    std::vector<std::int64_t> vocab = keys;
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
    n_out_ = static_cast<std::int64_t>(vocab.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t e = 0; e < pairs; ++e)
      ito_[static_cast<std::size_t>(e)] = static_cast<std::int32_t>(
          std::lower_bound(vocab.begin(), vocab.end(),
                           keys[static_cast<std::size_t>(e)]) -
          vocab.begin());
  } else {
    std::unordered_map<Word, std::int32_t, WordHash> vocab;
    vocab.reserve(static_cast<std::size_t>(pairs));
    for (std::int64_t i = 0; i < n_in_; ++i)
      for (std::int64_t s = 0; s < s_count; ++s) {
        Word w = support_[static_cast<std::size_t>(s)] * ball[i];
        auto [it, inserted] =
            vocab.emplace(std::move(w), static_cast<std::int32_t>(vocab.size()));
        ito_[static_cast<std::size_t>(i) * s_count + s] = it->second;
      }
    n_out_ = static_cast<std::int64_t>(vocab.size());
  }

  // Group the pairs by output slot; within a slot the order is the
  // (ball index, support index) iteration order, fixed for determinism.
  row_ptr_.assign(static_cast<std::size_t>(n_out_) + 1, 0);
  for (std::int64_t e = 0; e < pairs; ++e)
    ++row_ptr_[static_cast<std::size_t>(ito_[static_cast<std::size_t>(e)]) + 1];
  for (std::int64_t o = 0; o < n_out_; ++o)
    row_ptr_[static_cast<std::size_t>(o) + 1] +=
        row_ptr_[static_cast<std::size_t>(o)];
  ent_support_.assign(static_cast<std::size_t>(pairs), 0);
  ent_in_.assign(static_cast<std::size_t>(pairs), 0);
  std::vector<std::int64_t> cursor(row_ptr_.begin(), row_ptr_.end() - 1);
  for (std::int64_t i = 0; i < n_in_; ++i)
    for (std::int64_t s = 0; s < s_count; ++s) {
      std::int32_t o = ito_[static_cast<std::size_t>(i) * s_count + s];
      std::int64_t pos = cursor[static_cast<std::size_t>(o)]++;
      ent_support_[static_cast<std::size_t>(pos)] =
          static_cast<std::int32_t>(s);
      ent_in_[static_cast<std::size_t>(pos)] = static_cast<std::int32_t>(i);
    }
}

// ---- complex kernels --------------------------------------------------------

namespace {

inline void coeff_mul_acc(const CMat& c, const cplx* src, cplx* acc, int d) {
  for (int r = 0; r < d; ++r) {
    cplx a = 0.0;
    for (int k = 0; k < d; ++k) a += c.at(r, k) * src[k];
    acc[r] += a;
  }
}

inline void coeff_adj_mul_acc(const CMat& c, const cplx* src, cplx* acc,
                              int d) {
  for (int r = 0; r < d; ++r) {
    cplx a = 0.0;
    for (int k = 0; k < d; ++k) a += std::conj(c.at(k, r)) * src[k];
    acc[r] += a;
  }
}

}  // namespace

void TruncatedRepresentation::forward_serial(std::span<const CMat> coeffs,
                                             std::span<const cplx> in,
                                             std::span<cplx> out) const {
  const int d = dim_;
  for (std::int64_t o = 0; o < n_out_; ++o) {
    cplx acc[kMaxCoeffDim] = {};
    for (std::int64_t e = row_ptr_[static_cast<std::size_t>(o)];
         e < row_ptr_[static_cast<std::size_t>(o) + 1]; ++e)
      coeff_mul_acc(coeffs[ent_support_[static_cast<std::size_t>(e)]],
                    in.data() +
                        static_cast<std::size_t>(
                            ent_in_[static_cast<std::size_t>(e)]) *
                            d,
                    acc, d);
    for (int r = 0; r < d; ++r) out[static_cast<std::size_t>(o) * d + r] =
        acc[r];
  }
}

void TruncatedRepresentation::forward(std::span<const CMat> coeffs,
                                      std::span<const cplx> in,
                                      std::span<cplx> out) const {
  const int d = dim_;
#pragma omp parallel for schedule(static)
  for (std::int64_t o = 0; o < n_out_; ++o) {
    cplx acc[kMaxCoeffDim] = {};
    for (std::int64_t e = row_ptr_[static_cast<std::size_t>(o)];
         e < row_ptr_[static_cast<std::size_t>(o) + 1]; ++e)
      coeff_mul_acc(coeffs[ent_support_[static_cast<std::size_t>(e)]],
                    in.data() +
                        static_cast<std::size_t>(
                            ent_in_[static_cast<std::size_t>(e)]) *
                            d,
                    acc, d);
    for (int r = 0; r < d; ++r) out[static_cast<std::size_t>(o) * d + r] =
        acc[r];
  }
}

void TruncatedRepresentation::adjoint_apply_serial(
    std::span<const CMat> coeffs, std::span<const cplx> v,
    std::span<cplx> out) const {
  const int d = dim_;
  const std::int64_t s_count = static_cast<std::int64_t>(support_.size());
  for (std::int64_t i = 0; i < n_in_; ++i) {
    cplx acc[kMaxCoeffDim] = {};
    for (std::int64_t s = 0; s < s_count; ++s)
      coeff_adj_mul_acc(
          coeffs[static_cast<std::size_t>(s)],
          v.data() + static_cast<std::size_t>(
                         ito_[static_cast<std::size_t>(i) * s_count + s]) *
                         d,
          acc, d);
    for (int r = 0; r < d; ++r) out[static_cast<std::size_t>(i) * d + r] =
        acc[r];
  }
}

void TruncatedRepresentation::adjoint_apply(std::span<const CMat> coeffs,
                                            std::span<const cplx> v,
                                            std::span<cplx> out) const {
  const int d = dim_;
  const std::int64_t s_count = static_cast<std::int64_t>(support_.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n_in_; ++i) {
    cplx acc[kMaxCoeffDim] = {};
    for (std::int64_t s = 0; s < s_count; ++s)
      coeff_adj_mul_acc(
          coeffs[static_cast<std::size_t>(s)],
          v.data() + static_cast<std::size_t>(
                         ito_[static_cast<std::size_t>(i) * s_count + s]) *
                         d,
          acc, d);
    for (int r = 0; r < d; ++r) out[static_cast<std::size_t>(i) * d + r] =
        acc[r];
  }
}

// ---- real scalar kernels ----------------------------------------------------

void TruncatedRepresentation::forward_real_serial(
    std::span<const double> coeffs, std::span<const double> in,
    std::span<double> out) const {
  for (std::int64_t o = 0; o < n_out_; ++o) {
    double acc = 0.0;
    for (std::int64_t e = row_ptr_[static_cast<std::size_t>(o)];
         e < row_ptr_[static_cast<std::size_t>(o) + 1]; ++e)
      acc += coeffs[ent_support_[static_cast<std::size_t>(e)]] *
             in[ent_in_[static_cast<std::size_t>(e)]];
    out[static_cast<std::size_t>(o)] = acc;
  }
}

void TruncatedRepresentation::forward_real(std::span<const double> coeffs,
                                           std::span<const double> in,
                                           std::span<double> out) const {
#pragma omp parallel for schedule(static)
  for (std::int64_t o = 0; o < n_out_; ++o) {
    double acc = 0.0;
    for (std::int64_t e = row_ptr_[static_cast<std::size_t>(o)];
         e < row_ptr_[static_cast<std::size_t>(o) + 1]; ++e)
      acc += coeffs[ent_support_[static_cast<std::size_t>(e)]] *
             in[ent_in_[static_cast<std::size_t>(e)]];
    out[static_cast<std::size_t>(o)] = acc;
  }
}

void TruncatedRepresentation::adjoint_real_serial(
    std::span<const double> coeffs, std::span<const double> v,
    std::span<double> out) const {
  const std::int64_t s_count = static_cast<std::int64_t>(support_.size());
  for (std::int64_t i = 0; i < n_in_; ++i) {
    double acc = 0.0;
    const std::int32_t* slots = ito_.data() + i * s_count;
    for (std::int64_t s = 0; s < s_count; ++s)
      acc += coeffs[static_cast<std::size_t>(s)] *
             v[static_cast<std::size_t>(slots[s])];
    out[static_cast<std::size_t>(i)] = acc;
  }
}

void TruncatedRepresentation::adjoint_real(std::span<const double> coeffs,
                                           std::span<const double> v,
                                           std::span<double> out) const {
  const std::int64_t s_count = static_cast<std::int64_t>(support_.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n_in_; ++i) {
    double acc = 0.0;
    const std::int32_t* slots = ito_.data() + i * s_count;
    for (std::int64_t s = 0; s < s_count; ++s)
      acc += coeffs[static_cast<std::size_t>(s)] *
             v[static_cast<std::size_t>(slots[s])];
    out[static_cast<std::size_t>(i)] = acc;
  }
}

// ---- power iteration --------------------------------------------------------

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

template <typename Vec>
void scale(Vec& v, double f) {
  for (auto& x : v) x *= f;
}

struct SeedRun {
  double sigma = 0.0;
  bool converged = false;
  int iterations = 0;
};

SeedRun power_run_real(const TruncatedRepresentation& plan,
                       std::span<const double> coeffs,
                       const OpNormOptions& opts, std::uint64_t seed) {
  const std::size_t n_in = static_cast<std::size_t>(plan.domain_words());
  const std::size_t n_out = static_cast<std::size_t>(plan.range_words());
  std::vector<double> xi(n_in), w(n_out), v(n_in);
  std::mt19937_64 rng(seed);
  for (double& x : xi) x = uniform_pm1(rng);

  SeedRun run;
  double prev = -1.0;
  for (int it = 1; it <= opts.iter_cap; ++it) {
    run.iterations = it;
    double nx = norm2(xi);
    if (nx == 0.0) {
      run.converged = true;
      return run;
    }
    scale(xi, 1.0 / nx);
    plan.forward_real(coeffs, xi, w);
    double sigma = norm2(w);
    run.sigma = sigma;
    if (sigma == 0.0) {
      run.converged = true;
      return run;
    }
    if (prev >= 0.0 && std::abs(sigma - prev) <= opts.rel_tol * sigma) {
      run.converged = true;
      return run;
    }
    prev = sigma;
    plan.adjoint_real(coeffs, w, v);
    xi.swap(v);
  }
  return run;  // converged stays false: cap hit, best iterate reported
}

SeedRun power_run_cplx(const TruncatedRepresentation& plan,
                       std::span<const CMat> coeffs,
                       const OpNormOptions& opts, std::uint64_t seed) {
  const int d = plan.dim();
  const std::size_t n_in = static_cast<std::size_t>(plan.domain_words()) * d;
  const std::size_t n_out = static_cast<std::size_t>(plan.range_words()) * d;
  std::vector<cplx> xi(n_in), w(n_out), v(n_in);
  std::mt19937_64 rng(seed);
  for (cplx& z : xi) {
    double re = uniform_pm1(rng);
    double im = uniform_pm1(rng);
    z = cplx(re, im);
  }

  SeedRun run;
  double prev = -1.0;
  for (int it = 1; it <= opts.iter_cap; ++it) {
    run.iterations = it;
    double nx = norm2(xi);
    if (nx == 0.0) {
      run.converged = true;
      return run;
    }
    scale(xi, 1.0 / nx);
    plan.forward(coeffs, xi, w);
    double sigma = norm2(w);
    run.sigma = sigma;
    if (sigma == 0.0) {
      run.converged = true;
      return run;
    }
    if (prev >= 0.0 && std::abs(sigma - prev) <= opts.rel_tol * sigma) {
      run.converged = true;
      return run;
    }
    prev = sigma;
    plan.adjoint_apply(coeffs, w, v);
    xi.swap(v);
  }
  return run;
}

}  // namespace

OpNormResult truncated_sigma_max(const TruncatedRepresentation& plan,
                                 std::span<const CMat> coeffs,
                                 const OpNormOptions& opts) {
  if (coeffs.size() != plan.support_size())
    throw PreconditionError("coefficient count does not match support");
  OpNormResult result;
  if (plan.support_size() == 0 || plan.range_words() == 0) return result;

  bool real_path = plan.dim() == 1;
  if (real_path)
    for (const CMat& c : coeffs)
      if (c.at(0, 0).imag() != 0.0) {
        real_path = false;
        break;
      }

  std::vector<double> real_coeffs;
  if (real_path) {
    real_coeffs.reserve(coeffs.size());
    for (const CMat& c : coeffs) real_coeffs.push_back(c.at(0, 0).real());
  }

  for (int restart = 0; restart < 2; ++restart) {
    SeedRun run =
        real_path
            ? power_run_real(plan, real_coeffs, opts, opts.seed + restart)
            : power_run_cplx(plan, coeffs, opts, opts.seed + restart);
    result.value = std::max(result.value, run.sigma);
    result.converged = result.converged && run.converged;
    result.iterations = std::max(result.iterations, run.iterations);
  }
  return result;
}

OpNormResult operator_norm_lower(const GroupAlgebraElement& x, int rank,
                                 int radius, const OpNormOptions& opts) {
  std::vector<Word> support;
  std::vector<CMat> coeffs;
  support.reserve(x.support_size());
  coeffs.reserve(x.support_size());
  for (const auto& [w, c] : x.terms()) {
    support.push_back(w);
    coeffs.push_back(c);
  }
  TruncatedRepresentation plan(rank, radius, support, x.dim(), opts.ball_cap);
  return truncated_sigma_max(plan, coeffs, opts);
}

}  // namespace lac
