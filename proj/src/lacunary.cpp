#include "lacunaria/lacunary.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <set>

namespace lac {

double c_delta_formula(double delta) {
  if (!(delta > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 + 1.0 / delta + 1.0 / (1.0 - std::exp(-delta * delta));
}

LacunaryReport lacunarity_constants(const LengthFunction& psi,
                                    std::span<const Word> seq) {
  const int k = static_cast<int>(seq.size());
  if (k < 2)
    throw PreconditionError("lacunarity needs a sequence of length >= 2");
  {
    std::set<Word, CanonicalLess> seen;
    for (const Word& w : seq)
      if (!seen.insert(w).second)
        throw DuplicateElementError("sequence contains a duplicate element");
  }
  std::vector<double> values(k);
  for (int i = 0; i < k; ++i) {
    values[i] = psi(seq[i]);
    if (values[i] == 0.0)
      throw ZeroLengthError("psi vanishes on a sequence element");
  }

  LacunaryReport rep;
  rep.delta_growth = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < k; ++i)
    rep.delta_growth =
        std::min(rep.delta_growth, values[i + 1] / values[i] - 1.0);

  rep.delta_separation = std::numeric_limits<double>::infinity();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;  // at i = j the condition cannot hold; see notes
      double sep = psi(seq[i].inverse() * seq[j]) /
                   std::max(values[i], values[j]);
      rep.delta_separation = std::min(rep.delta_separation, sep);
    }

  rep.delta = std::min(rep.delta_growth, rep.delta_separation);
  rep.passed = rep.delta > 0.0;
  rep.c_delta = c_delta_formula(rep.delta);
  return rep;
}

std::vector<double> coefficient_matrix(const LengthFunction& psi,
                                       std::span<const Word> seq, double t) {
  if (!(t > 0.0)) throw PreconditionError("coefficient matrix needs t > 0");
  const int k = static_cast<int>(seq.size());
  std::vector<double> defect(k);
  for (int i = 0; i < k; ++i) defect[i] = 1.0 - std::exp(-t * psi(seq[i]));
  std::vector<double> a(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double gap = psi(seq[i].inverse() * seq[j]);
      a[static_cast<std::size_t>(i) * k + j] =
          std::exp(-t * gap) * defect[i] * defect[j];
    }
  return a;
}

namespace {

// Worst row and column sum of the coefficient matrix at one t.
std::pair<double, double> schur_sums(const LengthFunction& psi,
                                     std::span<const Word> seq, double t) {
  const int k = static_cast<int>(seq.size());
  std::vector<double> a = coefficient_matrix(psi, seq, t);
  double row = 0.0, col = 0.0;
  for (int i = 0; i < k; ++i) {
    double r = 0.0, c = 0.0;
    for (int j = 0; j < k; ++j) {
      r += a[static_cast<std::size_t>(i) * k + j];
      c += a[static_cast<std::size_t>(j) * k + i];
    }
    row = std::max(row, r);
    col = std::max(col, c);
  }
  return {row, col};
}

SchurReport schur_reduce(const LengthFunction& psi, std::span<const Word> seq,
                         const std::vector<std::pair<double, double>>& sums) {
  LacunaryReport lrep = lacunarity_constants(psi, seq);
  if (!lrep.passed)
    throw PreconditionError("Schur bound requires a sequence with delta > 0");
  SchurReport rep;
  rep.c_delta = lrep.c_delta;
  for (const auto& [r, c] : sums) {
    rep.worst_row_sum = std::max(rep.worst_row_sum, r);
    rep.worst_col_sum = std::max(rep.worst_col_sum, c);
  }
  double worst = std::max(rep.worst_row_sum, rep.worst_col_sum);
  rep.margin = rep.c_delta - worst;
  rep.passed = worst <= rep.c_delta + 1e-9;
  return rep;
}

}  // namespace

SchurReport verify_schur_bound_serial(const LengthFunction& psi,
                                      std::span<const Word> seq,
                                      std::span<const double> t_grid) {
  std::vector<std::pair<double, double>> sums(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    sums[i] = schur_sums(psi, seq, t_grid[i]);
  return schur_reduce(psi, seq, sums);
}

SchurReport verify_schur_bound(const LengthFunction& psi,
                               std::span<const Word> seq,
                               std::span<const double> t_grid) {
  const auto n = static_cast<std::int64_t>(t_grid.size());
  std::vector<std::pair<double, double>> sums(t_grid.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      sums[i] = schur_sums(psi, seq, t_grid[i]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return schur_reduce(psi, seq, sums);
}

std::vector<double> log_spaced_grid(double tmin, double tmax, int n) {
  if (!(tmin > 0.0) || !(tmax > tmin))
    throw PreconditionError("grid needs 0 < tmin < tmax");
  if (n < 2) throw PreconditionError("grid needs n >= 2");
  std::vector<double> grid(n);
  double l0 = std::log(tmin);
  double l1 = std::log(tmax);
  for (int i = 0; i < n; ++i)
    grid[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
  return grid;
}

std::vector<double> default_t_grid(const LengthFunction& psi,
                                   std::span<const Word> seq, int n) {
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = 0.0;
  for (const Word& w : seq) {
    double v = psi(w);
    if (v > 0.0) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  }
  if (vmax == 0.0) return log_spaced_grid(1e-6, 1e3, n);
  return log_spaced_grid(1e-6 / vmax, 1e3 / vmin, n);
}

ProposedSequence propose_lacunary_sequence(int rank,
                                           const LengthFunction& psi, int k) {
  if (k < 2) throw PreconditionError("propose needs K >= 2");
  if (rank < 1) throw PreconditionError("rank must be >= 1");

  auto geometric = [&](int base) {
    // Word lengths 2*base^i, i = 0..K-1: a-powers on Z, (g1 g2)-powers above.
    std::vector<Word> seq;
    for (int i = 0; i < k; ++i) {
      std::int64_t len = 2;
      for (int j = 0; j < i; ++j) {
        len *= base;
        if (len > kDefaultBallCap)
          throw BudgetError("proposed sequence words would be too long");
      }
      std::vector<Letter> letters;
      letters.reserve(static_cast<std::size_t>(len));
      if (rank == 1) {
        letters.assign(static_cast<std::size_t>(len), 1);
      } else {
        for (std::int64_t j = 0; j < len / 2; ++j) {
          letters.push_back(1);
          letters.push_back(2);
        }
      }
      seq.push_back(Word::from_reduced(std::move(letters)));
    }
    return seq;
  };

  // Doubling word lengths first, tripling as the fallback family.
  for (int base : {2, 3}) {
    std::vector<Word> seq = geometric(base);
    try {
      LacunaryReport rep = lacunarity_constants(psi, seq);
      if (rep.passed) return {std::move(seq), rep};
    } catch (const Error&) {
      // try the next family
    }
  }
  throw PreconditionError(
      "no candidate sequence verified as lacunary for this psi");
}

}  // namespace lac
