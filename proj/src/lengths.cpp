#include "lacunaria/lengths.hpp"

#include <cmath>
#include <exception>
#include <memory>

#include "lacunaria/smallmat.hpp"

namespace lac {

LengthFunction word_length_function() {
  return {"word", [](const Word& w) { return static_cast<double>(w.length()); },
          true, true};
}

LengthFunction abs_length_function() {
  return {"abs", [](const Word& w) { return static_cast<double>(w.length()); },
          true, true};
}

LengthFunction power_length_function(double alpha) {
  if (!(alpha > 0.0)) throw PreconditionError("pow length needs alpha > 0");
  return {"pow:" + std::to_string(alpha),
          [alpha](const Word& w) {
            return std::pow(static_cast<double>(w.length()), alpha);
          },
          true, true};
}

LengthFunction table_length_function(
    std::map<Word, double, CanonicalLess> table, std::string name) {
  bool unital = true;
  auto it = table.find(Word());
  if (it != table.end() && it->second != 0.0) unital = false;
  bool symmetric = true;
  for (const auto& [w, v] : table) {
    auto jt = table.find(w.inverse());
    if (jt != table.end() && std::abs(jt->second - v) > 1e-12) {
      symmetric = false;
      break;
    }
  }
  auto shared = std::make_shared<std::map<Word, double, CanonicalLess>>(
      std::move(table));
  return {std::move(name),
          [shared](const Word& w) {
            auto it = shared->find(w);
            if (it == shared->end())
              throw PreconditionError("word not present in psi table");
            return it->second;
          },
          symmetric, unital};
}

LengthFunction length_function_by_name(const std::string& spec) {
  if (spec == "word") return word_length_function();
  if (spec == "abs") return abs_length_function();
  if (spec.rfind("pow:", 0) == 0) {
    std::size_t pos = 0;
    double alpha = std::stod(spec.substr(4), &pos);
    if (pos != spec.size() - 4)
      throw ParseError("malformed pow:<alpha> spec", 0, 5 + pos);
    return power_length_function(alpha);
  }
  throw PreconditionError("unknown length function: " + spec);
}

namespace {

double gram_entry(const LengthFunction& psi, const Word& a, const Word& b) {
  double fwd = psi(a.inverse() * b);
  double bwd = psi(b.inverse() * a);
  if (std::abs(fwd - bwd) > 1e-12)
    throw PreconditionError("psi is asymmetric on the given set");
  return fwd;
}

}  // namespace

std::vector<double> gram_matrix_serial(const LengthFunction& psi,
                                       std::span<const Word> s) {
  const int n = static_cast<int>(s.size());
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = gram_entry(psi, s[i], s[j]);
      m[static_cast<std::size_t>(i) * n + j] = v;
      m[static_cast<std::size_t>(j) * n + i] = v;
    }
  return m;
}

std::vector<double> gram_matrix(const LengthFunction& psi,
                                std::span<const Word> s) {
  const int n = static_cast<int>(s.size());
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < n; ++i) {
    try {
      for (int j = i + 1; j < n; ++j) {
        double v = gram_entry(psi, s[i], s[j]);
        m[static_cast<std::size_t>(i) * n + j] = v;
        m[static_cast<std::size_t>(j) * n + i] = v;
      }
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return m;
}

CnVerdict check_conditionally_negative(const LengthFunction& psi,
                                       std::span<const Word> s, double tol) {
  const int n = static_cast<int>(s.size());
  if (n < 2)
    throw PreconditionError("conditional negativity needs at least 2 words");
  std::vector<double> m = gram_matrix(psi, s);

  double max_norm = 0.0;
  for (double v : m) max_norm = std::max(max_norm, std::abs(v));
  double tol_eff = tol * std::max(1.0, max_norm);

  // Helmert basis of the mean-zero subspace: v_k has k entries 1/s_k
  // followed by -k/s_k, s_k = sqrt(k(k+1)), k = 1..n-1.
  const int r = n - 1;
  std::vector<double> basis(static_cast<std::size_t>(n) * r, 0.0);
  for (int k = 1; k <= r; ++k) {
    double sk = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i)
      basis[static_cast<std::size_t>(i) * r + (k - 1)] = 1.0 / sk;
    basis[static_cast<std::size_t>(k) * r + (k - 1)] = -k / sk;
  }

  // B = V^T M V, r x r symmetric.
  std::vector<double> mv(static_cast<std::size_t>(n) * r, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < r; ++k) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j)
        acc += m[static_cast<std::size_t>(i) * n + j] *
               basis[static_cast<std::size_t>(j) * r + k];
      mv[static_cast<std::size_t>(i) * r + k] = acc;
    }
  std::vector<double> b(static_cast<std::size_t>(r) * r, 0.0);
  for (int k = 0; k < r; ++k)
    for (int l = k; l < r; ++l) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += basis[static_cast<std::size_t>(i) * r + k] *
               mv[static_cast<std::size_t>(i) * r + l];
      b[static_cast<std::size_t>(k) * r + l] = acc;
      b[static_cast<std::size_t>(l) * r + k] = acc;
    }

  CnVerdict verdict;
  std::vector<double> top_vec;  // restricted coordinates of the top direction
  if (r <= 64) {
    SymmetricEigen eig = jacobi_eigen(b, r);
    verdict.max_eigenvalue = eig.values.back();
    top_vec.resize(r);
    for (int i = 0; i < r; ++i)
      top_vec[i] = eig.vectors[i + static_cast<std::size_t>(r) * (r - 1)];
  } else {
    verdict.max_eigenvalue =
        max_eigenvalue_power(b, r, 1e-10, 100000, 0x6c61636eull);
    // Witness direction via a few extra shifted iterations is not needed
    // here; recompute with Jacobi only when a witness must be produced.
    if (verdict.max_eigenvalue > tol_eff) {
      SymmetricEigen eig = jacobi_eigen(b, r);
      verdict.max_eigenvalue = eig.values.back();
      top_vec.resize(r);
      for (int i = 0; i < r; ++i)
        top_vec[i] = eig.vectors[i + static_cast<std::size_t>(r) * (r - 1)];
    }
  }

  verdict.passed = verdict.max_eigenvalue <= tol_eff;
  if (!verdict.passed) {
    CnWitness w;
    w.coefficients.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int k = 0; k < r; ++k)
        acc += basis[static_cast<std::size_t>(i) * r + k] * top_vec[k];
      w.coefficients[i] = acc;
    }
    double q = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        q += w.coefficients[i] * m[static_cast<std::size_t>(i) * n + j] *
             w.coefficients[j];
    w.quadratic_form = q;
    verdict.witness = std::move(w);
  }
  return verdict;
}

SubadditivityReport check_subadditive(const LengthFunction& psi,
                                      std::span<const Word> s) {
  SubadditivityReport rep;
  for (const Word& u : s)
    for (const Word& v : s) {
      double lhs = psi(u * v);
      double rhs = psi(u) + psi(v);
      if (lhs > rhs + 1e-12) {
        rep.passed = false;
        rep.violation = {u, v};
        rep.lhs = lhs;
        rep.rhs = rhs;
        return rep;
      }
    }
  return rep;
}

SymmetryUnitalityReport check_symmetry_unitality(const LengthFunction& psi,
                                                 std::span<const Word> s) {
  SymmetryUnitalityReport rep;
  rep.identity_value = psi(Word());
  if (std::abs(rep.identity_value) > 1e-12) rep.unital = false;
  for (const Word& w : s) {
    if (std::abs(psi(w) - psi(w.inverse())) > 1e-12) {
      rep.symmetric = false;
      rep.asymmetry_witness = w;
      break;
    }
  }
  return rep;
}

}  // namespace lac
