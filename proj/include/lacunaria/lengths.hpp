#pragma once

// Length functions psi on words and numerical verification of conditional
// negativity, subadditivity, symmetry and unitality on finite subsets.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacunaria/word.hpp"

namespace lac {

struct LengthFunction {
  std::string name;
  std::function<double(const Word&)> eval;
  bool declared_symmetric = true;
  bool declared_unital = true;

  double operator()(const Word& w) const { return eval(w); }
};

// Built-ins. "word" and "abs" agree on rank-1 words (|a^k| = |k|); they are
// listed separately because the CLI names them separately.
LengthFunction word_length_function();
LengthFunction abs_length_function();
LengthFunction power_length_function(double alpha);  // word_length^alpha

// Table-backed psi; evaluation of a word missing from the table throws.
LengthFunction table_length_function(
    std::map<Word, double, CanonicalLess> table, std::string name);

// "word" | "abs" | "pow:<alpha>".
LengthFunction length_function_by_name(const std::string& spec);

// ---- conditional negativity -------------------------------------------------

struct CnWitness {
  std::vector<double> coefficients;  // sums to 0 within 1e-12
  double quadratic_form;             // a^T M a, positive on failure
};

struct CnVerdict {
  bool passed = false;
  double max_eigenvalue = 0.0;  // of the mean-zero-restricted form
  std::optional<CnWitness> witness;  // present iff !passed
};

// M[i][j] = psi(S[i]^{-1} S[j]); exactly symmetric, zero diagonal for
// unital psi. Throws PreconditionError when psi is asymmetric on S beyond
// 1e-12.
std::vector<double> gram_matrix(const LengthFunction& psi,
                                std::span<const Word> s);
std::vector<double> gram_matrix_serial(const LengthFunction& psi,
                                       std::span<const Word> s);

// Restricts the quadratic form to the mean-zero subspace via a Helmert
// orthonormal basis and reports the max eigenvalue of the restricted form.
// tol is absolute, internally scaled by max(1, max-norm of M).
// Dimension <= 64 uses the full Jacobi spectrum, larger sizes shifted power
// iteration (rel tol 1e-10, cap 1e5; ConvergenceError when exceeded).
CnVerdict check_conditionally_negative(const LengthFunction& psi,
                                       std::span<const Word> s,
                                       double tol = 1e-9);

struct SubadditivityReport {
  bool passed = true;
  std::optional<std::pair<Word, Word>> violation;
  double lhs = 0.0;  // psi(uv) of the violating pair
  double rhs = 0.0;  // psi(u) + psi(v)
};

SubadditivityReport check_subadditive(const LengthFunction& psi,
                                      std::span<const Word> s);

struct SymmetryUnitalityReport {
  bool symmetric = true;
  bool unital = true;
  std::optional<Word> asymmetry_witness;
  double identity_value = 0.0;  // psi(e)
};

SymmetryUnitalityReport check_symmetry_unitality(const LengthFunction& psi,
                                                 std::span<const Word> s);

}  // namespace lac
