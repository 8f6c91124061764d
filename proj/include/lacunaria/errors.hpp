#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lac {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured size cap (ball size, convolution support, product
// enumeration) would be exceeded. Hard error, never silent truncation.
struct BudgetError : Error {
  using Error::Error;
};

// Malformed input text; column is 1-based, line is 0 when unknown.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what), line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

// An operation's stated precondition does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

// Iterative eigenvalue/singular-value computation hit its iteration cap.
// Distinct from a mathematical verdict: the answer is unknown, not "failed".
struct ConvergenceError : Error {
  using Error::Error;
};

// A sequence fed to the lacunarity analysis contains the same word twice.
// Distinct from a genuine delta = 0 failure.
struct DuplicateElementError : Error {
  using Error::Error;
};

// A word with psi = 0 appears where the lacunarity constants are undefined.
struct ZeroLengthError : Error {
  using Error::Error;
};

// A homomorphism has no image for a generator index that occurs in the input.
struct MissingImageError : Error {
  using Error::Error;
};

// An operation that requires a freeness or lacunarity certificate was called
// without one.
struct CertificateError : Error {
  using Error::Error;
};

}  // namespace lac
