#pragma once

// Reduced words over the signed-integer alphabet Z \ {0}.  Index -k denotes
// the inverse of index k, so one representation serves F_r for every rank,
// Z (= F_1) and finitely indexed subsets of F_infinity.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lacunaria/errors.hpp"

namespace lac {

using Letter = std::int32_t;

// Default guard for ball enumeration and product enumeration sizes.
inline constexpr std::int64_t kDefaultBallCap = 5'000'000;

// Canonical letter order: -1 < 1 < -2 < 2 < -3 < 3 < ...
// key is the position of the letter in that order, starting at 0.
inline int letter_key(Letter v) {
  int a = v < 0 ? -v : v;
  return 2 * (a - 1) + (v > 0 ? 1 : 0);
}
inline Letter key_letter(int key) {
  return (key % 2 == 0) ? -(key / 2 + 1) : (key / 2 + 1);
}

class Word {
 public:
  Word() = default;  // identity

  // Free reduction of an arbitrary letter sequence. Rejects index 0.
  static Word reduce(std::span<const Letter> letters);
  static Word reduce(std::initializer_list<Letter> letters) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()));
  }

  // Wraps a sequence that is already reduced (checked).
  static Word from_reduced(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  Word inverse() const;

  friend Word operator*(const Word& u, const Word& v);

  bool operator==(const Word&) const = default;

  // Largest absolute generator index used (0 for the identity).
  int max_index() const;

 private:
  std::vector<Letter> letters_;
};

// Length-major order, then lexicographic on letter keys. This is the
// enumeration order of enumerate_ball and the canonical order used for
// deterministic iteration over supports.
bool canonical_less(const Word& a, const Word& b);

struct CanonicalLess {
  bool operator()(const Word& a, const Word& b) const {
    return canonical_less(a, b);
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const;
};

// ---- sphere / ball enumeration -------------------------------------------

// #P_d = 2r(2r-1)^{d-1} for d >= 1, 1 for d = 0. Throws BudgetError on
// int64 overflow.
std::int64_t sphere_size(int rank, int d);
// #P_{<=d}.
std::int64_t ball_size(int rank, int d);

// All reduced words of length exactly d / at most d over indices
// {+-1..+-rank}, in canonical order. Refuses when the predicted size
// exceeds cap.
std::vector<Word> enumerate_sphere(int rank, int d,
                                   std::int64_t cap = kDefaultBallCap);
std::vector<Word> enumerate_ball(int rank, int d,
                                 std::int64_t cap = kDefaultBallCap);

// Position of w in the canonical enumeration of F_rank (0 = identity).
// Exact inverse pair; neither touches any stored table.
std::int64_t word_rank(const Word& w, int rank);
Word word_unrank(std::int64_t index, int rank);

// ---- homomorphisms ---------------------------------------------------------

// Determined by images of positive generator indices; the image of -k is
// the inverse of the image of k, never stored separately.
class Homomorphism {
 public:
  // Rule-based: may supply images for all positive integers.
  explicit Homomorphism(
      std::function<std::optional<Word>(int)> image_of_positive)
      : rule_(std::move(image_of_positive)) {}

  static Homomorphism from_table(std::map<int, Word> images);

  // Image of a single letter; k < 0 maps to the inverse image.
  Word image(Letter k) const;

  // Reduced image of a word. Multiplicative by construction.
  Word apply(const Word& u) const;

 private:
  std::function<std::optional<Word>(int)> rule_;
};

inline Word apply_homomorphism(const Homomorphism& h, const Word& u) {
  return h.apply(u);
}

}  // namespace lac
