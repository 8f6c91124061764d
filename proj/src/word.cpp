#include "lacunaria/word.hpp"

#include <algorithm>
#include <limits>
#include <memory>

namespace lac {

Word Word::reduce(std::span<const Letter> letters) {
  Word w;
  w.letters_.reserve(letters.size());
  for (Letter v : letters) {
    if (v == 0) throw PreconditionError("generator index 0 is not allowed");
    if (!w.letters_.empty() && w.letters_.back() == -v) {
      w.letters_.pop_back();
    } else {
      w.letters_.push_back(v);
    }
  }
  return w;
}

Word Word::from_reduced(std::vector<Letter> letters) {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] == 0)
      throw PreconditionError("generator index 0 is not allowed");
    if (i + 1 < letters.size() && letters[i] == -letters[i + 1])
      throw PreconditionError("sequence is not reduced");
  }
  Word w;
  w.letters_ = std::move(letters);
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.resize(letters_.size());
  for (std::size_t i = 0; i < letters_.size(); ++i)
    w.letters_[i] = -letters_[letters_.size() - 1 - i];
  return w;
}

Word operator*(const Word& u, const Word& v) {
  // Both inputs reduced: cancellation happens only at the junction.
  std::size_t i = u.letters_.size();
  std::size_t j = 0;
  while (i > 0 && j < v.letters_.size() &&
         u.letters_[i - 1] == -v.letters_[j]) {
    --i;
    ++j;
  }
  Word w;
  w.letters_.reserve(i + v.letters_.size() - j);
  w.letters_.assign(u.letters_.begin(), u.letters_.begin() + i);
  w.letters_.insert(w.letters_.end(), v.letters_.begin() + j,
                    v.letters_.end());
  return w;
}

int Word::max_index() const {
  int m = 0;
  for (Letter v : letters_) m = std::max(m, v < 0 ? -v : v);
  return m;
}

bool canonical_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  const auto& x = a.letters();
  const auto& y = b.letters();
  for (std::size_t i = 0; i < x.size(); ++i) {
    int ka = letter_key(x[i]);
    int kb = letter_key(y[i]);
    if (ka != kb) return ka < kb;
  }
  return false;
}

std::size_t WordHash::operator()(const Word& w) const {
  // FNV-1a over the letter values.
  std::uint64_t h = 1469598103934665603ull;
  for (Letter v : w.letters()) {
    h ^= static_cast<std::uint32_t>(v);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  if (a != 0 && b > std::numeric_limits<std::int64_t>::max() / a)
    throw BudgetError("ball size overflows int64");
  return a * b;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  if (b > std::numeric_limits<std::int64_t>::max() - a)
    throw BudgetError("ball size overflows int64");
  return a + b;
}

void check_rank(int rank) {
  if (rank < 1) throw PreconditionError("rank must be >= 1");
}

}  // namespace

std::int64_t sphere_size(int rank, int d) {
  check_rank(rank);
  if (d < 0) throw PreconditionError("d must be >= 0");
  if (d == 0) return 1;
  std::int64_t s = 2 * static_cast<std::int64_t>(rank);
  for (int i = 1; i < d; ++i) s = checked_mul(s, 2 * rank - 1);
  return s;
}

std::int64_t ball_size(int rank, int d) {
  check_rank(rank);
  if (d < 0) throw PreconditionError("d must be >= 0");
  std::int64_t total = 1;
  std::int64_t sphere = 1;
  for (int i = 1; i <= d; ++i) {
    sphere = (i == 1) ? 2 * static_cast<std::int64_t>(rank)
                      : checked_mul(sphere, 2 * rank - 1);
    total = checked_add(total, sphere);
  }
  return total;
}

std::vector<Word> enumerate_sphere(int rank, int d, std::int64_t cap) {
  std::int64_t predicted = sphere_size(rank, d);
  if (predicted > cap) throw BudgetError("sphere size exceeds cap");
  std::vector<Word> prev;
  prev.push_back(Word());
  if (d == 0) return prev;
  for (int len = 1; len <= d; ++len) {
    std::vector<Word> next;
    next.reserve(static_cast<std::size_t>(sphere_size(rank, len)));
    for (const Word& w : prev) {
      Letter last = w.is_identity() ? 0 : w.letters().back();
      for (int key = 0; key < 2 * rank; ++key) {
        Letter v = key_letter(key);
        if (last != 0 && v == -last) continue;
        std::vector<Letter> letters = w.letters();
        letters.push_back(v);
        next.push_back(Word::from_reduced(std::move(letters)));
      }
    }
    prev = std::move(next);
  }
  return prev;
}

std::vector<Word> enumerate_ball(int rank, int d, std::int64_t cap) {
  std::int64_t predicted = ball_size(rank, d);
  if (predicted > cap) throw BudgetError("ball size exceeds cap");
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(predicted));
  for (int len = 0; len <= d; ++len) {
    std::vector<Word> sphere = enumerate_sphere(rank, len, cap);
    out.insert(out.end(), std::make_move_iterator(sphere.begin()),
               std::make_move_iterator(sphere.end()));
  }
  return out;
}

std::int64_t word_rank(const Word& w, int rank) {
  check_rank(rank);
  const auto& letters = w.letters();
  int len = static_cast<int>(letters.size());
  if (len == 0) return 0;
  // Mixed-radix position within the sphere: the first letter ranges over
  // 2r keys, each following letter over the 2r-1 keys that do not cancel.
  std::int64_t pos = 0;
  for (int i = 0; i < len; ++i) {
    int key = letter_key(letters[i]);
    if (key >= 2 * rank)
      throw PreconditionError("letter outside alphabet of given rank");
    int digit, base;
    if (i == 0) {
      digit = key;
      base = 2 * rank;
    } else {
      int excluded = letter_key(-letters[i - 1]);
      digit = key - (key > excluded ? 1 : 0);
      base = 2 * rank - 1;
    }
    pos = checked_add(checked_mul(pos, base), digit);
  }
  return checked_add(ball_size(rank, len - 1), pos);
}

Word word_unrank(std::int64_t index, int rank) {
  check_rank(rank);
  if (index < 0) throw PreconditionError("negative word index");
  if (index == 0) return Word();
  int len = 1;
  while (ball_size(rank, len) <= index) ++len;
  std::int64_t pos = index - ball_size(rank, len - 1);
  // Decode digits most-significant first.
  std::vector<int> digits(len);
  for (int i = len - 1; i >= 1; --i) {
    digits[i] = static_cast<int>(pos % (2 * rank - 1));
    pos /= (2 * rank - 1);
  }
  digits[0] = static_cast<int>(pos);
  std::vector<Letter> letters(len);
  letters[0] = key_letter(digits[0]);
  for (int i = 1; i < len; ++i) {
    int excluded = letter_key(-letters[i - 1]);
    int key = digits[i] + (digits[i] >= excluded ? 1 : 0);
    letters[i] = key_letter(key);
  }
  return Word::from_reduced(std::move(letters));
}

Homomorphism Homomorphism::from_table(std::map<int, Word> images) {
  for (const auto& [k, w] : images) {
    (void)w;
    if (k <= 0)
      throw PreconditionError(
          "homomorphism tables list positive indices only");
  }
  auto table = std::make_shared<std::map<int, Word>>(std::move(images));
  return Homomorphism([table](int k) -> std::optional<Word> {
    auto it = table->find(k);
    if (it == table->end()) return std::nullopt;
    return it->second;
  });
}

Word Homomorphism::image(Letter k) const {
  if (k == 0) throw PreconditionError("generator index 0 is not allowed");
  int pos = k < 0 ? -k : k;
  std::optional<Word> img = rule_(pos);
  if (!img)
    throw MissingImageError("no image for generator index " +
                            std::to_string(pos));
  return k > 0 ? *img : img->inverse();
}

Word Homomorphism::apply(const Word& u) const {
  Word out;
  for (Letter v : u.letters()) out = out * image(v);
  return out;
}

}  // namespace lac
