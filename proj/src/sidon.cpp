#include "lacunaria/sidon.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <exception>
#include <limits>
#include <random>
#include <set>

namespace lac {

namespace {

int apply_phi(const std::map<int, int>& phi, int k) {
  if (phi.empty()) return k;
  int a = k < 0 ? -k : k;
  auto it = phi.find(a);
  if (it == phi.end())
    throw MissingImageError("phi has no image for index " + std::to_string(a));
  return k < 0 ? -it->second : it->second;
}

void validate_phi(const std::map<int, int>& phi) {
  std::set<int> values;
  for (const auto& [k, v] : phi) {
    if (k <= 0 || v <= 0)
      throw PreconditionError("phi maps positive indices to positive indices");
    if (!values.insert(v).second)
      throw PreconditionError("phi must be injective");
  }
}

}  // namespace

std::vector<Word> generate_qn(const SymmetricWordSpec& spec) {
  if (spec.n < 1 || spec.m < 1)
    throw PreconditionError("generate_qn needs n >= 1 and m >= 1");
  validate_phi(spec.phi);

  const int n = spec.n;
  const int m = spec.m;
  // Indices iterate in the canonical letter order -1, 1, -2, 2, ...
  std::vector<int> index_order;
  for (int key = 0; key < 2 * m; ++key)
    index_order.push_back(key_letter(key));

  std::vector<Word> out;
  std::set<Word, CanonicalLess> seen;
  std::vector<int> tuple(static_cast<std::size_t>(n), 0);

  // Odometer over tuples (k_1..k_n) with k_{j+1} != -k_j.
  std::vector<int> choice(static_cast<std::size_t>(n), 0);
  int level = 0;
  while (level >= 0) {
    if (choice[static_cast<std::size_t>(level)] >= 2 * m) {
      choice[static_cast<std::size_t>(level)] = 0;
      --level;
      if (level >= 0) ++choice[static_cast<std::size_t>(level)];
      continue;
    }
    int k = index_order[static_cast<std::size_t>(
        choice[static_cast<std::size_t>(level)])];
    if (level > 0 && k == -tuple[static_cast<std::size_t>(level - 1)]) {
      ++choice[static_cast<std::size_t>(level)];
      continue;
    }
    tuple[static_cast<std::size_t>(level)] = k;
    if (level + 1 < n) {
      ++level;
      continue;
    }
    // Complete tuple: build the symmetric word and filter.
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j)
      letters.push_back(tuple[static_cast<std::size_t>(j)]);
    for (int j = n - 1; j >= 0; --j)
      letters.push_back(apply_phi(spec.phi, tuple[static_cast<std::size_t>(j)]));
    Word w = Word::reduce(letters);
    if (w.length() == static_cast<std::size_t>(2 * n) && seen.insert(w).second)
      out.push_back(w);
    ++choice[static_cast<std::size_t>(level)];
  }
  return out;
}

// ---- folding ----------------------------------------------------------------

int FoldingGraph::find(int v) {
  while (parent_[static_cast<std::size_t>(v)] != v) {
    parent_[static_cast<std::size_t>(v)] =
        parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
    v = parent_[static_cast<std::size_t>(v)];
  }
  return v;
}

int FoldingGraph::find_const(int v) const {
  while (parent_[static_cast<std::size_t>(v)] != v)
    v = parent_[static_cast<std::size_t>(v)];
  return v;
}

void FoldingGraph::insert_edge(int from, Letter label, int to,
                               std::vector<std::pair<int, int>>& merge_queue) {
  from = find(from);
  to = find(to);
  auto [it, inserted] = adj_[static_cast<std::size_t>(from)].emplace(label, to);
  if (!inserted) {
    // Slot taken: the two targets must be the same vertex (a fold).
    merge_queue.emplace_back(it->second, to);
  }
}

void FoldingGraph::merge(int a, int b,
                         std::vector<std::pair<int, int>>& merge_queue) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  // Keep the vertex with the larger adjacency, move the other's edges.
  if (adj_[static_cast<std::size_t>(a)].size() <
      adj_[static_cast<std::size_t>(b)].size())
    std::swap(a, b);
  if (find(base_) == b) std::swap(a, b);  // base identity survives merges
  parent_[static_cast<std::size_t>(b)] = a;
  std::map<Letter, int> moved;
  moved.swap(adj_[static_cast<std::size_t>(b)]);
  for (const auto& [label, target] : moved) {
    // Rewrite the reverse slot of each moved edge to point at a.
    int t = find(target);
    auto rev = adj_[static_cast<std::size_t>(t)].find(-label);
    if (rev != adj_[static_cast<std::size_t>(t)].end() &&
        find(rev->second) == b)
      rev->second = a;
    insert_edge(a, label, t, merge_queue);
  }
}

FoldingGraph FoldingGraph::fold(std::span<const Word> words) {
  if (words.empty()) throw PreconditionError("fold needs at least one word");
  FoldingGraph g;
  std::size_t total_letters = 0;
  for (const Word& w : words) {
    if (w.is_identity())
      throw PreconditionError("fold rejects the identity word");
    total_letters += w.length();
  }
  g.adj_.resize(total_letters + 1);
  g.parent_.resize(total_letters + 1);
  for (std::size_t i = 0; i < g.parent_.size(); ++i)
    g.parent_[i] = static_cast<int>(i);
  g.base_ = 0;

  std::vector<std::pair<int, int>> merges;
  int next_vertex = 1;
  for (const Word& w : words) {
    int at = g.base_;
    const auto& letters = w.letters();
    for (std::size_t i = 0; i < letters.size(); ++i) {
      int to = (i + 1 == letters.size()) ? g.base_ : next_vertex++;
      g.insert_edge(at, letters[i], to, merges);
      g.insert_edge(to, -letters[i], at, merges);
      at = to;
    }
    // Drain between words so 'at' stays meaningful under merges.
    while (!merges.empty()) {
      auto [a, b] = merges.back();
      merges.pop_back();
      g.merge(a, b, merges);
    }
  }
  return g;
}

std::int64_t FoldingGraph::vertex_count() const {
  std::int64_t n = 0;
  for (std::size_t v = 0; v < parent_.size(); ++v)
    if (parent_[v] == static_cast<int>(v) &&
        (!adj_[v].empty() || static_cast<int>(v) == find_const(base_)))
      ++n;
  return n;
}

std::int64_t FoldingGraph::edge_count() const {
  // Every undirected edge is stored in both directions.
  std::int64_t n = 0;
  for (std::size_t v = 0; v < parent_.size(); ++v)
    if (parent_[v] == static_cast<int>(v)) n += static_cast<std::int64_t>(adj_[v].size());
  return n / 2;
}

bool FoldingGraph::folded() const {
  // Insertion closure maintains one target per (vertex, label) slot, but the
  // targets must also be fully resolved.
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    if (parent_[v] != static_cast<int>(v)) continue;
    for (const auto& [label, target] : adj_[v])
      if (find_const(target) != target) return false;
  }
  return true;
}

void FoldingGraph::extract_core() {
  int base = find(base_);
  // Resolve stored targets first.
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    if (parent_[v] != static_cast<int>(v)) continue;
    std::map<Letter, int> fixed;
    for (const auto& [label, target] : adj_[v]) fixed[label] = find(target);
    adj_[v] = std::move(fixed);
  }
  std::deque<int> queue;
  for (std::size_t v = 0; v < parent_.size(); ++v)
    if (parent_[v] == static_cast<int>(v) && static_cast<int>(v) != base &&
        adj_[v].size() <= 1)
      queue.push_back(static_cast<int>(v));
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (v == base || adj_[static_cast<std::size_t>(v)].size() > 1) continue;
    if (adj_[static_cast<std::size_t>(v)].empty()) continue;
    auto [label, target] = *adj_[static_cast<std::size_t>(v)].begin();
    adj_[static_cast<std::size_t>(v)].clear();
    adj_[static_cast<std::size_t>(target)].erase(-label);
    if (target != base && adj_[static_cast<std::size_t>(target)].size() <= 1)
      queue.push_back(target);
  }
}

std::vector<std::tuple<int, Letter, int>> FoldingGraph::canonical_edges()
    const {
  int base = find_const(base_);
  std::map<int, int> id;
  id[base] = 0;
  std::deque<int> queue{base};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    // label order = canonical letter order
    std::vector<std::pair<int, int>> ordered;
    for (const auto& [label, target] : adj_[static_cast<std::size_t>(v)])
      ordered.emplace_back(letter_key(label), find_const(target));
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [key, target] : ordered)
      if (!id.count(target)) {
        id[target] = static_cast<int>(id.size());
        queue.push_back(target);
      }
  }
  std::vector<std::tuple<int, Letter, int>> edges;
  for (const auto& [v, vid] : id)
    for (const auto& [label, target] : adj_[static_cast<std::size_t>(v)]) {
      int t = find_const(target);
      edges.emplace_back(vid, label, id.at(t));
    }
  std::sort(edges.begin(), edges.end(),
            [](const auto& a, const auto& b) {
              return std::make_tuple(std::get<0>(a), letter_key(std::get<1>(a)),
                                     std::get<2>(a)) <
                     std::make_tuple(std::get<0>(b), letter_key(std::get<1>(b)),
                                     std::get<2>(b));
            });
  return edges;
}

FreeBasisReport is_free_basis(std::span<const Word> words) {
  if (words.empty()) throw PreconditionError("empty word set");
  std::set<Word, CanonicalLess> seen;
  for (const Word& w : words) {
    if (w.is_identity())
      throw PreconditionError("the identity cannot belong to a free basis");
    if (!seen.insert(w).second)
      throw DuplicateElementError("duplicate word in free-basis check");
  }
  FoldingGraph g = FoldingGraph::fold(words);
  g.extract_core();
  FreeBasisReport rep;
  rep.rank = g.rank();
  rep.free = rep.rank == static_cast<std::int64_t>(words.size());
  return rep;
}

BruteForceReport freeness_bruteforce(std::span<const Word> words, int m,
                                     std::int64_t budget) {
  if (m < 2) throw PreconditionError("bruteforce needs M >= 2");
  if (words.empty()) throw PreconditionError("empty word set");
  const int w_count = static_cast<int>(words.size());
  const int f_count = 2 * w_count;  // factor list: words then inverses

  // Budget: sum over 2..M of (2W)^j sequences.
  double predicted = 0.0;
  for (int j = 2; j <= m; ++j)
    predicted += std::pow(static_cast<double>(f_count), j);
  if (predicted > static_cast<double>(budget))
    throw BudgetError("bruteforce product count exceeds budget");

  std::vector<Word> factors(static_cast<std::size_t>(f_count));
  for (int i = 0; i < w_count; ++i) {
    factors[static_cast<std::size_t>(i)] = words[static_cast<std::size_t>(i)];
    factors[static_cast<std::size_t>(w_count + i)] =
        words[static_cast<std::size_t>(i)].inverse();
  }
  auto inverse_partner = [w_count](int f) {
    return f < w_count ? f + w_count : f - w_count;
  };
  auto signed_index = [w_count](int f) {
    return f < w_count ? f + 1 : -(f - w_count + 1);
  };

  BruteForceReport rep;
  // DFS over factor sequences, rightmost factor first (the products grow to
  // the left: x_j ... x_1).
  struct Frame {
    Word product;
    int factor;
    int depth;
  };
  std::vector<int> stack_factors;
  std::vector<Frame> stack;
  for (int f = f_count - 1; f >= 0; --f)
    stack.push_back({factors[static_cast<std::size_t>(f)], f, 1});

  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    stack_factors.resize(static_cast<std::size_t>(frame.depth - 1));
    stack_factors.push_back(frame.factor);
    if (frame.depth >= m) continue;
    for (int f = f_count - 1; f >= 0; --f) {
      if (f == inverse_partner(frame.factor)) continue;
      Word next = factors[static_cast<std::size_t>(f)] * frame.product;
      ++rep.products_checked;
      bool grows = next.length() > frame.product.length();
      bool is_identity = next.is_identity();
      if (!grows || is_identity) {
        std::vector<int> ce;
        for (int d = 0; d < frame.depth; ++d)
          ce.push_back(signed_index(stack_factors[static_cast<std::size_t>(d)]));
        ce.push_back(signed_index(f));
        if (is_identity && rep.free_up_to_m) {
          rep.free_up_to_m = false;
          if (!rep.counterexample) {
            rep.counterexample = ce;
            rep.violation = "identity_product";
          }
        }
        if (rep.monotone) {
          rep.monotone = false;
          if (!rep.counterexample) {
            rep.counterexample = ce;
            rep.violation = "length_monotonicity";
          }
        }
      }
      if (frame.depth + 1 < m)
        stack.push_back({next, f, frame.depth + 1});
      else if (frame.depth + 1 == m) {
        // Deepest level: the product itself was already checked above.
      }
    }
  }
  return rep;
}

Homomorphism pi_homomorphism() {
  return Homomorphism([](int k) -> std::optional<Word> {
    std::vector<Letter> letters;
    letters.reserve(static_cast<std::size_t>(2 * k + 1));
    for (int i = 0; i < k; ++i) letters.push_back(1);
    letters.push_back(2);
    for (int i = 0; i < k; ++i) letters.push_back(-1);
    return Word::from_reduced(std::move(letters));
  });
}

CountReport count_intersection(int n, int m, std::int64_t budget) {
  if (n < 1 || m < 1) throw PreconditionError("count needs n, m >= 1");
  double predicted = 2.0 * m * std::pow(2.0 * m - 1.0, n - 1);
  if (predicted > static_cast<double>(budget))
    throw BudgetError("Q_n candidate count exceeds budget");

  std::vector<Word> qn = generate_qn({n, m, {}});
  Homomorphism pi = pi_homomorphism();
  std::set<Word, CanonicalLess> images;
  const std::size_t max_len = static_cast<std::size_t>(2 * n) *
                              static_cast<std::size_t>(m);
  std::int64_t count = 0;
  for (const Word& q : qn) {
    Word image = pi.apply(q);
    if (image.length() <= max_len && images.insert(image).second) ++count;
  }
  CountReport rep;
  rep.count = count;
  rep.ratio_to_mn = static_cast<double>(count) / std::pow(m, n);
  // #P_{<=d} = 2*3^d - 1 on F_2; log evaluated stably for large d.
  double d = static_cast<double>(2 * n) * m;
  rep.ball_exponent =
      (std::log(2.0) + d * std::log(3.0) + std::log1p(-0.5 * std::pow(3.0, -d))) /
      d;
  return rep;
}

// ---- witnesses --------------------------------------------------------------

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

cplx unit_disc_draw(std::mt19937_64& rng) {
  // Rejection from the square; loop length is part of the seeded stream.
  for (;;) {
    double re = 2.0 * uniform01(rng) - 1.0;
    double im = 2.0 * uniform01(rng) - 1.0;
    if (re * re + im * im <= 1.0) return {re, im};
  }
}

GroupAlgebraElement random_trial(std::span<const Word> words, int dim,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GroupAlgebraElement x(dim);
  for (const Word& w : words) {
    CMat c(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) c.at(i, j) = unit_disc_draw(rng);
    x.add_term(w, c);
  }
  return x;
}

double l1_upper(const GroupAlgebraElement& x) {
  double s = 0.0;
  for (const auto& [w, c] : x.terms()) s += spectral_norm(c);
  return s;
}

void check_distinct(std::span<const Word> words) {
  std::set<Word, CanonicalLess> seen;
  for (const Word& w : words)
    if (!seen.insert(w).second)
      throw DuplicateElementError("witness word sets must be distinct");
}

}  // namespace

WitnessReport unconditionality_witness(std::span<const Word> words,
                                       const WitnessOptions& opts) {
  if (opts.trials < 1) throw PreconditionError("witness needs trials >= 1");
  check_distinct(words);
  bool free = false;
  try {
    free = is_free_basis(words).free;
  } catch (const PreconditionError&) {
    free = false;  // identity among the words: no certificate
  }

  int rank = 1;
  for (const Word& w : words) rank = std::max(rank, w.max_index());

  WitnessReport rep;
  rep.numerator = "truncated_lower";
  rep.support_certified_free = free;
  rep.trials = opts.trials;

  const std::int64_t n = opts.trials;
  std::vector<double> ratios(static_cast<std::size_t>(n), 0.0);
  std::vector<std::string> denoms(static_cast<std::size_t>(n));
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t trial = 0; trial < n; ++trial) {
    try {
      std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(trial);
      int dim = 1 + static_cast<int>(trial % 2);  // alternate scalar / 2x2
      GroupAlgebraElement unsigned_x = random_trial(words, dim, seed);
      std::mt19937_64 sign_rng(seed ^ 0x9e3779b97f4a7c15ull);
      GroupAlgebraElement flipped(dim);
      for (const auto& [w, c] : unsigned_x.terms()) {
        double sign = (sign_rng() & 1) ? 1.0 : -1.0;
        flipped.add_term(w, sign * c);
      }
      OpNormOptions nopts = opts.norm;
      nopts.seed = opts.norm.seed + static_cast<std::uint64_t>(trial) * 2;
      nopts.ball_cap = opts.ball_cap;
      double numer =
          operator_norm_lower(flipped, rank, opts.radius, nopts).value;
      double hp = free ? haagerup_pisier_bound(unsigned_x, true)
                       : std::numeric_limits<double>::infinity();
      double l1 = l1_upper(unsigned_x);
      double denom = std::min(hp, l1);
      denoms[static_cast<std::size_t>(trial)] =
          (hp < l1) ? "hp_upper" : "l1_upper";
      ratios[static_cast<std::size_t>(trial)] =
          denom > 0.0 ? numer / denom : 0.0;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  std::size_t best = 0;
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (ratios[i] > ratios[best]) best = i;
  rep.value = ratios[best];
  rep.denominator = denoms[best];
  rep.valid_lower_bound = true;  // both denominators are true upper bounds
  return rep;
}

WitnessReport lambda_infty_witness(std::span<const Word> words,
                                   const WitnessOptions& opts) {
  if (opts.trials < 1) throw PreconditionError("witness needs trials >= 1");
  check_distinct(words);
  int rank = 1;
  for (const Word& w : words) rank = std::max(rank, w.max_index());

  WitnessReport rep;
  rep.numerator = "truncated_lower";
  rep.denominator = "rcp_sqrt";
  try {
    rep.support_certified_free = is_free_basis(words).free;
  } catch (const PreconditionError&) {
    rep.support_certified_free = false;
  }
  rep.trials = opts.trials;
  // The denominator is the right-hand side of the Lambda_infty definition,
  // not an upper bound for the norm in general.
  rep.valid_lower_bound = true;

  const std::int64_t n = opts.trials;
  std::vector<double> ratios(static_cast<std::size_t>(n), 0.0);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t trial = 0; trial < n; ++trial) {
    try {
      std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(trial);
      int dim = 1 + static_cast<int>(trial % 2);
      GroupAlgebraElement x = random_trial(words, dim, seed);
      OpNormOptions nopts = opts.norm;
      nopts.seed = opts.norm.seed + static_cast<std::uint64_t>(trial) * 2;
      nopts.ball_cap = opts.ball_cap;
      double numer = operator_norm_lower(x, rank, opts.radius, nopts).value;
      auto [col, row] = rcp_norms(x);
      double denom = std::sqrt(std::max(col, row));
      ratios[static_cast<std::size_t>(trial)] =
          denom > 0.0 ? numer / denom : 0.0;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  for (double r : ratios) rep.value = std::max(rep.value, r);
  return rep;
}

}  // namespace lac
