#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "core/rational.hpp"
#include "core/sieve.hpp"

namespace divr {

// One generator of the multiplicative group of positive rationals used here:
// f(x, y) = (x+1)(y+1) / (x+y+1) with x, y >= 1.  Arguments are kept in
// canonical order x <= y (f is symmetric).
struct Generator {
  u64 x;
  u64 y;

  // Validates x, y >= 1 and swaps into canonical order.
  static Generator make(u64 x, u64 y);

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

Rational f_value(const Generator& g);

struct WordTerm {
  Generator gen;
  i64 exponent;  // nonzero in a normalized word

  friend bool operator==(const WordTerm&, const WordTerm&) = default;
};

inline constexpr std::size_t kDefaultTermCap = 1'000'000;

// Formal product of generator powers.  Normalized: terms sorted by generator,
// one term per generator, no zero exponents.  The empty word is the identity.
class GenWord {
 public:
  GenWord() = default;

  // Collects exponents per generator, drops zeros, sorts.  Capacity error if
  // exponent accumulation overflows i64 or the distinct-term count exceeds
  // term_cap.
  static GenWord normalized(std::vector<WordTerm> raw,
                            std::size_t term_cap = kDefaultTermCap);

  const std::vector<WordTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  // Product of f(gen)^exponent over all terms, as an exact rational.
  Rational value() const;

  GenWord times(const GenWord& other, std::size_t term_cap = kDefaultTermCap) const;
  GenWord inverse() const;

  // "f(1,1)^-1 * f(2,3)^2"; exponent suffix omitted when 1; "1" when empty.
  std::string str() const;

  friend bool operator==(const GenWord&, const GenWord&) = default;

 private:
  std::vector<WordTerm> terms_;
};

struct DecomposeLimits {
  std::size_t term_cap = kDefaultTermCap;
  unsigned depth_cap = 128;  // recursion depth over strictly decreasing primes
};

// Rewrites rationals as generator words:
//   2 = f(2, 3)
//   p = 2x+1 odd prime  ->  word(x+1)^2 * f(x, x)^-1
// extended multiplicatively over prime factorizations.  Prime words are
// memoized; the memo is safe to share across threads.
class Decomposer {
 public:
  explicit Decomposer(const Sieve& sieve, DecomposeLimits limits = {});

  // Word for a single prime p < 2^64.
  GenWord prime_word(u64 p);

  // Word for any positive rational whose numerator and denominator factor
  // within the 64-bit range; capacity error otherwise.
  GenWord decompose(const Rational& q);

  const DecomposeLimits& limits() const noexcept { return limits_; }

 private:
  GenWord prime_word_rec(u64 p, unsigned depth);
  GenWord word_for_integer(u64 n, unsigned depth);
  Factorization factor_checked(const Bigint& n) const;

  const Sieve* sieve_;
  DecomposeLimits limits_;
  std::map<u64, GenWord> memo_;
  std::mutex mu_;
};

}  // namespace divr
