#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/bigint.hpp"

namespace divr {

struct PrimePower {
  u64 prime;
  u64 exponent;  // >= 1

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Multiset of prime powers, kept sorted by prime with no duplicates and no
// zero exponents.  The empty factorization represents 1.
class Factorization {
 public:
  Factorization() = default;

  // Sorts and merges the entries.  Domain error if any listed prime fails a
  // primality check or any exponent is zero; capacity error if merged
  // exponents overflow.
  static Factorization from_entries(std::vector<PrimePower> entries);

  const std::vector<PrimePower>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }

  Bigint value() const;

  // Number of divisors of value(): product of (exponent + 1).
  Bigint divisor_count() const;

  // Factorization of the product value() * other.value().
  Factorization times(const Factorization& other) const;

  // Factorization of value()^k (k >= 1).
  Factorization pow(u64 k) const;

  u64 exponent_of(u64 p) const;        // 0 when p does not appear
  u64 max_prime() const;               // 1 for the empty factorization
  bool is_odd() const;                 // no factor 2
  bool coprime_with(const Factorization& other) const;

  // Removes a single power of p.  Precondition error if p does not appear.
  Factorization divided_once_by(u64 p) const;

  // "2^2 * 3 * 13"; exponent suffix omitted when it is 1; "1" when empty.
  std::string str() const;
  static Factorization parse(std::string_view text);

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> entries_;
};

// An integer carried together with its factorization, so that divisor counts
// and products stay exact far beyond 64 bits.
class FactoredInt {
 public:
  FactoredInt() : value_(1) {}  // 1 with the empty factorization

  static FactoredInt from_factors(Factorization f);

  // Internal error if value != f.value() (used when the value is already
  // known from an independent computation).
  static FactoredInt from_parts(Bigint value, Factorization f);

  const Bigint& value() const noexcept { return value_; }
  const Factorization& factors() const noexcept { return factors_; }

  FactoredInt times(const FactoredInt& other) const;
  Bigint divisor_count() const { return factors_.divisor_count(); }

  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;

 private:
  Bigint value_;
  Factorization factors_;
};

}  // namespace divr
