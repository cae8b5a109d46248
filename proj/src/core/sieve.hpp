#pragma once

#include <span>
#include <vector>

#include "core/factored.hpp"

namespace divr {

// Smallest-prime-factor table plus deterministic factoring for the full
// 64-bit range.  Values inside the table factor in O(log n); larger values
// fall back to trial division by the sieved primes, then Miller-Rabin and
// Brent-Pollard rho.  A table-less instance (limit 0) uses pure trial
// division below a fixed cutoff instead of the table; answers are identical.
class Sieve {
 public:
  // Builds the table for 2 <= n <= limit.  Domain error if limit < 2 or
  // limit >= 2^32.  Memory is 4 bytes per slot; ~10^8 is a practical ceiling.
  explicit Sieve(u64 limit);

  // No table at all; factoring is still exact everywhere.
  static Sieve without_table();

  u64 limit() const noexcept { return limit_; }

  // Smallest prime factor of n (2 <= n <= limit()).
  u32 spf(u64 n) const;

  std::span<const u32> primes() const noexcept { return primes_; }
  std::span<const u32> table() const noexcept { return spf_; }

  // Prime factorization of n >= 1 with primes ascending.  Domain error for
  // n = 0.  Deterministic for every 64-bit n.
  Factorization factorize(u64 n) const;

  // Number of divisors of n >= 1.  (Maximum over the 64-bit range is
  // 103680, so u64 is ample.)
  u64 divisor_count(u64 n) const;

  // Whether n = p * q with p != q both prime and both > bound.  This is the
  // membership test for the sieve-produced numbers the construction consumes.
  bool is_distinct_semiprime_above(u64 n, u64 bound) const;

 private:
  Sieve() = default;

  void factor_above_table(u64 n, std::vector<PrimePower>& out) const;

  u64 limit_ = 0;
  std::vector<u32> spf_;
  std::vector<u32> primes_;
};

// Primes up to bound (inclusive) by a plain Eratosthenes pass; used where a
// prime list longer than an existing table is needed.  Domain error if
// bound >= 2^32.
std::vector<u32> primes_up_to(u64 bound);

}  // namespace divr
