#include "core/sieve.hpp"

#include <algorithm>

#include "core/errors.hpp"
#include "core/primality.hpp"

namespace divr {

namespace {

constexpr u64 kTableMax = (u64(1) << 32) - 1;

// Trial-division cutoff for the table-less fallback: enough to certify
// primality of anything below 2^42 directly, and the Miller-Rabin + rho
// stage takes over beyond it in any case.
constexpr u64 kFallbackTrialCutoff = u64(1) << 21;

// Splits m (which has no prime factor <= trial bound already applied) into
// primes using Miller-Rabin and Brent-Pollard rho, appending to out.
void split_rough(u64 m, std::vector<PrimePower>& out) {
  if (m == 1) return;
  if (is_prime64(m)) {
    out.push_back({m, 1});
    return;
  }
  u64 g = pollard_brent(m);
  split_rough(g, out);
  split_rough(m / g, out);
}

}  // namespace

Sieve::Sieve(u64 limit) {
  if (limit < 2) raise(ErrorKind::domain, "sieve limit must be >= 2");
  if (limit > kTableMax) {
    raise(ErrorKind::domain, "sieve limit must be below 2^32");
  }
  limit_ = limit;
  spf_.assign(limit + 1, 0);
  // Linear sieve: each composite is struck exactly once, by its smallest
  // prime factor times the largest cofactor.
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<u32>(i);
      primes_.push_back(static_cast<u32>(i));
    }
    for (u32 p : primes_) {
      if (p > spf_[i]) break;
      u64 composite = u64(p) * i;
      if (composite > limit) break;
      spf_[composite] = p;
    }
  }
}

Sieve Sieve::without_table() { return Sieve(); }

u32 Sieve::spf(u64 n) const {
  if (n < 2 || n > limit_) {
    raise(ErrorKind::domain,
          "spf argument " + std::to_string(n) + " outside [2, limit]");
  }
  return spf_[n];
}

void Sieve::factor_above_table(u64 n, std::vector<PrimePower>& out) const {
  // n > limit_ here (or no table).  Peel sieved primes first; whatever is
  // left has no factor below the trial bound and goes to the rough splitter.
  if (limit_ >= 2) {
    for (u32 p : primes_) {
      if ((u128)p * p > n) break;
      if (n % p == 0) {
        u64 e = 0;
        do {
          n /= p;
          ++e;
        } while (n % p == 0);
        out.push_back({p, e});
        if (n <= limit_) {
          // Back inside the table; finish there.
          while (n > 1) {
            u64 q = spf_[n], e2 = 0;
            do {
              n /= q;
              ++e2;
            } while (n % q == 0);
            out.push_back({q, e2});
          }
          return;
        }
      }
    }
  } else {
    if (n % 2 == 0) {
      u64 e = 0;
      do {
        n /= 2;
        ++e;
      } while (n % 2 == 0);
      out.push_back({2, e});
    }
    for (u64 d = 3; d <= kFallbackTrialCutoff && (u128)d * d <= n; d += 2) {
      if (n % d == 0) {
        u64 e = 0;
        do {
          n /= d;
          ++e;
        } while (n % d == 0);
        out.push_back({d, e});
      }
    }
  }
  split_rough(n, out);
}

Factorization Sieve::factorize(u64 n) const {
  if (n == 0) raise(ErrorKind::domain, "cannot factorize 0");
  std::vector<PrimePower> entries;
  if (n > 1) {
    if (limit_ >= 2 && n <= limit_) {
      while (n > 1) {
        u64 p = spf_[n], e = 0;
        do {
          n /= p;
          ++e;
        } while (n % p == 0);
        entries.push_back({p, e});
      }
    } else {
      factor_above_table(n, entries);
    }
  }
  // from_entries sorts, merges duplicate primes from the rho splitter, and
  // re-validates primality of every listed prime.
  return Factorization::from_entries(std::move(entries));
}

u64 Sieve::divisor_count(u64 n) const {
  if (n == 0) raise(ErrorKind::domain, "divisor count of 0 is undefined");
  u64 d = 1;
  Factorization f = factorize(n);
  for (const PrimePower& pp : f.entries()) d *= pp.exponent + 1;
  return d;
}

bool Sieve::is_distinct_semiprime_above(u64 n, u64 bound) const {
  // Necessary: n = p*q with p != q, both > bound, forces n > bound^2.
  if (n < 6) return false;
  if ((u128)bound * bound >= n) return false;

  if (limit_ >= 2 && n <= limit_) {
    u64 p = spf_[n];
    if (p <= bound) return false;
    u64 q = n / p;
    return q != p && q > 1 && spf_[q] == q;
  }

  // Above the table.  Any factor <= bound disqualifies n, so trial-divide by
  // sieved primes up to bound; past that, Miller-Rabin plus one rho split
  // decides the semiprime shape exactly (a composite half means three or
  // more prime factors).
  if (limit_ >= 2) {
    for (u32 p : primes_) {
      if (p > bound) break;
      if ((u128)p * p > n) return false;  // n is prime
      if (n % p == 0) return false;
    }
  } else {
    if (n % 2 == 0) return bound < 2 && n / 2 != 2 && is_prime64(n / 2);
    u64 trial_max = std::min(bound, kFallbackTrialCutoff);
    for (u64 d = 3; d <= trial_max && (u128)d * d <= n; d += 2) {
      if (n % d == 0) return false;
    }
  }
  if (is_prime64(n)) return false;
  u64 g = pollard_brent(n);
  u64 h = n / g;
  if (g == h) return false;
  return g > bound && h > bound && is_prime64(g) && is_prime64(h);
}

std::vector<u32> primes_up_to(u64 bound) {
  if (bound > kTableMax) {
    raise(ErrorKind::domain, "prime list bound must be below 2^32");
  }
  std::vector<u32> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (u64 i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<u32>(i));
    for (u64 j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace divr
