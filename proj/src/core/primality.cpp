#include "core/primality.hpp"

#include <numeric>

#include "core/errors.hpp"

namespace divr {

u64 powmod(u64 base, u64 exp, u64 mod) {
  u64 result = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, mod);
    base = mulmod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

bool is_prime64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

u64 brent_round(u64 n, u64 c) {
  // Brent's improvement of Pollard rho with batched gcds.
  auto step = [n, c](u64 x) { return (mulmod(x, x, n) + c) % n; };
  u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
  const u64 m = 128;
  while (g == 1) {
    x = y;
    for (u64 i = 0; i < r; ++i) y = step(y);
    for (u64 k = 0; k < r && g == 1; k += m) {
      ys = y;
      u64 bound = std::min(m, r - k);
      for (u64 i = 0; i < bound; ++i) {
        y = step(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      g = std::gcd(q, n);
    }
    r <<= 1;
  }
  if (g == n) {
    // Backtrack one step at a time to recover the factor the batch skipped.
    do {
      ys = step(ys);
      g = std::gcd(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

}  // namespace

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 g = brent_round(n, c);
    if (g != n && g != 1) return g;
    if (c > 1000) {
      raise(ErrorKind::internal,
            "rho failed to split " + std::to_string(n) + " after 1000 rounds");
    }
  }
}

}  // namespace divr
