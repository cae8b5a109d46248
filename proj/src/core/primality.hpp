#pragma once

#include "core/bigint.hpp"

namespace divr {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((u128)a * b % m);
}

u64 powmod(u64 base, u64 exp, u64 mod);

// Deterministic Miller-Rabin over the fixed witness set
// {2,3,5,7,11,13,17,19,23,29,31,37}, which decides primality for every
// n < 2^64 (no strong pseudoprime below 3.3 * 10^24 passes all twelve).
bool is_prime64(u64 n);

// Returns a non-trivial factor of composite n > 1 (Brent's cycle-finding
// variant of Pollard rho, deterministic: polynomial offsets c = 1, 2, 3, ...
// are tried in order until one succeeds).  Precondition: n composite.
u64 pollard_brent(u64 n);

}  // namespace divr
