#include "core/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/primality.hpp"

namespace divr {

namespace {

// Everything the scanner touches (the forms L, the witness n, and n + 1)
// stays at or below 2^63, so all arithmetic fits u64/u128 with room.
constexpr u64 kValueLimit = u64(1) << 63;
constexpr u64 kScanBlock = u64(1) << 16;
constexpr u64 kCensusBlock = u64(1) << 20;

std::size_t pair_index(Pair p) {
  switch (p) {
    case Pair::p12:
      return 0;
    case Pair::p23:
      return 1;
    case Pair::p13:
      return 2;
  }
  raise(ErrorKind::internal, "bad pair value");
}

u64 inv_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  using i128 = __int128;
  i128 t = 0, new_t = 1;
  i128 r = m, new_r = a % m;
  while (new_r != 0) {
    i128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) {
    raise(ErrorKind::internal, "modular inverse of non-coprime residue");
  }
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

// Symbolic description of one pair: n = front * L_j(x), n + 1 = back * L_i(x).
struct PairShape {
  int i;  // 0-based form indices
  int j;
  Bigint coeff_i, coeff_j, front;
  const Factorization* front_factors;  // null when unavailable (p23 unfactored)
};

PairShape pair_shape(const SieveParams& P, Pair pair) {
  Bigint a1 = P.a.value();
  switch (pair) {
    case Pair::p12:
      return {0, 1, a1, a1 + 1, a1, &P.a.factors()};
    case Pair::p23:
      return {1, 2, a1 + 1, a1 + 2, a1 + 1,
              P.a2 ? &P.a2->factors() : nullptr};
    case Pair::p13:
      return {0, 2, a1, a1 + 2, a1 / 2, &P.half_a1.factors()};
  }
  raise(ErrorKind::internal, "bad pair value");
}

// Fully resolved 64-bit scanning data for one pair.
struct PairPlan {
  u64 x_top = 0;          // inclusive x ceiling within the 2^63 domain
  bool has_candidates = false;
  u64 a_i = 0, a_j = 0, r_i = 1, r_j = 1, front = 0;
  u128 m = 1;             // candidate progression x = x0 + k*m
  u128 x0 = 0;
  Rational predicted;
};

// Folds x == alpha (mod r) into x == x0 (mod m); gcd(m, r) == 1.
void crt_fold(u128& x0, u128& m, u64 alpha, u64 r) {
  if (r == 1) return;
  u64 x0_mod_r = static_cast<u64>(x0 % r);
  u64 delta = alpha >= x0_mod_r ? alpha - x0_mod_r : alpha + r - x0_mod_r;
  u64 t = mulmod(delta % r, inv_mod(static_cast<u64>(m % r), r), r);
  x0 += m * t;
  m *= r;
}

PairPlan make_plan(const SieveParams& P, Pair pair, const RatioTriple& t) {
  PairPlan pl;
  pl.predicted = t.by_pair(pair);
  PairShape shape = pair_shape(P, pair);

  auto ai = to_u64(shape.coeff_i);
  auto aj = to_u64(shape.coeff_j);
  auto fr = to_u64(shape.front);
  if (!ai || !aj || !fr || *fr == 0) return pl;  // x_top stays 0
  pl.a_i = *ai;
  pl.a_j = *aj;
  pl.front = *fr;

  // L_i, L_j <= 2^63 and n = front * L_j <= 2^63 - 1 (so n + 1 fits too).
  u64 top = std::min((kValueLimit - 1) / pl.a_i, (kValueLimit - 1) / pl.a_j);
  u64 lj_max = (kValueLimit - 1) / pl.front;
  if (lj_max < 1) return pl;
  top = std::min(top, (lj_max - 1) / pl.a_j);
  pl.x_top = top;
  if (pl.x_top == 0) return pl;

  // Candidate progression from r_i | L_i(x), r_j | L_j(x).  An r beyond the
  // value limit cannot divide any L in range, so the pair has no candidates
  // (the scan over [1, x_top] is still complete).
  auto ri = to_u64(P.r[shape.i].value());
  auto rj = to_u64(P.r[shape.j].value());
  if (!ri || !rj || *ri > kValueLimit || *rj > kValueLimit) return pl;
  pl.r_i = *ri;
  pl.r_j = *rj;
  if (pl.r_i > 1) {
    u64 v = inv_mod(pl.a_i % pl.r_i, pl.r_i);
    crt_fold(pl.x0, pl.m, (pl.r_i - v) % pl.r_i, pl.r_i);
  }
  if (pl.r_j > 1) {
    u64 v = inv_mod(pl.a_j % pl.r_j, pl.r_j);
    crt_fold(pl.x0, pl.m, (pl.r_j - v) % pl.r_j, pl.r_j);
  }
  pl.has_candidates = true;
  return pl;
}

// Candidate test shared by the scanner and check_pair.  x must already be
// within the pair's x_top.
std::optional<WitnessHit> attempt_witness(const PairPlan& pl, Pair pair, u64 x,
                                          u64 C, const Sieve& sieve) {
  u64 li = pl.a_i * x + 1;
  if (li % pl.r_i != 0) return std::nullopt;
  u64 lj = pl.a_j * x + 1;
  if (lj % pl.r_j != 0) return std::nullopt;
  u64 si = li / pl.r_i;
  if (!sieve.is_distinct_semiprime_above(si, C)) return std::nullopt;
  u64 sj = lj / pl.r_j;
  if (!sieve.is_distinct_semiprime_above(sj, C)) return std::nullopt;
  u64 n = pl.front * lj;
  u64 dn = sieve.divisor_count(n);
  u64 dn1 = sieve.divisor_count(n + 1);
  Rational measured{Bigint(dn1), Bigint(dn)};
  return WitnessHit{x,  pair,     n,           dn,
                    dn1, measured, pl.predicted, measured == pl.predicted};
}

[[noreturn]] void raise_counterexample(const WitnessHit& h) {
  raise(ErrorKind::counterexample,
        "measured ratio deviates from prediction at x = " +
            std::to_string(h.x) + ", pair " + pair_label(h.pair) +
            ": n = " + std::to_string(h.n) + ", d(n) = " +
            std::to_string(h.d_n) + ", d(n+1) = " + std::to_string(h.d_n1) +
            ", measured " + h.ratio.str() + ", predicted " +
            h.predicted.str());
}

}  // namespace

Rational ratio_at(u64 n, const Sieve& sieve) {
  if (n == 0) raise(ErrorKind::domain, "ratio_at needs n >= 1");
  if (n == std::numeric_limits<u64>::max()) {
    raise(ErrorKind::domain, "n + 1 exceeds the 64-bit range");
  }
  return Rational(Bigint(sieve.divisor_count(n + 1)),
                  Bigint(sieve.divisor_count(n)));
}

PairWitness pair_n(const SieveParams& P, Pair pair, u64 x, const Sieve& sieve) {
  if (x < 1) raise(ErrorKind::domain, "witness x must be >= 1");
  PairShape shape = pair_shape(P, pair);
  if (shape.front_factors == nullptr) {
    raise(ErrorKind::bound,
          "pair 2-3 witness values need the factorization of a + 1");
  }
  Bigint li = shape.coeff_i * x + 1;
  Bigint lj = shape.coeff_j * x + 1;
  const Bigint& ri = P.r[shape.i].value();
  const Bigint& rj = P.r[shape.j].value();
  if (li % ri != 0) {
    raise(ErrorKind::precondition, "r" + std::to_string(shape.i + 1) +
                                       " does not divide L" +
                                       std::to_string(shape.i + 1) + "(x)");
  }
  if (lj % rj != 0) {
    raise(ErrorKind::precondition, "r" + std::to_string(shape.j + 1) +
                                       " does not divide L" +
                                       std::to_string(shape.j + 1) + "(x)");
  }
  Bigint n_big = shape.front * lj;
  auto n = to_u64(n_big);
  if (!n || *n >= kValueLimit) {
    raise(ErrorKind::bound, "witness value exceeds the 2^63 scan domain");
  }
  u64 sj = static_cast<u64>(lj / rj);
  FactoredInt factored =
      FactoredInt::from_factors(shape.front_factors->times(
          P.r[shape.j].factors().times(sieve.factorize(sj))));
  if (factored.value() != n_big) {
    raise(ErrorKind::internal, "witness factorization mismatch");
  }
  return {*n, factored};
}

std::optional<WitnessHit> check_pair(const SieveParams& P, Pair pair, u64 x,
                                     const Sieve& sieve) {
  if (x < 1) raise(ErrorKind::domain, "witness x must be >= 1");
  if (!P.fully_factored()) {
    raise(ErrorKind::bound,
          "witness checks need a fully factored instance (a + 2 < 2^64)");
  }
  RatioTriple t = predicted_ratios(P);
  PairPlan pl = make_plan(P, pair, t);
  if (x > pl.x_top) {
    raise(ErrorKind::bound, "x = " + std::to_string(x) +
                                " exceeds the pair's 2^63 scan domain (top " +
                                std::to_string(pl.x_top) + ")");
  }
  if (!pl.has_candidates) return std::nullopt;  // r beyond any L in range
  return attempt_witness(pl, pair, x, *P.C, sieve);
}

namespace detail {

ScanResult scan_witnesses_against(const SieveParams& P, const RatioTriple& t,
                                  u64 x_lo, u64 x_hi, const Sieve& sieve,
                                  unsigned threads) {
  if (auto v = validate_params(P)) {
    raise(ErrorKind::precondition,
          "instance violates '" + v->condition + "': " + v->detail);
  }
  if (!P.fully_factored()) {
    raise(ErrorKind::bound,
          "witness scans need a fully factored instance (a + 2 < 2^64)");
  }
  const u64 C = *P.C;

  x_lo = std::max<u64>(x_lo, 1);
  ScanResult out;
  out.summary.x_lo = x_lo;
  out.summary.x_hi = x_hi;

  std::array<PairPlan, 3> plans;
  for (std::size_t k = 0; k < 3; ++k) {
    plans[k] = make_plan(P, kAllPairs[k], t);
    out.summary.pairs[k].x_top = std::min(x_hi, plans[k].x_top);
    out.summary.pairs[k].capped = plans[k].x_top < x_hi;
  }
  if (x_lo > x_hi) return out;

  u64 span_top = 0;
  for (const PairPlan& pl : plans) {
    span_top = std::max(span_top, std::min(x_hi, pl.x_top));
  }
  if (span_top < x_lo) return out;

  u64 n_blocks = (span_top - x_lo) / kScanBlock + 1;
  std::vector<std::vector<WitnessHit>> block_hits(n_blocks);
  run_blocks(n_blocks, threads, [&](u64 b) {
    u64 lo = x_lo + b * kScanBlock;
    u64 hi = std::min(span_top, lo + (kScanBlock - 1));
    std::vector<WitnessHit>& hits = block_hits[b];
    for (std::size_t k = 0; k < 3; ++k) {
      const PairPlan& pl = plans[k];
      if (!pl.has_candidates) continue;
      u64 top = std::min(hi, pl.x_top);
      u128 cand = pl.x0;
      if (cand < lo) {
        u128 steps = (lo - cand + pl.m - 1) / pl.m;
        cand += steps * pl.m;
      }
      for (; cand <= top; cand += pl.m) {
        if (auto hit = attempt_witness(pl, kAllPairs[k],
                                       static_cast<u64>(cand), C, sieve)) {
          hits.push_back(std::move(*hit));
        }
      }
    }
    std::sort(hits.begin(), hits.end(),
              [](const WitnessHit& a, const WitnessHit& b) {
                if (a.x != b.x) return a.x < b.x;
                return pair_index(a.pair) < pair_index(b.pair);
              });
  });

  for (std::vector<WitnessHit>& bh : block_hits) {
    for (WitnessHit& h : bh) {
      if (!h.matched) raise_counterexample(h);
      out.summary.pairs[pair_index(h.pair)].hits += 1;
      out.hits.push_back(std::move(h));
    }
  }
  out.summary.total_hits = out.hits.size();
  return out;
}

}  // namespace detail

ScanResult scan_witnesses(const SieveParams& P, u64 x_lo, u64 x_hi,
                          const Sieve& sieve, unsigned threads) {
  if (!P.fully_factored()) {
    raise(ErrorKind::bound,
          "witness scans need a fully factored instance (a + 2 < 2^64)");
  }
  return detail::scan_witnesses_against(P, predicted_ratios(P), x_lo, x_hi,
                                        sieve, threads);
}

RatioCensus scan_ratio_hits(const Rational& target, u64 n_max,
                            const Sieve& sieve, u64 sample_cap,
                            unsigned threads) {
  RatioCensus out;
  out.target = target;
  out.n_max = n_max;
  if (n_max == 0) return out;
  if (n_max >= kValueLimit) {
    raise(ErrorKind::domain, "census n_max must be below 2^63");
  }
  auto num = to_u64(target.num());
  auto den = to_u64(target.den());
  if (!num || !den) return out;  // divisor counts are far below 2^64

  // Primes up to sqrt(n_max + 1) drive the segmented divisor-count sweep.
  const u64 top_value = n_max + 1;
  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(top_value)));
  while ((u128)root * root > top_value) --root;
  while ((u128)(root + 1) * (root + 1) <= top_value) ++root;

  std::vector<u32> prime_storage;
  std::span<const u32> primes;
  if (sieve.limit() >= root) {
    primes = sieve.primes();
  } else {
    prime_storage = primes_up_to(root);
    primes = prime_storage;
  }

  const u64 n_blocks = (n_max - 1) / kCensusBlock + 1;
  struct BlockOut {
    u64 count = 0;
    std::optional<u64> first;
    std::vector<u64> sample;
  };
  std::vector<BlockOut> blocks(n_blocks);

  run_blocks(n_blocks, threads, [&](u64 b) {
    const u64 lo = 1 + b * kCensusBlock;
    const u64 hi = std::min(n_max, lo + (kCensusBlock - 1));
    const u64 len = hi + 2 - lo;  // covers [lo, hi + 1]
    std::vector<u64> rem(len);
    std::vector<u32> dv(len, 1);
    for (u64 idx = 0; idx < len; ++idx) rem[idx] = lo + idx;
    for (u32 p : primes) {
      if ((u128)p * p > hi + 1) break;
      u64 start = static_cast<u64>(((u128)lo + p - 1) / p * p);
      for (u64 m = start; m <= hi + 1; m += p) {
        u64 idx = m - lo;
        u32 e = 0;
        while (rem[idx] % p == 0) {
          rem[idx] /= p;
          ++e;
        }
        dv[idx] *= e + 1;
      }
    }
    for (u64 idx = 0; idx < len; ++idx) {
      if (rem[idx] > 1) dv[idx] *= 2;  // single leftover prime > sqrt
    }
    BlockOut& bo = blocks[b];
    for (u64 n = lo; n <= hi; ++n) {
      u64 dn = dv[n - lo];
      u64 dn1 = dv[n - lo + 1];
      if ((u128)dn1 * *den == (u128)dn * *num) {
        bo.count += 1;
        if (!bo.first) bo.first = n;
        if (bo.sample.size() < sample_cap) bo.sample.push_back(n);
      }
    }
  });

  for (const BlockOut& bo : blocks) {
    out.count += bo.count;
    if (!out.first_n && bo.first) out.first_n = bo.first;
    for (u64 n : bo.sample) {
      if (out.sample.size() >= sample_cap) break;
      out.sample.push_back(n);
    }
  }
  return out;
}

}  // namespace divr
