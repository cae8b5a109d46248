#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core/genword.hpp"

namespace divr {

// The three linear forms are indexed 1..3; a witness pair names the two whose
// product shapes a single witness n.
enum class Pair { p12, p23, p13 };

constexpr std::array<Pair, 3> kAllPairs{Pair::p12, Pair::p23, Pair::p13};

std::string pair_label(Pair p);            // "1-2", "2-3", "1-3"
std::optional<Pair> pair_from_label(std::string_view s);

// One occurrence of a generator argument pair taken from an expanded word.
struct ExponentPair {
  u64 x;
  u64 y;

  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

// decompose(q) with one factor f(1,1) divided out, expanded into unit
// occurrences: a term f(x,y)^e contributes |e| copies of (x,y) to the
// positive (e > 0) or negative (e < 0) side.
struct SplitPairs {
  std::vector<ExponentPair> positives;
  std::vector<ExponentPair> negatives;
};

SplitPairs split_for_construction(const Rational& q, Decomposer& dec);

// A construction prime with its exponents: prime^a_exp divides a, and
// prime^r_exp divides r2 (positive side) or r3 (negative side).
struct PrimeAssignment {
  u64 prime;
  u64 a_exp;
  u64 r_exp;
};

// Everything the witness machinery needs about one constructed instance.
// a is divisible by 4; r1, r2, r3 are odd, pairwise coprime, and coprime to
// a(a+1)(a+2).  The factorizations of a+1 and a+2 (and C, the largest prime
// factor over all six quantities) are carried only when a+2 fits in 64 bits,
// where deterministic factoring is available; the structural parts are exact
// for arbitrarily large a.
struct SieveParams {
  FactoredInt a;
  FactoredInt half_a1;                 // a/2
  std::array<FactoredInt, 3> r;        // r1, r2, r3
  std::optional<FactoredInt> a2;       // a+1
  std::optional<FactoredInt> a3;       // a+2
  std::optional<FactoredInt> half_a3;  // (a+2)/2
  std::optional<u64> C;

  Bigint a2_value() const { return a.value() + 1; }
  Bigint a3_value() const { return a.value() + 2; }
  bool fully_factored() const { return a2 && a3 && half_a3 && C; }
};

struct BuildResult {
  Rational target;
  GenWord word;  // decompose(target)
  SplitPairs split;
  std::vector<PrimeAssignment> positive_assignment;
  std::vector<PrimeAssignment> negative_assignment;
  SieveParams params;
};

// Runs the whole construction for a target q: decompose, split, assign the
// smallest odd primes (positives first, ascending), and assemble
//   a  = 4 * prod p_i^{x_i} * prod q_j^{u_j}
//   r2 =     prod p_i^{y_i},   r3 = prod q_j^{v_j},   r1 = 1.
BuildResult build_params(const Rational& q, Decomposer& dec,
                         const Sieve& sieve);

// First violated construction hypothesis, or nullopt when all hold.  Works
// for arbitrarily large a (exact bigint arithmetic).
struct Violation {
  std::string condition;
  std::string detail;
};
std::optional<Violation> validate_params(const SieveParams& params);

// Predicted divisor ratios d(n+1)/d(n) for witnesses of each pair, together
// with the six divisor counts they are built from.  Bound error unless
// params.fully_factored().
struct RatioTriple {
  Rational pair12, pair23, pair13;
  Bigint d_a2_r1, d_a1_r2;        // pair12 = d_a2_r1 / d_a1_r2
  Bigint d_a3_r2, d_a2_r3;        // pair23 = d_a3_r2 / d_a2_r3
  Bigint d_half_a3_r1, d_half_a1_r3;  // pair13 = d_half_a3_r1 / d_half_a1_r3

  const Rational& by_pair(Pair p) const;
};
RatioTriple predicted_ratios(const SieveParams& params);

// pair12 * pair23 / pair13.  When the instance is fully factored this uses
// the three predicted ratios directly; otherwise (huge a, r1 = 1) it uses the
// exact cancellation  2 d(r2) d(a/2 * r3) / (d(a * r2) d(r3)),  whose
// coprimality requirements are re-checked with bigint gcds.
Rational predicted_group_value(const SieveParams& params);

// 4/3 * prod f(x_i, y_i) * prod f(u_j, v_j)^-1 over the split; the value the
// construction is designed to hit.
Rational closed_form_value(const BuildResult& build);

// Smallest positive integer triple (e1, e2, e3) proportional to
// (pair23/pair13, 1, pair13/pair12).
std::array<Bigint, 3> balance_exponents(const RatioTriple& ratios);

inline constexpr u64 kMaxAugmentExponent = u64(1) << 20;

// Multiplies r_i by pi_i^(e_i - 1) for the three smallest distinct odd primes
// pi_i not dividing a(a+1)(a+2) r1 r2 r3, which rescales the three predicted
// ratios to a common value.  Capacity error if some e_i exceeds
// kMaxAugmentExponent.
SieveParams augment_params(const SieveParams& params,
                           const std::array<Bigint, 3>& e, const Sieve& sieve);

}  // namespace divr
