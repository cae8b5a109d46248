#include "core/construct.hpp"

#include <algorithm>

#include "core/errors.hpp"
#include "core/primality.hpp"

namespace divr {

std::string pair_label(Pair p) {
  switch (p) {
    case Pair::p12:
      return "1-2";
    case Pair::p23:
      return "2-3";
    case Pair::p13:
      return "1-3";
  }
  raise(ErrorKind::internal, "bad pair value");
}

std::optional<Pair> pair_from_label(std::string_view s) {
  if (s == "1-2") return Pair::p12;
  if (s == "2-3") return Pair::p23;
  if (s == "1-3") return Pair::p13;
  return std::nullopt;
}

SplitPairs split_for_construction(const Rational& q, Decomposer& dec) {
  GenWord shifted = dec.decompose(q).times(
      GenWord::normalized({{Generator::make(1, 1), -1}}));
  SplitPairs out;
  for (const WordTerm& t : shifted.terms()) {
    u64 copies = t.exponent > 0 ? u64(t.exponent) : 0 - u64(t.exponent);
    if (copies > kDefaultTermCap) {
      raise(ErrorKind::capacity, "split expansion exceeds term cap");
    }
    auto& side = t.exponent > 0 ? out.positives : out.negatives;
    for (u64 i = 0; i < copies; ++i) side.push_back({t.gen.x, t.gen.y});
  }
  return out;
}

BuildResult build_params(const Rational& q, Decomposer& dec,
                         const Sieve& sieve) {
  BuildResult out;
  out.target = q;
  out.word = dec.decompose(q);
  out.split = split_for_construction(q, dec);

  const std::size_t need =
      out.split.positives.size() + out.split.negatives.size();
  std::vector<u64> odd_primes;
  odd_primes.reserve(need);
  for (u32 p : sieve.primes()) {
    if (p == 2) continue;
    odd_primes.push_back(p);
    if (odd_primes.size() == need) break;
  }
  if (odd_primes.size() < need) {
    raise(ErrorKind::capacity,
          "construction needs " + std::to_string(need) +
              " odd primes; raise the sieve limit");
  }

  std::vector<PrimePower> a_pp{{2, 2}};
  std::vector<PrimePower> r2_pp, r3_pp;
  std::size_t next = 0;
  for (const ExponentPair& ep : out.split.positives) {
    u64 p = odd_primes[next++];
    out.positive_assignment.push_back({p, ep.x, ep.y});
    a_pp.push_back({p, ep.x});
    r2_pp.push_back({p, ep.y});
  }
  for (const ExponentPair& ep : out.split.negatives) {
    u64 p = odd_primes[next++];
    out.negative_assignment.push_back({p, ep.x, ep.y});
    a_pp.push_back({p, ep.x});
    r3_pp.push_back({p, ep.y});
  }

  SieveParams& P = out.params;
  P.a = FactoredInt::from_factors(Factorization::from_entries(a_pp));
  P.half_a1 =
      FactoredInt::from_factors(P.a.factors().divided_once_by(2));
  P.r[0] = FactoredInt();
  P.r[1] = FactoredInt::from_factors(Factorization::from_entries(r2_pp));
  P.r[2] = FactoredInt::from_factors(Factorization::from_entries(r3_pp));

  // a+1 and a+2 get factored only when they sit inside the deterministic
  // 64-bit factoring range.
  if (auto a3_small = to_u64(P.a.value() + 2)) {
    u64 a2_small = *a3_small - 1;
    P.a2 = FactoredInt::from_factors(sieve.factorize(a2_small));
    P.a3 = FactoredInt::from_factors(sieve.factorize(*a3_small));
    P.half_a3 = FactoredInt::from_factors(sieve.factorize(*a3_small / 2));
    u64 top = 2;
    for (const FactoredInt* part :
         {&P.a, P.a2 ? &*P.a2 : nullptr, P.a3 ? &*P.a3 : nullptr, &P.r[0],
          &P.r[1], &P.r[2]}) {
      if (part) top = std::max(top, part->factors().max_prime());
    }
    P.C = top;
  }
  return out;
}

std::optional<Violation> validate_params(const SieveParams& P) {
  auto fail = [](std::string cond, std::string detail) {
    return Violation{std::move(cond), std::move(detail)};
  };

  if (P.a.value() % 4 != 0) {
    return fail("4 | a", "a = " + dec(P.a.value()));
  }
  if (P.half_a1.value() * 2 != P.a.value()) {
    return fail("half_a1 = a/2", "half_a1 = " + dec(P.half_a1.value()));
  }
  for (int i = 0; i < 3; ++i) {
    if (P.r[i].value() % 2 == 0) {
      return fail("r odd", "r" + std::to_string(i + 1) + " = " +
                               dec(P.r[i].value()));
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (boost::multiprecision::gcd(P.r[i].value(), P.r[j].value()) != 1) {
        return fail("r pairwise coprime",
                    "gcd(r" + std::to_string(i + 1) + ", r" +
                        std::to_string(j + 1) + ") > 1");
      }
    }
  }
  // (r_i, a_i - a_j) = 1 comes free: |a_i - a_j| is 1 or 2 and r_i is odd.
  const Bigint a_of[3] = {P.a.value(), P.a2_value(), P.a3_value()};
  for (int i = 0; i < 3; ++i) {
    if (boost::multiprecision::gcd(P.r[i].value(), a_of[i]) != 1) {
      return fail("gcd(r_i, a_i) = 1",
                  "gcd(r" + std::to_string(i + 1) + ", a" +
                      std::to_string(i + 1) + ") > 1");
    }
  }
  if (P.a2 && P.a2->value() != P.a2_value()) {
    return fail("a2 = a+1", "a2 = " + dec(P.a2->value()));
  }
  if (P.a3 && P.a3->value() != P.a3_value()) {
    return fail("a3 = a+2", "a3 = " + dec(P.a3->value()));
  }
  if (P.half_a3 && P.half_a3->value() * 2 != P.a3_value()) {
    return fail("half_a3 = (a+2)/2", "half_a3 = " + dec(P.half_a3->value()));
  }
  if (P.C) {
    if (!P.fully_factored()) {
      return fail("C needs factored a+1, a+2", "C present without them");
    }
    u64 top = 2;
    for (const FactoredInt* part :
         {&P.a, &*P.a2, &*P.a3, &P.r[0], &P.r[1], &P.r[2]}) {
      top = std::max(top, part->factors().max_prime());
    }
    if (top != *P.C) {
      return fail("C is the largest prime factor of a(a+1)(a+2) r1 r2 r3",
                  "C = " + std::to_string(*P.C) + ", computed " +
                      std::to_string(top));
    }
  }
  return std::nullopt;
}

const Rational& RatioTriple::by_pair(Pair p) const {
  switch (p) {
    case Pair::p12:
      return pair12;
    case Pair::p23:
      return pair23;
    case Pair::p13:
      return pair13;
  }
  raise(ErrorKind::internal, "bad pair value");
}

RatioTriple predicted_ratios(const SieveParams& P) {
  if (!P.fully_factored()) {
    raise(ErrorKind::bound,
          "predicted ratios need factored a+1 and a+2 (a+2 >= 2^64)");
  }
  RatioTriple t;
  t.d_a2_r1 = P.a2->times(P.r[0]).divisor_count();
  t.d_a1_r2 = P.a.times(P.r[1]).divisor_count();
  t.d_a3_r2 = P.a3->times(P.r[1]).divisor_count();
  t.d_a2_r3 = P.a2->times(P.r[2]).divisor_count();
  t.d_half_a3_r1 = P.half_a3->times(P.r[0]).divisor_count();
  t.d_half_a1_r3 = P.half_a1.times(P.r[2]).divisor_count();
  t.pair12 = Rational(t.d_a2_r1, t.d_a1_r2);
  t.pair23 = Rational(t.d_a3_r2, t.d_a2_r3);
  t.pair13 = Rational(t.d_half_a3_r1, t.d_half_a1_r3);
  return t;
}

Rational predicted_group_value(const SieveParams& P) {
  if (P.fully_factored()) {
    RatioTriple t = predicted_ratios(P);
    return t.pair12 * t.pair23 / t.pair13;
  }
  // Cancellation route for instances too large to factor a+1 and a+2: with
  // r1 = 1 the unknown divisor counts d(a+1) and d((a+2)/2) cancel between
  // numerator and denominator, leaving only factored quantities.
  if (P.r[0].value() != 1) {
    raise(ErrorKind::bound,
          "group value for unfactored instances needs r1 = 1");
  }
  using boost::multiprecision::gcd;
  if (gcd(P.a2_value(), P.r[2].value()) != 1) {
    raise(ErrorKind::domain, "cancellation needs gcd(a+1, r3) = 1");
  }
  if (gcd(P.a3_value() / 2, P.r[1].value()) != 1) {
    raise(ErrorKind::domain, "cancellation needs gcd((a+2)/2, r2) = 1");
  }
  Bigint num = 2 * P.r[1].divisor_count() *
               P.half_a1.times(P.r[2]).divisor_count();
  Bigint den = P.a.times(P.r[1]).divisor_count() * P.r[2].divisor_count();
  return Rational(num, den);
}

Rational closed_form_value(const BuildResult& build) {
  Rational v(4, 3);
  for (const ExponentPair& ep : build.split.positives) {
    v = v * f_value(Generator::make(ep.x, ep.y));
  }
  for (const ExponentPair& ep : build.split.negatives) {
    v = v / f_value(Generator::make(ep.x, ep.y));
  }
  return v;
}

std::array<Bigint, 3> balance_exponents(const RatioTriple& ratios) {
  using boost::multiprecision::gcd;
  using boost::multiprecision::lcm;
  Rational t1 = ratios.pair23 / ratios.pair13;
  Rational t3 = ratios.pair13 / ratios.pair12;
  Bigint L = lcm(t1.den(), t3.den());
  std::array<Bigint, 3> e{t1.num() * (L / t1.den()), L,
                          t3.num() * (L / t3.den())};
  Bigint g = gcd(gcd(e[0], e[1]), e[2]);
  for (Bigint& v : e) v /= g;
  return e;
}

SieveParams augment_params(const SieveParams& P,
                           const std::array<Bigint, 3>& e, const Sieve& sieve) {
  for (const Bigint& v : e) {
    if (v < 1) raise(ErrorKind::domain, "augment exponents must be >= 1");
    if (v > kMaxAugmentExponent) {
      raise(ErrorKind::capacity, "augment exponent " + dec(v) +
                                     " exceeds cap " +
                                     std::to_string(kMaxAugmentExponent));
    }
  }
  Bigint avoid = P.a.value() * P.a2_value() * P.a3_value() * P.r[0].value() *
                 P.r[1].value() * P.r[2].value();
  std::array<u64, 3> pi{};
  std::size_t found = 0;
  for (u32 p : sieve.primes()) {
    if (p == 2) continue;
    if (avoid % p == 0) continue;
    pi[found++] = p;
    if (found == 3) break;
  }
  if (found < 3) {
    raise(ErrorKind::capacity,
          "not enough odd primes outside the instance; raise the sieve limit");
  }

  SieveParams out = P;
  for (int i = 0; i < 3; ++i) {
    u64 exp = static_cast<u64>(e[i]);
    if (exp == 1) continue;  // pi_i^0: nothing to multiply in
    out.r[i] = out.r[i].times(FactoredInt::from_factors(
        Factorization::from_entries({{pi[i], exp - 1}})));
  }
  if (P.C) {
    u64 top = *P.C;
    for (int i = 0; i < 3; ++i) {
      if (e[i] > 1) top = std::max(top, pi[i]);
    }
    out.C = top;
  }
  if (auto v = validate_params(out)) {
    raise(ErrorKind::internal,
          "augmented instance violates '" + v->condition + "': " + v->detail);
  }
  return out;
}

}  // namespace divr
