#include "core/genword.hpp"

#include <algorithm>

#include "core/errors.hpp"
#include "core/primality.hpp"

namespace divr {

Generator Generator::make(u64 x, u64 y) {
  if (x < 1 || y < 1) {
    raise(ErrorKind::domain, "generator arguments must be >= 1");
  }
  return x <= y ? Generator{x, y} : Generator{y, x};
}

Rational f_value(const Generator& g) {
  Bigint x = g.x, y = g.y;
  return Rational((x + 1) * (y + 1), x + y + 1);
}

GenWord GenWord::normalized(std::vector<WordTerm> raw, std::size_t term_cap) {
  std::map<Generator, i64> acc;
  for (const WordTerm& t : raw) {
    Generator g = Generator::make(t.gen.x, t.gen.y);
    i64& slot = acc[g];
    i64 sum;
    if (add_overflows(slot, t.exponent, sum)) {
      raise(ErrorKind::capacity, "word exponent overflow at f(" +
                                     std::to_string(g.x) + "," +
                                     std::to_string(g.y) + ")");
    }
    slot = sum;
  }
  GenWord out;
  for (const auto& [g, e] : acc) {
    if (e == 0) continue;
    out.terms_.push_back({g, e});
    if (out.terms_.size() > term_cap) {
      raise(ErrorKind::capacity,
            "word exceeds term cap of " + std::to_string(term_cap));
    }
  }
  return out;
}

Rational GenWord::value() const {
  Rational v;
  for (const WordTerm& t : terms_) {
    v = v * f_value(t.gen).pow(t.exponent);
  }
  return v;
}

GenWord GenWord::times(const GenWord& other, std::size_t term_cap) const {
  std::vector<WordTerm> raw = terms_;
  raw.insert(raw.end(), other.terms_.begin(), other.terms_.end());
  return normalized(std::move(raw), term_cap);
}

GenWord GenWord::inverse() const {
  GenWord out = *this;
  for (WordTerm& t : out.terms_) {
    if (t.exponent == std::numeric_limits<i64>::min()) {
      raise(ErrorKind::capacity, "word exponent overflow inverting word");
    }
    t.exponent = -t.exponent;
  }
  return out;
}

std::string GenWord::str() const {
  if (terms_.empty()) return "1";
  std::string out;
  for (const WordTerm& t : terms_) {
    if (!out.empty()) out += " * ";
    out += "f(" + std::to_string(t.gen.x) + "," + std::to_string(t.gen.y) + ")";
    if (t.exponent != 1) out += "^" + std::to_string(t.exponent);
  }
  return out;
}

Decomposer::Decomposer(const Sieve& sieve, DecomposeLimits limits)
    : sieve_(&sieve), limits_(limits) {}

GenWord Decomposer::prime_word(u64 p) {
  if (!is_prime64(p)) {
    raise(ErrorKind::domain, std::to_string(p) + " is not prime");
  }
  return prime_word_rec(p, 0);
}

GenWord Decomposer::prime_word_rec(u64 p, unsigned depth) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(p);
    if (it != memo_.end()) return it->second;
  }
  if (depth > limits_.depth_cap) {
    raise(ErrorKind::capacity,
          "decomposition depth cap exceeded at prime " + std::to_string(p));
  }

  GenWord word;
  if (p == 2) {
    // f(2,3) = 3*4/6 = 2.
    word = GenWord::normalized({{Generator::make(2, 3), 1}}, limits_.term_cap);
  } else {
    // p = 2x+1:  f(x,x) = (x+1)^2 / p,  so  p = (x+1)^2 * f(x,x)^-1, and the
    // square factors through words of primes strictly smaller than p.
    u64 x = (p - 1) / 2;
    GenWord square = word_for_integer(x + 1, depth + 1);
    std::vector<WordTerm> raw;
    for (const WordTerm& t : square.terms()) {
      i64 doubled;
      if (mul_overflows(t.exponent, i64(2), doubled)) {
        raise(ErrorKind::capacity, "word exponent overflow doubling word");
      }
      raw.push_back({t.gen, doubled});
    }
    raw.push_back({Generator::make(x, x), -1});
    word = GenWord::normalized(std::move(raw), limits_.term_cap);
  }

  std::lock_guard<std::mutex> lock(mu_);
  return memo_.try_emplace(p, std::move(word)).first->second;
}

GenWord Decomposer::word_for_integer(u64 n, unsigned depth) {
  std::vector<WordTerm> raw;
  Factorization f = sieve_->factorize(n);
  for (const PrimePower& pp : f.entries()) {
    if (pp.exponent > u64(std::numeric_limits<i64>::max())) {
      raise(ErrorKind::capacity, "exponent too large in decomposition");
    }
    GenWord w = prime_word_rec(pp.prime, depth);
    for (const WordTerm& t : w.terms()) {
      i64 scaled;
      if (mul_overflows(t.exponent, i64(pp.exponent), scaled)) {
        raise(ErrorKind::capacity, "word exponent overflow scaling word");
      }
      raw.push_back({t.gen, scaled});
    }
  }
  return GenWord::normalized(std::move(raw), limits_.term_cap);
}

Factorization Decomposer::factor_checked(const Bigint& n) const {
  if (n < 1) raise(ErrorKind::domain, "cannot decompose a non-positive value");
  if (auto small = to_u64(n)) return sieve_->factorize(*small);

  // Peel sieved primes until the remainder fits in 64 bits; a remainder that
  // stays larger has a prime factor beyond the deterministic factoring range.
  Bigint rest = n;
  std::vector<PrimePower> entries;
  for (u32 p : sieve_->primes()) {
    if (rest % p == 0) {
      u64 e = 0;
      do {
        rest /= p;
        ++e;
      } while (rest % p == 0);
      entries.push_back({p, e});
      if (to_u64(rest)) break;
    }
  }
  auto small = to_u64(rest);
  if (!small) {
    raise(ErrorKind::capacity,
          dec(n) + " cannot be reduced into the 64-bit factoring range");
  }
  if (*small > 1) {
    Factorization tail = sieve_->factorize(*small);
    for (const PrimePower& pp : tail.entries()) entries.push_back(pp);
  }
  return Factorization::from_entries(std::move(entries));
}

GenWord Decomposer::decompose(const Rational& q) {
  Factorization num = factor_checked(q.num());
  Factorization den = factor_checked(q.den());
  std::vector<WordTerm> raw;
  auto append = [&](const Factorization& f, i64 sign) {
    for (const PrimePower& pp : f.entries()) {
      if (pp.exponent > u64(std::numeric_limits<i64>::max())) {
        raise(ErrorKind::capacity, "exponent too large in decomposition");
      }
      GenWord w = prime_word_rec(pp.prime, 0);
      for (const WordTerm& t : w.terms()) {
        i64 scaled;
        if (mul_overflows(t.exponent, sign * i64(pp.exponent), scaled)) {
          raise(ErrorKind::capacity, "word exponent overflow scaling word");
        }
        raw.push_back({t.gen, scaled});
      }
    }
  };
  append(num, 1);
  append(den, -1);
  return GenWord::normalized(std::move(raw), limits_.term_cap);
}

}  // namespace divr
