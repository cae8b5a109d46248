#include "core/factored.hpp"

#include <algorithm>
#include <charconv>

#include "core/errors.hpp"
#include "core/primality.hpp"

namespace divr {

Factorization Factorization::from_entries(std::vector<PrimePower> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const PrimePower& a, const PrimePower& b) {
              return a.prime < b.prime;
            });
  Factorization out;
  out.entries_.reserve(entries.size());
  for (const PrimePower& pp : entries) {
    if (pp.exponent == 0) {
      raise(ErrorKind::domain,
            "zero exponent for prime " + std::to_string(pp.prime));
    }
    if (!is_prime64(pp.prime)) {
      raise(ErrorKind::domain,
            std::to_string(pp.prime) + " is not prime in factorization");
    }
    if (!out.entries_.empty() && out.entries_.back().prime == pp.prime) {
      u64 merged;
      if (add_overflows_u64(out.entries_.back().exponent, pp.exponent, merged)) {
        raise(ErrorKind::capacity, "exponent overflow merging prime " +
                                       std::to_string(pp.prime));
      }
      out.entries_.back().exponent = merged;
    } else {
      out.entries_.push_back(pp);
    }
  }
  return out;
}

Bigint Factorization::value() const {
  Bigint v = 1;
  for (const PrimePower& pp : entries_) {
    if (pp.exponent > (1u << 24)) {
      raise(ErrorKind::capacity,
            "materializing value with exponent beyond 2^24");
    }
    v *= boost::multiprecision::pow(Bigint(pp.prime),
                                    static_cast<unsigned>(pp.exponent));
  }
  return v;
}

Bigint Factorization::divisor_count() const {
  Bigint d = 1;
  for (const PrimePower& pp : entries_) d *= Bigint(pp.exponent) + 1;
  return d;
}

Factorization Factorization::times(const Factorization& other) const {
  Factorization out;
  out.entries_.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin(), b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() ||
        (a != entries_.end() && a->prime < b->prime)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->prime < a->prime) {
      out.entries_.push_back(*b++);
    } else {
      u64 merged;
      if (add_overflows_u64(a->exponent, b->exponent, merged)) {
        raise(ErrorKind::capacity,
              "exponent overflow multiplying factorizations");
      }
      out.entries_.push_back({a->prime, merged});
      ++a;
      ++b;
    }
  }
  return out;
}

Factorization Factorization::pow(u64 k) const {
  if (k == 0) {
    raise(ErrorKind::domain, "factorization power must be >= 1");
  }
  Factorization out = *this;
  for (PrimePower& pp : out.entries_) {
    u64 scaled;
    if (mul_overflows_u64(pp.exponent, k, scaled)) {
      raise(ErrorKind::capacity, "exponent overflow raising factorization");
    }
    pp.exponent = scaled;
  }
  return out;
}

u64 Factorization::exponent_of(u64 p) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), p,
      [](const PrimePower& pp, u64 key) { return pp.prime < key; });
  return it != entries_.end() && it->prime == p ? it->exponent : 0;
}

u64 Factorization::max_prime() const {
  return entries_.empty() ? 1 : entries_.back().prime;
}

bool Factorization::is_odd() const { return exponent_of(2) == 0; }

bool Factorization::coprime_with(const Factorization& other) const {
  auto a = entries_.begin(), b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->prime < b->prime) {
      ++a;
    } else if (b->prime < a->prime) {
      ++b;
    } else {
      return false;
    }
  }
  return true;
}

Factorization Factorization::divided_once_by(u64 p) const {
  Factorization out = *this;
  for (auto it = out.entries_.begin(); it != out.entries_.end(); ++it) {
    if (it->prime == p) {
      if (--it->exponent == 0) out.entries_.erase(it);
      return out;
    }
  }
  raise(ErrorKind::precondition,
        "value is not divisible by " + std::to_string(p));
}

std::string Factorization::str() const {
  if (entries_.empty()) return "1";
  std::string out;
  for (const PrimePower& pp : entries_) {
    if (!out.empty()) out += " * ";
    out += std::to_string(pp.prime);
    if (pp.exponent != 1) out += "^" + std::to_string(pp.exponent);
  }
  return out;
}

namespace {

u64 parse_u64_token(std::string_view tok, std::string_view whole) {
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
    raise(ErrorKind::domain, "bad factorization token '" + std::string(tok) +
                                 "' in '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Factorization Factorization::parse(std::string_view text) {
  if (text.empty()) {
    raise(ErrorKind::domain, "empty factorization text");
  }
  if (text == "1") return Factorization();
  std::vector<PrimePower> entries;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find(" * ", pos);
    std::string_view tok = text.substr(
        pos, next == std::string_view::npos ? std::string_view::npos
                                            : next - pos);
    size_t caret = tok.find('^');
    u64 p, e = 1;
    if (caret == std::string_view::npos) {
      p = parse_u64_token(tok, text);
    } else {
      p = parse_u64_token(tok.substr(0, caret), text);
      e = parse_u64_token(tok.substr(caret + 1), text);
    }
    entries.push_back({p, e});
    if (next == std::string_view::npos) break;
    pos = next + 3;
  }
  return from_entries(std::move(entries));
}

FactoredInt FactoredInt::from_factors(Factorization f) {
  FactoredInt out;
  out.value_ = f.value();
  out.factors_ = std::move(f);
  return out;
}

FactoredInt FactoredInt::from_parts(Bigint value, Factorization f) {
  if (f.value() != value) {
    raise(ErrorKind::internal, "factorization does not multiply back to " +
                                   dec(value) + " (got " + dec(f.value()) +
                                   ")");
  }
  FactoredInt out;
  out.value_ = std::move(value);
  out.factors_ = std::move(f);
  return out;
}

FactoredInt FactoredInt::times(const FactoredInt& other) const {
  FactoredInt out;
  out.value_ = value_ * other.value_;
  out.factors_ = factors_.times(other.factors_);
  return out;
}

}  // namespace divr
