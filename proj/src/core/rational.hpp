#pragma once

#include <string>
#include <string_view>

#include "core/bigint.hpp"

namespace divr {

// Positive rational number kept in lowest terms.  Both components are
// strictly positive; equality is structural (valid because of the canonical
// reduced representation).
class Rational {
 public:
  Rational() : num_(1), den_(1) {}  // multiplicative identity

  // Reduces num/den.  Domain error unless both are >= 1.
  Rational(Bigint num, Bigint den);

  // Accepts "m" or "m/n" in decimal (no signs, no decimals, no whitespace).
  // Domain error on anything else, including zero components.
  static Rational parse(std::string_view text);

  const Bigint& num() const noexcept { return num_; }
  const Bigint& den() const noexcept { return den_; }

  bool is_one() const noexcept { return num_ == 1 && den_ == 1; }

  Rational inverse() const;
  Rational pow(i64 e) const;  // e may be negative or zero

  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }

  // "num/den", always with the explicit denominator ("16/9", "5/1").
  std::string str() const;

 private:
  Bigint num_;
  Bigint den_;
};

}  // namespace divr
