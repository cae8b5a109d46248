#include "core/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "core/errors.hpp"

namespace divr {

namespace {

Bigint parse_decimal(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    raise(ErrorKind::domain,
          "empty component in rational '" + std::string(whole) + "'");
  }
  for (char c : text) {
    if (c < '0' || c > '9') {
      raise(ErrorKind::domain, "rational '" + std::string(whole) +
                                   "' is not of the form m or m/n in decimal");
    }
  }
  return Bigint(std::string(text));
}

}  // namespace

Rational::Rational(Bigint num, Bigint den) {
  if (num <= 0 || den <= 0) {
    raise(ErrorKind::domain, "rational components must be positive, got " +
                                 dec(num) + "/" + dec(den));
  }
  Bigint g = boost::multiprecision::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    Bigint n = parse_decimal(text, text);
    if (n == 0) raise(ErrorKind::domain, "rational must be positive, got 0");
    return Rational(n, 1);
  }
  Bigint n = parse_decimal(text.substr(0, slash), text);
  Bigint d = parse_decimal(text.substr(slash + 1), text);
  if (n == 0 || d == 0) {
    raise(ErrorKind::domain,
          "rational components must be positive in '" + std::string(text) + "'");
  }
  return Rational(n, d);
}

Rational Rational::inverse() const { return Rational(den_, num_); }

Rational Rational::pow(i64 e) const {
  if (e == 0) return Rational();
  const Rational& base = *this;
  u64 mag = e > 0 ? static_cast<u64>(e) : 0 - static_cast<u64>(e);
  if (mag > (1u << 30)) {
    raise(ErrorKind::capacity, "rational exponent magnitude exceeds 2^30");
  }
  Bigint n = boost::multiprecision::pow(base.num_, static_cast<unsigned>(mag));
  Bigint d = boost::multiprecision::pow(base.den_, static_cast<unsigned>(mag));
  return e > 0 ? Rational(n, d) : Rational(d, n);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::string Rational::str() const { return dec(num_) + "/" + dec(den_); }

}  // namespace divr
