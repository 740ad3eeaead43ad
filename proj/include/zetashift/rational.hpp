#pragma once

#include <string>
#include <string_view>

#include "zetashift/bigint.hpp"
#include "zetashift/errors.hpp"

namespace zetashift {

// Exact rational number. Always normalized: positive denominator,
// gcd(num, den) == 1, zero stored as 0/1. Parsing and printing use the
// "p/q" convention (bare integer when q == 1); values never pass through
// floating point.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}
  Rational(int v) : num_(v), den_(1) {}
  Rational(long long n, long long d) : Rational(BigInt(n), BigInt(d)) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  static Rational parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt::from_string(s), BigInt(1));
    return Rational(BigInt::from_string(s.substr(0, slash)),
                    BigInt::from_string(s.substr(slash + 1)));
  }

  std::string to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }
  double to_double() const { return num_.to_double() / den_.to_double(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw validation_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;  // denominators positive
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  BigInt num_, den_;

  void normalize() {
    if (den_.is_zero()) throw validation_error("Rational: zero denominator");
    if (den_.sign() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    BigInt g = BigInt::gcd(num_.abs(), den_);
    if (!(g == BigInt(1))) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }
};

}  // namespace zetashift
