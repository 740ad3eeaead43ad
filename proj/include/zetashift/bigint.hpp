#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "zetashift/errors.hpp"

namespace zetashift {

// Arbitrary-precision signed integer. Sign-magnitude representation with
// 64-bit limbs, little-endian, no leading zero limbs; zero is sign 0 with an
// empty magnitude. Division truncates toward zero, so the remainder carries
// the sign of the dividend.
class BigInt {
  using limb = std::uint64_t;
  using dlimb = unsigned __int128;

 public:
  BigInt() = default;

  BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on LLONG_MIN
    std::uint64_t m = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    mag_.push_back(m);
  }
  BigInt(int v) : BigInt(static_cast<long long>(v)) {}

  static BigInt from_string(std::string_view s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i >= s.size()) throw validation_error("BigInt: empty numeral");
    BigInt out;
    // consume 19-digit chunks: 10^19 fits a limb
    while (i < s.size()) {
      std::size_t take = std::min<std::size_t>(19, s.size() - i);
      limb chunk = 0, scale = 1;
      for (std::size_t k = 0; k < take; ++k) {
        char c = s[i + k];
        if (c < '0' || c > '9') throw validation_error("BigInt: bad digit in numeral");
        chunk = chunk * 10 + static_cast<limb>(c - '0');
        scale *= 10;
      }
      out.mul_small_add(scale, chunk);
      i += take;
    }
    if (!out.mag_.empty()) out.sign_ = neg ? -1 : 1;
    return out;
  }

  std::string to_string() const {
    if (sign_ == 0) return "0";
    std::vector<limb> work = mag_;
    std::string digits;
    constexpr limb chunk = 10000000000000000000ull;  // 10^19
    while (!work.empty()) {
      limb rem = div_small_inplace(work, chunk);
      if (work.empty()) {
        // top group: no zero padding
        digits.insert(0, std::to_string(rem));
      } else {
        std::string g = std::to_string(rem);
        digits.insert(0, std::string(19 - g.size(), '0') + g);
      }
    }
    return sign_ < 0 ? "-" + digits : digits;
  }

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }
  bool is_even() const { return sign_ == 0 || (mag_[0] & 1u) == 0; }

  bool fits_int64() const {
    if (mag_.size() > 1) return false;
    if (mag_.empty()) return true;
    limb lim = static_cast<limb>(std::numeric_limits<long long>::max()) + (sign_ < 0 ? 1 : 0);
    return mag_[0] <= lim;
  }
  long long to_int64() const {
    if (!fits_int64()) throw numeric_range_error("BigInt: value exceeds int64");
    if (sign_ == 0) return 0;
    return sign_ < 0 ? -static_cast<long long>(mag_[0] - 1) - 1 : static_cast<long long>(mag_[0]);
  }
  double to_double() const {
    double v = 0;
    for (std::size_t i = mag_.size(); i-- > 0;) v = v * 18446744073709551616.0 + static_cast<double>(mag_[i]);
    return sign_ < 0 ? -v : v;
  }

  BigInt operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
  }
  BigInt abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
      r.mag_ = add_mag(a.mag_, b.mag_);
      r.sign_ = a.sign_;
    } else {
      int c = cmp_mag(a.mag_, b.mag_);
      if (c == 0) return BigInt{};
      const BigInt& big = c > 0 ? a : b;
      const BigInt& small = c > 0 ? b : a;
      r.mag_ = sub_mag(big.mag_, small.mag_);
      r.sign_ = big.sign_;
    }
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt{};
    BigInt r;
    r.mag_.assign(a.mag_.size() + b.mag_.size(), 0);
    for (std::size_t i = 0; i < a.mag_.size(); ++i) {
      limb carry = 0;
      dlimb ai = a.mag_[i];
      for (std::size_t j = 0; j < b.mag_.size(); ++j) {
        dlimb cur = ai * b.mag_[j] + r.mag_[i + j] + carry;
        r.mag_[i + j] = static_cast<limb>(cur);
        carry = static_cast<limb>(cur >> 64);
      }
      r.mag_[i + b.mag_.size()] = carry;
    }
    r.trim();
    r.sign_ = a.sign_ * b.sign_;
    return r;
  }

  // Truncating division: q toward zero, a == q*b + r, |r| < |b|, sign(r) == sign(a).
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw validation_error("BigInt: division by zero");
    int c = cmp_mag(a.mag_, b.mag_);
    if (a.sign_ == 0 || c < 0) {
      q = BigInt{};
      r = a;
      return;
    }
    if (b.mag_.size() == 1) {
      q.mag_ = a.mag_;
      limb rem = div_small_inplace(q.mag_, b.mag_[0]);
      q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
      r = BigInt{};
      if (rem) {
        r.mag_.push_back(rem);
        r.sign_ = a.sign_;
      }
      return;
    }
    divmod_knuth(a.mag_, b.mag_, q.mag_, r.mag_);
    q.trim();
    r.trim();
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  // Binary GCD on magnitudes; result is non-negative.
  static BigInt gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    unsigned az = a.trailing_zero_bits();
    unsigned bz = b.trailing_zero_bits();
    unsigned shift = std::min(az, bz);
    a.shr_bits(az);
    b.shr_bits(bz);
    while (true) {
      int c = cmp_mag(a.mag_, b.mag_);
      if (c == 0) break;
      if (c < 0) std::swap(a, b);
      a.mag_ = sub_mag(a.mag_, b.mag_);
      if (a.mag_.empty()) break;
      a.shr_bits(a.trailing_zero_bits());
    }
    BigInt g = b;
    g.shl_bits(shift);
    return g;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.mag_ == b.mag_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = cmp_mag(a.mag_, b.mag_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
  }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

 private:
  int sign_ = 0;
  std::vector<limb> mag_;

  void trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
  }

  // this = this * m + add (magnitude only; used by from_string)
  void mul_small_add(limb m, limb add) {
    limb carry = add;
    for (auto& l : mag_) {
      dlimb cur = static_cast<dlimb>(l) * m + carry;
      l = static_cast<limb>(cur);
      carry = static_cast<limb>(cur >> 64);
    }
    if (carry) mag_.push_back(carry);
  }

  static limb div_small_inplace(std::vector<limb>& v, limb d) {
    dlimb rem = 0;
    for (std::size_t i = v.size(); i-- > 0;) {
      dlimb cur = (rem << 64) | v[i];
      v[i] = static_cast<limb>(cur / d);
      rem = cur % d;
    }
    while (!v.empty() && v.back() == 0) v.pop_back();
    return static_cast<limb>(rem);
  }

  static int cmp_mag(const std::vector<limb>& a, const std::vector<limb>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<limb> add_mag(const std::vector<limb>& a, const std::vector<limb>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<limb> r = big;
    limb carry = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      dlimb cur = static_cast<dlimb>(r[i]) + (i < small.size() ? small[i] : 0) + carry;
      r[i] = static_cast<limb>(cur);
      carry = static_cast<limb>(cur >> 64);
      if (carry == 0 && i >= small.size()) break;
    }
    if (carry) r.push_back(carry);
    return r;
  }

  // requires a >= b
  static std::vector<limb> sub_mag(const std::vector<limb>& a, const std::vector<limb>& b) {
    std::vector<limb> r = a;
    limb borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      limb sub = (i < b.size() ? b[i] : 0);
      limb before = r[i];
      limb after = before - sub - borrow;
      borrow = (before < sub || (borrow && before == sub)) ? 1 : 0;
      r[i] = after;
      if (borrow == 0 && i >= b.size()) break;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  unsigned trailing_zero_bits() const {
    for (std::size_t i = 0; i < mag_.size(); ++i)
      if (mag_[i]) return static_cast<unsigned>(i * 64 + std::countr_zero(mag_[i]));
    return 0;
  }

  void shr_bits(unsigned n) {
    if (n == 0 || mag_.empty()) return;
    std::size_t limbs = n / 64;
    unsigned bits = n % 64;
    if (limbs >= mag_.size()) {
      mag_.clear();
      sign_ = 0;
      return;
    }
    mag_.erase(mag_.begin(), mag_.begin() + static_cast<std::ptrdiff_t>(limbs));
    if (bits) {
      for (std::size_t i = 0; i + 1 < mag_.size(); ++i)
        mag_[i] = (mag_[i] >> bits) | (mag_[i + 1] << (64 - bits));
      mag_.back() >>= bits;
    }
    trim();
  }

  void shl_bits(unsigned n) {
    if (n == 0 || mag_.empty()) return;
    std::size_t limbs = n / 64;
    unsigned bits = n % 64;
    if (bits) {
      limb carry = 0;
      for (auto& l : mag_) {
        limb nw = (l << bits) | carry;
        carry = l >> (64 - bits);
        l = nw;
      }
      if (carry) mag_.push_back(carry);
    }
    mag_.insert(mag_.begin(), limbs, 0);
  }

  // Knuth algorithm D on magnitudes; requires |a| >= |b|, b at least 2 limbs.
  static void divmod_knuth(const std::vector<limb>& a, const std::vector<limb>& b,
                           std::vector<limb>& q, std::vector<limb>& r) {
    const std::size_t n = b.size();
    const std::size_t m = a.size() - n;
    const unsigned shift = static_cast<unsigned>(std::countl_zero(b.back()));

    std::vector<limb> u(a.size() + 1, 0), v(n);
    // normalized copies: top bit of v.back() set
    if (shift) {
      for (std::size_t i = n; i-- > 1;) v[i] = (b[i] << shift) | (b[i - 1] >> (64 - shift));
      v[0] = b[0] << shift;
      u[a.size()] = a.back() >> (64 - shift);
      for (std::size_t i = a.size(); i-- > 1;) u[i] = (a[i] << shift) | (a[i - 1] >> (64 - shift));
      u[0] = a[0] << shift;
    } else {
      v = b;
      std::copy(a.begin(), a.end(), u.begin());
    }

    q.assign(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
      dlimb num = (static_cast<dlimb>(u[j + n]) << 64) | u[j + n - 1];
      dlimb qhat = num / v[n - 1];
      dlimb rhat = num % v[n - 1];
      while (qhat >> 64 ||
             qhat * v[n - 2] > ((rhat << 64) | u[j + n - 2])) {
        --qhat;
        rhat += v[n - 1];
        if (rhat >> 64) break;
      }
      // multiply-subtract qhat * v from u[j .. j+n]
      dlimb borrow = 0, carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        dlimb p = qhat * v[i] + carry;
        carry = p >> 64;
        limb plo = static_cast<limb>(p);
        limb before = u[i + j];
        limb after = before - plo - static_cast<limb>(borrow);
        borrow = (before < plo || (borrow && before == plo)) ? 1 : 0;
        u[i + j] = after;
      }
      {
        limb before = u[j + n];
        limb sub = static_cast<limb>(carry);
        limb after = before - sub - static_cast<limb>(borrow);
        borrow = (before < sub || (borrow && before == sub)) ? 1 : 0;
        u[j + n] = after;
      }
      if (borrow) {
        // qhat one too large: add v back
        --qhat;
        dlimb c2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
          dlimb cur = static_cast<dlimb>(u[i + j]) + v[i] + c2;
          u[i + j] = static_cast<limb>(cur);
          c2 = cur >> 64;
        }
        u[j + n] += static_cast<limb>(c2);
      }
      q[j] = static_cast<limb>(qhat);
    }

    r.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(n));
    if (shift) {
      for (std::size_t i = 0; i + 1 < n; ++i)
        r[i] = (r[i] >> shift) | (r[i + 1] << (64 - shift));
      r[n - 1] >>= shift;
    }
  }
};

}  // namespace zetashift
