#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>

namespace pasda::sym {

// Exact rational arithmetic on int64 numerator/denominator. All operations
// go through __int128 intermediates and report overflow instead of wrapping,
// so callers can bail out of a normalization attempt rather than produce a
// wrong coefficient.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  explicit Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }

  static std::optional<Rational> from_double(double v) {
    if (!std::isfinite(v)) return std::nullopt;
    if (v == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(v, &exp);  // v = m * 2^exp, |m| in [0.5, 1)
    // 53 mantissa bits; shift until integral.
    for (int i = 0; i < 53 && m != std::floor(m); ++i) {
      m *= 2.0;
      --exp;
    }
    if (m != std::floor(m)) return std::nullopt;
    auto mi = static_cast<std::int64_t>(m);
    if (exp >= 0) {
      if (exp > 62) return std::nullopt;
      __int128 n = static_cast<__int128>(mi) << exp;
      if (n > INT64_MAX || n < INT64_MIN) return std::nullopt;
      return Rational(static_cast<std::int64_t>(n));
    }
    if (exp < -62) return std::nullopt;
    return Rational(mi, std::int64_t(1) << (-exp));
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  static std::optional<Rational> add(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return make_checked(n, d);
  }
  static std::optional<Rational> sub(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
    __int128 d = (__int128)a.den_ * b.den_;
    return make_checked(n, d);
  }
  static std::optional<Rational> mul(const Rational& a, const Rational& b) {
    __int128 n = (__int128)a.num_ * b.num_;
    __int128 d = (__int128)a.den_ * b.den_;
    return make_checked(n, d);
  }
  static std::optional<Rational> div(const Rational& a, const Rational& b) {
    if (b.num_ == 0) return std::nullopt;
    __int128 n = (__int128)a.num_ * b.den_;
    __int128 d = (__int128)a.den_ * b.num_;
    return make_checked(n, d);
  }

  // Three-way comparison; exact.
  static int compare(const Rational& a, const Rational& b) {
    __int128 lhs = (__int128)a.num_ * b.den_;
    __int128 rhs = (__int128)b.num_ * a.den_;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }

private:
  static std::optional<Rational> make_checked(__int128 n, __int128 d) {
    if (d == 0) return std::nullopt;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) return std::nullopt;
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace pasda::sym
