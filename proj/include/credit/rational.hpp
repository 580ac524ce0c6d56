#ifndef CREDIT_RATIONAL_HPP
#define CREDIT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "credit/errors.hpp"

namespace credit {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction over arbitrary-precision integers.
///
/// Always stored reduced with a positive denominator, so two equal values
/// have identical representations and equality is structural. Zero is 0/1.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : num_(value) {}  // NOLINT(google-explicit-constructor)

  explicit Rational(BigInt value) : num_(std::move(value)) {}

  Rational(BigInt numerator, BigInt denominator)
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_ == 0) throw DivisionByZero();
    normalize();
  }

  /// Exact value of a finite double (every finite double is a dyadic fraction).
  static Rational from_double(double value) {
    if (!std::isfinite(value)) throw DomainError("non-finite value has no rational form");
    if (value == 0.0) return {};
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
    exponent -= 53;
    BigInt num = scaled;
    BigInt den = 1;
    if (exponent >= 0) {
      num <<= exponent;
    } else {
      den <<= -exponent;
    }
    return {std::move(num), std::move(den)};
  }

  /// Parses `n`, `n/d` or a plain decimal `i.f` (optional leading sign).
  static Rational parse(std::string_view text) {
    const std::string_view original = text;
    auto fail = [&](const char* why) -> ParseError {
      return ParseError("invalid rational '" + std::string(original) + "': " + why);
    };
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
      negative = text.front() == '-';
      text.remove_prefix(1);
    }
    auto digits = [](std::string_view s) {
      BigInt v = 0;
      for (char c : s) v = v * 10 + (c - '0');
      return v;
    };
    auto all_digits = [](std::string_view s) {
      for (char c : s) {
        if (c < '0' || c > '9') return false;
      }
      return true;
    };

    BigInt num;
    BigInt den = 1;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
      const auto top = text.substr(0, slash);
      const auto bottom = text.substr(slash + 1);
      if (top.empty() || bottom.empty() || !all_digits(top) || !all_digits(bottom)) {
        throw fail("expected digits on both sides of '/'");
      }
      num = digits(top);
      den = digits(bottom);
      if (den == 0) throw fail("zero denominator");
    } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
      const auto whole = text.substr(0, dot);
      const auto frac = text.substr(dot + 1);
      if ((whole.empty() && frac.empty()) || !all_digits(whole) || !all_digits(frac)) {
        throw fail("malformed decimal");
      }
      den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
      num = digits(whole) * den + digits(frac);
    } else {
      if (text.empty() || !all_digits(text)) throw fail("expected an integer, decimal or n/d");
      num = digits(text);
    }
    if (negative) num = -num;
    return {std::move(num), std::move(den)};
  }

  const BigInt& numerator() const noexcept { return num_; }
  const BigInt& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return num_.sign(); }

  Rational reciprocal() const {
    if (is_zero()) throw DivisionByZero();
    return {den_, num_};
  }

  Rational operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw DivisionByZero();
    return {a.num_ * b.den_, a.den_ * b.num_};
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Exact power by squaring. 0^0 throws IndeterminatePower.
  friend Rational pow(const Rational& base, std::uint64_t exponent) {
    if (exponent == 0) {
      if (base.is_zero()) throw IndeterminatePower();
      return Rational(1);
    }
    // Powers of a reduced fraction stay reduced.
    Rational r;
    r.num_ = boost::multiprecision::pow(base.num_, static_cast<unsigned>(exponent));
    r.den_ = boost::multiprecision::pow(base.den_, static_cast<unsigned>(exponent));
    return r;
  }

  /// Nearest double, ties to even; subnormal results are rounded once, at
  /// their reduced precision. Throws RangeError when the value overflows.
  double to_double() const {
    if (is_zero()) return 0.0;
    const bool negative = num_ < 0;
    const BigInt n = negative ? BigInt(-num_) : num_;

    // Exponent of the leading bit: value lies in [2^e, 2^(e+1)).
    const long long nbits = static_cast<long long>(boost::multiprecision::msb(n));
    const long long dbits = static_cast<long long>(boost::multiprecision::msb(den_));
    long long e = nbits - dbits;
    {
      const BigInt lhs = e < 0 ? BigInt(n << static_cast<unsigned>(-e)) : n;
      const BigInt rhs = e > 0 ? BigInt(den_ << static_cast<unsigned>(e)) : den_;
      if (lhs < rhs) --e;
    }
    if (e > 1023) throw RangeError("rational " + str() + " overflows double");

    const long long shift = e >= -1022 ? 52 - e : 1074;
    BigInt scaled_num = n;
    BigInt scaled_den = den_;
    if (shift >= 0) {
      scaled_num <<= static_cast<unsigned>(shift);
    } else {
      scaled_den <<= static_cast<unsigned>(-shift);
    }
    BigInt q;
    BigInt r;
    boost::multiprecision::divide_qr(scaled_num, scaled_den, q, r);
    const BigInt twice = r * 2;
    if (twice > scaled_den || (twice == scaled_den && boost::multiprecision::bit_test(q, 0))) {
      ++q;
    }
    const double result = std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
    if (std::isinf(result)) throw RangeError("rational " + str() + " overflows double");
    return negative ? -result : result;
  }

  /// Canonical `num/den`, including `/1` for integers.
  std::string str() const { return num_.str() + "/" + den_.str(); }

  /// User-facing form: integers print without the `/1` suffix.
  std::string display() const { return is_integer() ? num_.str() : str(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_ = 0;
  BigInt den_ = 1;
};

inline double to_double(const Rational& r) { return r.to_double(); }

}  // namespace credit

#endif  // CREDIT_RATIONAL_HPP
