#ifndef CREDIT_SCHEME_HPP
#define CREDIT_SCHEME_HPP

#include <charconv>
#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <variant>

#include "credit/errors.hpp"
#include "credit/rational.hpp"

namespace credit {

/// The two numeric backends every scheme runs on.
template <class T>
concept Scalar = std::same_as<T, Rational> || std::same_as<T, double>;

/// Weight-control parameter: exact when given as a fraction, float otherwise.
using Parameter = std::variant<Rational, double>;

enum class SchemeKind { PolynomialTypeI, PolynomialTypeII, Equal, Geometric, Arithmetic, Harmonic };

enum class PolynomialKind { TypeI, TypeII };

inline constexpr SchemeKind kAllSchemeKinds[] = {
    SchemeKind::PolynomialTypeI, SchemeKind::PolynomialTypeII, SchemeKind::Equal,
    SchemeKind::Geometric,       SchemeKind::Arithmetic,       SchemeKind::Harmonic};

inline std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::PolynomialTypeI: return "poly1";
    case SchemeKind::PolynomialTypeII: return "poly2";
    case SchemeKind::Equal: return "equal";
    case SchemeKind::Geometric: return "geometric";
    case SchemeKind::Arithmetic: return "arithmetic";
    case SchemeKind::Harmonic: return "harmonic";
  }
  return "unknown";
}

inline SchemeKind parse_scheme_kind(std::string_view name) {
  for (SchemeKind kind : kAllSchemeKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw ParseError("unknown scheme '" + std::string(name) +
                   "' (expected poly1, poly2, equal, geometric, arithmetic or harmonic)");
}

inline bool is_polynomial(SchemeKind kind) {
  return kind == SchemeKind::PolynomialTypeI || kind == SchemeKind::PolynomialTypeII;
}

/// Arithmetic and harmonic weights follow the standard literature formulas
/// and are only carried for comparison.
inline bool is_comparison_scheme(SchemeKind kind) {
  return kind == SchemeKind::Arithmetic || kind == SchemeKind::Harmonic;
}

inline SchemeKind to_scheme_kind(PolynomialKind kind) {
  return kind == PolynomialKind::TypeI ? SchemeKind::PolynomialTypeI
                                       : SchemeKind::PolynomialTypeII;
}

inline double to_double(double v) { return v; }

template <Scalar T>
T parameter_as(const Parameter& p) {
  if constexpr (std::is_same_v<T, double>) {
    return std::visit([](const auto& v) { return to_double(v); }, p);
  } else {
    if (const auto* r = std::get_if<Rational>(&p)) return *r;
    return Rational::from_double(std::get<double>(p));
  }
}

inline std::string parameter_string(const Parameter& p) {
  if (const auto* r = std::get_if<Rational>(&p)) return r->display();
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, std::get<double>(p));
  return std::string(buf, res.ptr);
}

namespace detail {

inline void check_polynomial_domain(PolynomialKind kind, const Parameter& x) {
  const auto describe = [&] { return parameter_string(x); };
  if (const auto* d = std::get_if<double>(&x); d && !std::isfinite(*d)) {
    throw DomainError("weight-control parameter must be finite, got " + describe());
  }
  const auto cmp_one = std::visit(
      [](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return v < 1.0 ? -1 : (v > 1.0 ? 1 : 0);
        } else {
          const auto c = v <=> Rational(1);
          return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
      },
      x);
  const bool positive = std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, double>) {
          return v > 0.0;
        } else {
          return v.sign() > 0;
        }
      },
      x);
  if (kind == PolynomialKind::TypeI) {
    if (!positive || cmp_one > 0) {
      throw DomainError("Type-I polynomial weights require 0 < x <= 1, got x = " + describe());
    }
  } else if (cmp_one < 0) {
    throw DomainError("Type-II polynomial weights require x >= 1, got x = " + describe());
  }
}

}  // namespace detail

/// A scheme together with its weight-control parameter; validated on construction.
class SchemeSpec {
 public:
  SchemeSpec(SchemeKind kind, std::optional<Parameter> x = std::nullopt)
      : kind_(kind), x_(std::move(x)) {
    if (is_polynomial(kind_)) {
      if (!x_) {
        throw DomainError(std::string(to_string(kind_)) + " requires a weight-control parameter x");
      }
      detail::check_polynomial_domain(polynomial_kind(), *x_);
    } else if (x_) {
      throw DomainError(std::string(to_string(kind_)) + " takes no weight-control parameter");
    }
  }

  static SchemeSpec polynomial(PolynomialKind kind, Parameter x) {
    return {to_scheme_kind(kind), std::move(x)};
  }

  SchemeKind kind() const noexcept { return kind_; }
  const std::optional<Parameter>& x() const noexcept { return x_; }

  PolynomialKind polynomial_kind() const {
    if (kind_ == SchemeKind::PolynomialTypeI) return PolynomialKind::TypeI;
    if (kind_ == SchemeKind::PolynomialTypeII) return PolynomialKind::TypeII;
    throw DomainError(std::string(to_string(kind_)) + " is not a polynomial scheme");
  }

  /// Exact backend unless the parameter was supplied in float form.
  bool exact() const noexcept { return !x_ || std::holds_alternative<Rational>(*x_); }

  friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;

 private:
  SchemeKind kind_;
  std::optional<Parameter> x_;
};

inline std::string to_string(const SchemeSpec& spec) {
  std::string s(to_string(spec.kind()));
  if (spec.x()) s += " x=" + parameter_string(*spec.x());
  return s;
}

/// Reads a weight-control parameter literal.
///
/// `n` and `n/d` are exact. A plain decimal with at most six fractional
/// digits is the exact fraction it denotes (`0.5` -> 1/2); longer decimals
/// and exponent notation select the float backend.
inline Parameter parse_parameter(std::string_view text) {
  constexpr std::size_t kMaxExactDecimals = 6;
  if (text.empty()) throw ParseError("empty parameter value");
  const bool plain = text.find_first_of("eEnNiI") == std::string_view::npos;
  const auto dot = text.find('.');
  if (plain && (dot == std::string_view::npos || text.size() - dot - 1 <= kMaxExactDecimals)) {
    return Rational::parse(text);
  }
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("invalid parameter value '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace credit

#endif  // CREDIT_SCHEME_HPP
