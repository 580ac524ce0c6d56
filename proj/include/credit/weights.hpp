#ifndef CREDIT_WEIGHTS_HPP
#define CREDIT_WEIGHTS_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "credit/errors.hpp"
#include "credit/rational.hpp"
#include "credit/scheme.hpp"

namespace credit {

inline Rational power(const Rational& base, std::uint64_t exponent) { return pow(base, exponent); }

inline double power(double base, std::uint64_t exponent) {
  return std::pow(base, static_cast<double>(exponent));
}

/// Ordered author weights for one paper. Index 1 is the first author.
template <Scalar T>
class WeightVector {
 public:
  WeightVector(std::vector<T> weights, SchemeSpec scheme)
      : weights_(std::move(weights)), scheme_(std::move(scheme)) {
    if (weights_.empty()) throw DomainError("a weight vector needs at least one author");
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      if constexpr (std::is_same_v<T, double>) {
        if (!std::isfinite(weights_[j]) || !(weights_[j] > 0.0)) {
          throw RangeError("weight w_" + std::to_string(j + 1) + " under " + to_string(scheme_) +
                           " is not representable as a positive double");
        }
      } else if (weights_[j].sign() <= 0) {
        throw DomainError("weight w_" + std::to_string(j + 1) + " is not positive");
      }
    }
  }

  std::int64_t k() const noexcept { return static_cast<std::int64_t>(weights_.size()); }

  /// 1-based access: weight(1) is the first author.
  const T& weight(std::int64_t j) const {
    if (j < 1 || j > k()) {
      throw IndexError("author index " + std::to_string(j) + " outside 1.." + std::to_string(k()));
    }
    return weights_[static_cast<std::size_t>(j - 1)];
  }

  std::span<const T> values() const noexcept { return weights_; }
  const SchemeSpec& scheme() const noexcept { return scheme_; }

  T sum() const {
    T total(0);
    for (const T& w : weights_) total += w;
    return total;
  }

 private:
  std::vector<T> weights_;
  SchemeSpec scheme_;
};

namespace detail {

inline void require_authors(std::int64_t k) {
  if (k < 1) throw DomainError("author count k must be >= 1, got " + std::to_string(k));
}

template <Scalar T>
Parameter to_parameter(const T& x) {
  return Parameter(x);
}

template <Scalar T>
int compare_one(const T& x) {
  if (x < T(1)) return -1;
  if (x > T(1)) return 1;
  return 0;
}

/// x^0, x^1, ..., x^(k-1) by repeated multiplication.
template <Scalar T>
std::vector<T> ascending_powers(std::int64_t k, const T& x) {
  std::vector<T> powers;
  powers.reserve(static_cast<std::size_t>(k));
  T p(1);
  for (std::int64_t i = 0; i < k; ++i) {
    if (i > 0) p *= x;
    powers.push_back(p);
  }
  return powers;
}

template <Scalar T>
T sum_of(const std::vector<T>& terms) {
  T total(0);
  for (const T& t : terms) total += t;
  return total;
}

template <Scalar T>
std::vector<T> normalized(std::vector<T> terms) {
  const T total = sum_of(terms);
  for (T& t : terms) t /= total;
  return terms;
}

}  // namespace detail

/// Type-I weights w_j = x^(j-1) / sum_{i=1..k} x^(i-1), for 0 < x <= 1.
template <Scalar T>
WeightVector<T> polynomial_type1_weights(std::int64_t k, const T& x) {
  detail::require_authors(k);
  SchemeSpec spec(SchemeKind::PolynomialTypeI, detail::to_parameter(x));
  if (k == 1) return {{T(1)}, std::move(spec)};
  return {detail::normalized(detail::ascending_powers(k, x)), std::move(spec)};
}

/// Type-II weights w_j = x^(k-j) / sum_{i=1..k} x^(i-1), for x >= 1.
template <Scalar T>
WeightVector<T> polynomial_type2_weights(std::int64_t k, const T& x) {
  detail::require_authors(k);
  SchemeSpec spec(SchemeKind::PolynomialTypeII, detail::to_parameter(x));
  if (k == 1) return {{T(1)}, std::move(spec)};
  auto powers = detail::ascending_powers(k, x);
  const T denominator = detail::sum_of(powers);
  std::vector<T> weights(powers.rbegin(), powers.rend());
  for (T& w : weights) w /= denominator;
  return {std::move(weights), std::move(spec)};
}

template <Scalar T = Rational>
WeightVector<T> equal_weights(std::int64_t k) {
  detail::require_authors(k);
  return {std::vector<T>(static_cast<std::size_t>(k), T(1) / T(k)), SchemeSpec(SchemeKind::Equal)};
}

/// w_j = 2^(k-j) / (2^k - 1).
template <Scalar T = Rational>
WeightVector<T> geometric_weights(std::int64_t k) {
  detail::require_authors(k);
  const auto n = static_cast<std::uint64_t>(k);
  const T denominator = power(T(2), n) - T(1);
  std::vector<T> weights;
  weights.reserve(n);
  for (std::uint64_t j = 1; j <= n; ++j) weights.push_back(power(T(2), n - j) / denominator);
  return {std::move(weights), SchemeSpec(SchemeKind::Geometric)};
}

/// Proportional weights, w_j = 2(k+1-j) / (k(k+1)).
template <Scalar T = Rational>
WeightVector<T> arithmetic_weights(std::int64_t k) {
  detail::require_authors(k);
  const T denominator = T(k) * T(k + 1);
  std::vector<T> weights;
  weights.reserve(static_cast<std::size_t>(k));
  for (std::int64_t j = 1; j <= k; ++j) weights.push_back(T(2 * (k + 1 - j)) / denominator);
  return {std::move(weights), SchemeSpec(SchemeKind::Arithmetic)};
}

/// w_j = (1/j) / H_k.
template <Scalar T = Rational>
WeightVector<T> harmonic_weights(std::int64_t k) {
  detail::require_authors(k);
  std::vector<T> terms;
  terms.reserve(static_cast<std::size_t>(k));
  for (std::int64_t j = 1; j <= k; ++j) terms.push_back(T(1) / T(j));
  return {detail::normalized(std::move(terms)), SchemeSpec(SchemeKind::Harmonic)};
}

/// Dispatches on the scheme kind; the result carries `spec` as provenance.
template <Scalar T>
WeightVector<T> compute_weights(const SchemeSpec& spec, std::int64_t k) {
  switch (spec.kind()) {
    case SchemeKind::PolynomialTypeI: {
      auto w = polynomial_type1_weights(k, parameter_as<T>(*spec.x()));
      return {std::vector<T>(w.values().begin(), w.values().end()), spec};
    }
    case SchemeKind::PolynomialTypeII: {
      auto w = polynomial_type2_weights(k, parameter_as<T>(*spec.x()));
      return {std::vector<T>(w.values().begin(), w.values().end()), spec};
    }
    case SchemeKind::Equal: return equal_weights<T>(k);
    case SchemeKind::Geometric: return geometric_weights<T>(k);
    case SchemeKind::Arithmetic: return arithmetic_weights<T>(k);
    case SchemeKind::Harmonic: return harmonic_weights<T>(k);
  }
  throw DomainError("unknown scheme kind");
}

using AnyWeightVector = std::variant<WeightVector<Rational>, WeightVector<double>>;

/// Picks the backend from the spec: exact unless x was given in float form.
inline AnyWeightVector compute_weights(const SchemeSpec& spec, std::int64_t k) {
  if (spec.exact()) return compute_weights<Rational>(spec, k);
  return compute_weights<double>(spec, k);
}

/// Closed form of a single polynomial weight:
///   Type-II  x^(k-j) (x-1) / (x^k - 1)
///   Type-I   x^(j-1) (1-x) / (1 - x^k)
/// Singular at x = 1, which is rejected; use the summation form there.
template <Scalar T>
T polynomial_weight_closed_form(std::int64_t k, std::int64_t j, const T& x, PolynomialKind kind) {
  detail::require_authors(k);
  detail::check_polynomial_domain(kind, detail::to_parameter(x));
  if (j < 1 || j > k) {
    throw IndexError("author index " + std::to_string(j) + " outside 1.." + std::to_string(k));
  }
  if (detail::compare_one(x) == 0) {
    throw DomainError("closed form is singular at x = 1; use the summation form");
  }
  const auto uk = static_cast<std::uint64_t>(k);
  const auto uj = static_cast<std::uint64_t>(j);
  if (kind == PolynomialKind::TypeII) {
    return power(x, uk - uj) * (x - T(1)) / (power(x, uk) - T(1));
  }
  return power(x, uj - 1) * (T(1) - x) / (T(1) - power(x, uk));
}

/// w_1 / w_k taken from the weight vector. Equals x^(k-1) for Type-II and
/// (1/x)^(k-1) for Type-I, since the common normalizer cancels.
template <Scalar T>
T first_last_ratio(std::int64_t k, const T& x, PolynomialKind kind) {
  detail::require_authors(k);
  detail::check_polynomial_domain(kind, detail::to_parameter(x));
  if (detail::compare_one(x) == 0) {
    throw DomainError("first/last ratio is only defined for x != 1");
  }
  const auto w = kind == PolynomialKind::TypeI ? polynomial_type1_weights(k, x)
                                               : polynomial_type2_weights(k, x);
  return w.weight(1) / w.weight(k);
}

/// x -> 1/x, which maps Type-I parameters onto Type-II parameters and back.
template <Scalar T>
T dual_parameter(const T& x) {
  if (!(x > T(0))) throw DomainError("dual parameter needs x > 0");
  return T(1) / x;
}

}  // namespace credit

#endif  // CREDIT_WEIGHTS_HPP
