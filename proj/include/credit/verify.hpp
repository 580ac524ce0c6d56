#ifndef CREDIT_VERIFY_HPP
#define CREDIT_VERIFY_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "credit/rational.hpp"
#include "credit/scheme.hpp"
#include "credit/weights.hpp"

namespace credit {

/// Outcome of one named invariant over every (k, x) case it covered.
struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first counterexample, or a note
};

/// Hooks that rewrite polynomial weight vectors before they are checked.
/// Used to confirm the suite catches faults.
struct VerifyHooks {
  std::function<void(PolynomialKind, std::vector<Rational>&)> mutate_exact;
  std::function<void(PolynomialKind, std::vector<double>&)> mutate_float;
};

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kElementTolerance = 1e-12;
inline constexpr double kRatioRelativeTolerance = 1e-9;

namespace detail {

class CheckTable {
 public:
  CheckResult& operator[](const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, results_.size());
    if (inserted) results_.push_back(CheckResult{name, true, 0, {}});
    return results_[it->second];
  }

  void pass(const std::string& name) { ++(*this)[name].cases; }

  void fail(const std::string& name, const std::string& why) {
    auto& r = (*this)[name];
    ++r.cases;
    if (r.passed) {
      r.passed = false;
      r.detail = why;
    }
  }

  void record(const std::string& name, bool ok, const std::function<std::string()>& why) {
    ok ? pass(name) : fail(name, why());
  }

  void note(const std::string& name, const std::string& text) {
    auto& r = (*this)[name];
    if (r.passed && r.detail.empty()) r.detail = text;
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<CheckResult> results_;
};

template <Scalar T>
std::string show(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return v.display();
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
}

template <Scalar T>
bool same_value(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, Rational>) {
    return a == b;
  } else {
    return std::fabs(a - b) <= kElementTolerance;
  }
}

/// Float closed form loses accuracy as x^k - 1 approaches 0, so its
/// tolerance grows with the conditioning of that denominator.
template <Scalar T>
bool closed_form_matches(const T& closed, const T& summed, std::int64_t k, const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return closed == summed;
  } else {
    const double xk = power(x, static_cast<std::uint64_t>(k));
    const double cond = 64.0 * static_cast<double>(k) * std::numeric_limits<double>::epsilon() *
                        std::fmax(xk, 1.0) / std::fabs(xk - 1.0);
    return std::fabs(closed - summed) <= kElementTolerance + cond * std::fabs(summed);
  }
}

template <Scalar T>
bool sums_to_one(const T& sum) {
  if constexpr (std::is_same_v<T, Rational>) {
    return sum == Rational(1);
  } else {
    return std::fabs(sum - 1.0) < kNormalizationTolerance;
  }
}

template <Scalar T>
bool ratio_matches(const T& got, const T& expected) {
  if constexpr (std::is_same_v<T, Rational>) {
    return got == expected;
  } else {
    return std::fabs(got - expected) <= kRatioRelativeTolerance * std::fabs(expected);
  }
}

template <Scalar T>
std::vector<T> hooked(PolynomialKind kind, const WeightVector<T>& w, const VerifyHooks& hooks) {
  std::vector<T> values(w.values().begin(), w.values().end());
  if constexpr (std::is_same_v<T, Rational>) {
    if (hooks.mutate_exact) hooks.mutate_exact(kind, values);
  } else {
    if (hooks.mutate_float) hooks.mutate_float(kind, values);
  }
  return values;
}

template <Scalar T>
std::string vector_text(const std::vector<T>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + show(v[i]);
  return s + "]";
}

template <Scalar T>
void check_shape(CheckTable& table, const std::string& label, const std::vector<T>& w,
                 bool expect_equal) {
  T sum(0);
  for (const T& v : w) sum += v;
  const auto k = w.size();
  table.record("normalization", sums_to_one(sum), [&] {
    return label + " k=" + std::to_string(k) + ": sum of weights = " + show(sum);
  });

  bool ok = true;
  std::size_t bad = 0;
  for (std::size_t j = 0; j + 1 < k && ok; ++j) {
    ok = expect_equal ? w[j] == w[j + 1] : w[j] > w[j + 1];
    bad = j + 1;
  }
  table.record("monotonicity", ok, [&] {
    return label + " k=" + std::to_string(k) + ": w_" + std::to_string(bad) + " = " +
           show(w[bad - 1]) + ", w_" + std::to_string(bad + 1) + " = " + show(w[bad]) +
           (expect_equal ? " (expected equal)" : " (expected strictly decreasing)");
  });
}

template <Scalar T>
void check_parameter(CheckTable& table, std::int64_t kmax, const T& x, const VerifyHooks& hooks) {
  // Work from the dual pair (q >= 1, 1/q <= 1) so each x exercises both kinds.
  const T q = x >= T(1) ? x : dual_parameter(x);
  const T qi = dual_parameter(q);
  const bool fixed_point = q == T(1);
  const std::string xs = show(x);

  for (std::int64_t k = 1; k <= kmax; ++k) {
    const std::string ks = std::to_string(k);
    const auto type2 = hooked(PolynomialKind::TypeII, polynomial_type2_weights(k, q), hooks);
    const auto type1 = hooked(PolynomialKind::TypeI, polynomial_type1_weights(k, qi), hooks);

    check_shape(table, "poly2 x=" + show(q), type2, fixed_point);
    check_shape(table, "poly1 x=" + show(qi), type1, fixed_point);

    bool dual_ok = type1.size() == type2.size();
    std::size_t bad = 0;
    for (std::size_t j = 0; dual_ok && j < type1.size(); ++j) {
      dual_ok = same_value(type1[j], type2[j]);
      bad = j;
    }
    table.record("duality", dual_ok, [&] {
      return "k=" + ks + " q=" + show(q) + ": poly1(1/q) w_" + std::to_string(bad + 1) + " = " +
             show(type1[bad]) + " but poly2(q) w_" + std::to_string(bad + 1) + " = " +
             show(type2[bad]);
    });

    if (fixed_point) continue;

    const T expected = power(q, static_cast<std::uint64_t>(k - 1));
    const T r2 = type2.front() / type2.back();
    table.record("ratio_law", ratio_matches(r2, expected), [&] {
      return "poly2 k=" + ks + " x=" + show(q) + ": w_1/w_k = " + show(r2) + ", expected x^(k-1) = " +
             show(expected);
    });
    const T r1 = type1.front() / type1.back();
    table.record("ratio_law", ratio_matches(r1, expected), [&] {
      return "poly1 k=" + ks + " x=" + show(qi) + ": w_1/w_k = " + show(r1) +
             ", expected (1/x)^(k-1) = " + show(expected);
    });

    for (std::int64_t j = 1; j <= k; ++j) {
      const auto idx = static_cast<std::size_t>(j - 1);
      const T c2 = polynomial_weight_closed_form(k, j, q, PolynomialKind::TypeII);
      table.record("closed_form", closed_form_matches(c2, type2[idx], k, q), [&] {
        return "poly2 k=" + ks + " j=" + std::to_string(j) + " x=" + show(q) + ": closed form " +
               show(c2) + " vs summation " + show(type2[idx]);
      });
      const T c1 = polynomial_weight_closed_form(k, j, qi, PolynomialKind::TypeI);
      table.record("closed_form", closed_form_matches(c1, type1[idx], k, qi), [&] {
        return "poly1 k=" + ks + " j=" + std::to_string(j) + " x=" + show(qi) + ": closed form " +
               show(c1) + " vs summation " + show(type1[idx]);
      });
    }
  }
  if (fixed_point) {
    table.note("duality", "x=" + xs + " is the self-dual fixed point (1/x = x)");
    table.note("ratio_law", "skipped for x=" + xs + " (ratio law needs x != 1)");
    table.note("closed_form", "skipped for x=" + xs + " (closed form is singular at x = 1)");
  }
}

inline void check_fixed_schemes(CheckTable& table, std::int64_t kmax, const VerifyHooks& hooks) {
  for (std::int64_t k = 1; k <= kmax; ++k) {
    const std::string ks = std::to_string(k);
    const auto equal = equal_weights(k);
    const std::vector<Rational> eq(equal.values().begin(), equal.values().end());
    const auto geometric = geometric_weights(k);
    const std::vector<Rational> geo(geometric.values().begin(), geometric.values().end());
    const auto arithmetic = arithmetic_weights(k);
    const auto harmonic = harmonic_weights(k);

    check_shape(table, "equal", eq, true);
    check_shape(table, "geometric", geo, k > 1 ? false : true);
    check_shape(table, "arithmetic",
                std::vector<Rational>(arithmetic.values().begin(), arithmetic.values().end()), false);
    check_shape(table, "harmonic",
                std::vector<Rational>(harmonic.values().begin(), harmonic.values().end()), false);

    const auto p1 = hooked(PolynomialKind::TypeI, polynomial_type1_weights(k, Rational(1)), hooks);
    const auto p2 = hooked(PolynomialKind::TypeII, polynomial_type2_weights(k, Rational(1)), hooks);
    table.record("equal_limit", p1 == eq && p2 == eq, [&] {
      return "k=" + ks + ": poly1(1) = " + vector_text(p1) + ", poly2(1) = " + vector_text(p2) +
             ", equal = " + vector_text(eq);
    });

    const auto g2 = hooked(PolynomialKind::TypeII, polynomial_type2_weights(k, Rational(2)), hooks);
    table.record("geometric_specialization", g2 == geo, [&] {
      return "k=" + ks + ": poly2(2) = " + vector_text(g2) + ", geometric = " + vector_text(geo);
    });
  }
}

}  // namespace detail

/// Runs the invariant suite (normalization, monotonicity, duality, ratio law,
/// closed form, equal-weight limit, geometric specialization) over k = 1..kmax
/// and every parameter in `xs`. Results come back in a fixed check order.
inline std::vector<CheckResult> verify_invariants(std::int64_t kmax, std::span<const Parameter> xs,
                                                  const VerifyHooks& hooks = {}) {
  detail::require_authors(kmax);
  detail::CheckTable table;
  for (const char* name : {"normalization", "monotonicity", "duality", "ratio_law", "closed_form",
                           "equal_limit", "geometric_specialization"}) {
    table[name];
  }
  detail::check_fixed_schemes(table, kmax, hooks);
  for (const Parameter& x : xs) {
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if (!(v > V(0))) throw DomainError("verify needs x > 0, got " + parameter_string(x));
          if constexpr (std::is_same_v<V, double>) {
            if (!std::isfinite(v)) throw DomainError("verify needs a finite x");
          }
          detail::check_parameter(table, kmax, v, hooks);
        },
        x);
  }
  return table.take();
}

inline bool all_passed(std::span<const CheckResult> results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace credit

#endif  // CREDIT_VERIFY_HPP
