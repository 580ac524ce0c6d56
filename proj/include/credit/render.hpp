#ifndef CREDIT_RENDER_HPP
#define CREDIT_RENDER_HPP

#include <json.hpp>

#include <cstdio>
#include <ostream>
#include <string>
#include <variant>

#include "credit/corpus.hpp"
#include "credit/rational.hpp"
#include "credit/scheme.hpp"
#include "credit/weights.hpp"

namespace credit {

/// User-facing value text: `num/den` (integers bare) or 12 significant digits.
inline std::string format_value(const Rational& r) { return r.display(); }

inline std::string format_value(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", d);
  return buf;
}

inline nlohmann::json to_json_value(const Rational& r) { return r.display(); }
inline nlohmann::json to_json_value(double d) { return d; }

inline nlohmann::json to_json(const Parameter& p) {
  return std::visit([](const auto& v) { return to_json_value(v); }, p);
}

/// Scheme provenance block included in every JSON payload.
inline nlohmann::json to_json(const SchemeSpec& spec) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(spec.kind()));
  j["x"] = spec.x() ? to_json(*spec.x()) : nlohmann::json(nullptr);
  j["mode"] = spec.exact() ? "exact" : "float";
  if (is_comparison_scheme(spec.kind())) j["comparison_scheme"] = true;
  return j;
}

template <Scalar T>
nlohmann::json to_json(const WeightVector<T>& w) {
  nlohmann::json weights = nlohmann::json::array();
  for (const T& v : w.values()) weights.push_back(to_json_value(v));
  return {{"scheme", to_json(w.scheme())}, {"k", w.k()}, {"weights", std::move(weights)}};
}

template <Scalar T>
nlohmann::json to_json(const AuthorCreditReport<T>& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"author_id", e.author_id},
                       {"total_credit", to_json_value(e.total_credit)},
                       {"paper_count", e.paper_count}});
  }
  return {{"scheme", to_json(report.scheme)},
          {"record_count", report.record_count},
          {"entries", std::move(entries)}};
}

template <Scalar T>
void write_tsv(std::ostream& os, const AuthorCreditReport<T>& report) {
  os << "author_id\ttotal_credit\tpaper_count\n";
  for (const auto& e : report.entries) {
    os << e.author_id << '\t' << format_value(e.total_credit) << '\t' << e.paper_count << '\n';
  }
}

}  // namespace credit

#endif  // CREDIT_RENDER_HPP
