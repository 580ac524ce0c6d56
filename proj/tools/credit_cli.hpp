#ifndef CREDIT_TOOLS_CREDIT_CLI_HPP
#define CREDIT_TOOLS_CREDIT_CLI_HPP

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "credit/corpus.hpp"
#include "credit/errors.hpp"
#include "credit/rational.hpp"
#include "credit/render.hpp"
#include "credit/scheme.hpp"
#include "credit/verify.hpp"
#include "credit/weights.hpp"

namespace credit::cli {

enum ExitCode : int { kSuccess = 0, kValidationError = 1, kIoError = 2 };

/// Bad flag value or flag combination; always exit status 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Corpus could not be read or parsed; always exit status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline Parameter flag_parameter(const std::string& text) {
  try {
    return parse_parameter(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--x: ") + e.what());
  }
}

inline SchemeSpec flag_scheme(const std::string& scheme, const std::optional<std::string>& x) {
  SchemeKind kind;
  try {
    kind = parse_scheme_kind(scheme);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--scheme: ") + e.what());
  }
  if (!x) return SchemeSpec(kind);
  return SchemeSpec(kind, flag_parameter(*x));
}

/// Table and figure derive the kind from x itself; x = 1 is shared by both.
inline SchemeSpec spec_for_parameter(const std::string& text) {
  const Parameter x = flag_parameter(text);
  const bool below_one = std::visit(
      [](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        return v < V(1);
      },
      x);
  return SchemeSpec::polynomial(below_one ? PolynomialKind::TypeI : PolynomialKind::TypeII, x);
}

inline void require_kmax(std::int64_t kmax) {
  if (kmax < 1) throw DomainError("--kmax must be >= 1, got " + std::to_string(kmax));
}

inline std::string strip_trailing(std::string line) {
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line;
}

template <Scalar T>
void print_weights(std::ostream& out, const WeightVector<T>& w, const std::string& format) {
  if (format == "json") {
    out << to_json(w).dump(2) << '\n';
  } else if (format == "tsv") {
    out << "j\tweight\n";
    for (std::int64_t j = 1; j <= w.k(); ++j) out << j << '\t' << format_value(w.weight(j)) << '\n';
  } else {
    for (std::int64_t j = 1; j <= w.k(); ++j) out << (j > 1 ? " " : "") << format_value(w.weight(j));
    out << '\n';
  }
}

template <Scalar T>
void print_table(std::ostream& out, const SchemeSpec& spec, std::int64_t kmax, const std::string& format) {
  std::vector<std::vector<std::string>> rows;
  for (std::int64_t k = 1; k <= kmax; ++k) {
    const auto w = compute_weights<T>(spec, k);
    std::vector<std::string> cells;
    for (const T& v : w.values()) cells.push_back(format_value(v));
    rows.push_back(std::move(cells));
  }

  if (format == "json") {
    nlohmann::json j_rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) j_rows.push_back({{"k", i + 1}, {"weights", rows[i]}});
    out << nlohmann::json{{"scheme", to_json(spec)}, {"k_max", kmax}, {"rows", std::move(j_rows)}}.dump(2)
        << '\n';
    return;
  }
  if (format == "tsv") {
    out << 'k';
    for (std::int64_t j = 1; j <= kmax; ++j) out << "\tw_" << j;
    out << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << i + 1;
      for (const auto& cell : rows[i]) out << '\t' << cell;
      out << '\n';
    }
    return;
  }

  // Text: space-aligned columns.
  std::vector<std::size_t> width(static_cast<std::size_t>(kmax) + 1, 0);
  width[0] = std::max<std::size_t>(1, std::to_string(kmax).size());
  for (std::int64_t j = 1; j <= kmax; ++j) width[static_cast<std::size_t>(j)] = 2 + std::to_string(j).size();
  for (const auto& cells : rows) {
    for (std::size_t j = 0; j < cells.size(); ++j) width[j + 1] = std::max(width[j + 1], cells[j].size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(w, s.size()), ' ');
    return s;
  };
  std::string header = pad("k", width[0]);
  for (std::int64_t j = 1; j <= kmax; ++j) {
    header += "  " + pad("w_" + std::to_string(j), width[static_cast<std::size_t>(j)]);
  }
  out << strip_trailing(header) << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line = std::to_string(i + 1);
    line.insert(0, width[0] - line.size(), ' ');
    for (std::size_t j = 0; j < rows[i].size(); ++j) line += "  " + pad(rows[i][j], width[j + 1]);
    out << strip_trailing(line) << '\n';
  }
}

template <Scalar T>
void print_figure(std::ostream& out, const SchemeSpec& spec, std::int64_t kmax, const std::string& format) {
  nlohmann::json j_rows = nlohmann::json::array();
  if (format != "json") out << "k\tw_first\tw_last\n";
  for (std::int64_t k = 1; k <= kmax; ++k) {
    const auto w = compute_weights<T>(spec, k);
    if (format == "json") {
      j_rows.push_back({{"k", k}, {"w_first", to_json_value(w.weight(1))}, {"w_last", to_json_value(w.weight(k))}});
    } else {
      out << k << '\t' << format_value(w.weight(1)) << '\t' << format_value(w.weight(k)) << '\n';
    }
  }
  if (format == "json") {
    out << nlohmann::json{{"scheme", to_json(spec)}, {"k_max", kmax}, {"series", std::move(j_rows)}}.dump(2)
        << '\n';
  }
}

template <Scalar T>
void print_report(std::ostream& out, const AuthorCreditReport<T>& report, const std::string& format) {
  if (format == "json") {
    out << to_json(report).dump(2) << '\n';
  } else {
    write_tsv(out, report);
  }
}

template <class Fn>
void with_backend(const SchemeSpec& spec, Fn&& fn) {
  if (spec.exact()) {
    fn(Rational{});
  } else {
    fn(0.0);
  }
}

inline std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

}  // namespace detail

/// Runs one command line (arguments after the program name). Results go to
/// `out`; every failure writes exactly one line to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const VerifyHooks& hooks = {}) {
  CLI::App app{"Author credit weights: polynomial (generalized geometric), equal, geometric, "
               "arithmetic and harmonic schemes",
               "credit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  const auto formats = CLI::IsMember({"text", "tsv", "json"});

  std::string format = "text";
  std::string scheme;
  std::optional<std::string> x;
  std::int64_t k = 0;
  std::int64_t kmax = 10;
  std::string table_x = "2";
  std::vector<std::string> verify_xs{"2", "1/2"};
  std::string input;

  auto* weights = app.add_subcommand("weights", "Print the weight vector for k authors");
  weights->add_option("--k", k, "Number of authors")->required();
  weights->add_option("--scheme", scheme, "poly1, poly2, equal, geometric, arithmetic or harmonic")->required();
  weights->add_option("--x", x, "Weight-control parameter: integer, decimal or num/den (polynomial schemes)");
  weights->add_option("--format", format)->check(formats);

  auto* table = app.add_subcommand("table", "Polynomial weights for k = 1..kmax (defaults: x = 2, kmax = 10)");
  table->add_option("--x", table_x, "Weight-control parameter")->capture_default_str();
  table->add_option("--kmax", kmax, "Largest author count")->capture_default_str();
  table->add_option("--format", format)->check(formats);

  auto* figure = app.add_subcommand("figure", "First- and last-author weight series for k = 1..kmax");
  figure->add_option("--x", table_x, "Weight-control parameter")->capture_default_str();
  figure->add_option("--kmax", kmax, "Largest author count")->capture_default_str();
  figure->add_option("--format", format)->check(formats);

  std::int64_t verify_kmax = 20;
  auto* verify = app.add_subcommand("verify", "Check the weight invariants over k = 1..kmax");
  verify->add_option("--kmax", verify_kmax, "Largest author count")->capture_default_str();
  verify->add_option("--x", verify_xs, "Weight-control parameter (repeatable)")->capture_default_str();

  auto* score = app.add_subcommand("score", "Aggregate per-author credit over a corpus CSV");
  score->add_option("input", input, "Corpus CSV (header paper_id,authors)")->required();
  score->add_option("--scheme", scheme, "poly1, poly2, equal, geometric, arithmetic or harmonic")->required();
  score->add_option("--x", x, "Weight-control parameter (polynomial schemes)");
  score->add_option("--format", format)->check(formats);

  std::vector<const char*> argv{"credit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << detail::one_line(e.what()) << '\n';
    return kValidationError;
  }

  try {
    if (*weights) {
      const SchemeSpec spec = detail::flag_scheme(scheme, x);
      std::visit([&](const auto& w) { detail::print_weights(out, w, format); }, compute_weights(spec, k));
    } else if (*table || *figure) {
      detail::require_kmax(kmax);
      const SchemeSpec spec = detail::spec_for_parameter(table_x);
      std::ostringstream buffer;
      detail::with_backend(spec, [&](auto tag) {
        using T = decltype(tag);
        if (*table) {
          detail::print_table<T>(buffer, spec, kmax, format);
        } else {
          detail::print_figure<T>(buffer, spec, kmax, format);
        }
      });
      out << buffer.str();
    } else if (*verify) {
      detail::require_kmax(verify_kmax);
      std::vector<Parameter> xs;
      for (const auto& text : verify_xs) xs.push_back(detail::flag_parameter(text));
      const auto results = verify_invariants(verify_kmax, xs, hooks);
      const CheckResult* first_failure = nullptr;
      for (const auto& r : results) {
        out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  (" << r.cases << " cases)";
        if (!r.detail.empty()) out << (r.passed ? "  note: " : "  counterexample: ") << r.detail;
        out << '\n';
        if (!r.passed && !first_failure) first_failure = &r;
      }
      if (first_failure) {
        err << "error: verification failed: " << first_failure->name << ": " << first_failure->detail << '\n';
        return kValidationError;
      }
    } else if (*score) {
      const SchemeSpec spec = detail::flag_scheme(scheme, x);
      std::ifstream file(input, std::ios::binary);
      if (!file) throw InputError("cannot open corpus '" + input + "'");
      std::vector<PublicationRecord> records;
      try {
        records = parse_corpus(file);
      } catch (const ParseError& e) {
        throw InputError(input + ": " + e.what());
      }
      std::ostringstream buffer;
      detail::with_backend(spec, [&](auto tag) {
        using T = decltype(tag);
        detail::print_report(buffer, score_corpus<T>(records, spec), format);
      });
      out << buffer.str();
    }
  } catch (const InputError& e) {
    err << "error: " << detail::one_line(e.what()) << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << detail::one_line(e.what()) << '\n';
    return kValidationError;
  }
  return kSuccess;
}

}  // namespace credit::cli

#endif  // CREDIT_TOOLS_CREDIT_CLI_HPP
