#ifndef CREDIT_CORPUS_HPP
#define CREDIT_CORPUS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <iterator>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "credit/errors.hpp"
#include "credit/scheme.hpp"
#include "credit/weights.hpp"

namespace credit {

/// One paper: identifier plus authors in byline order (first element is the first author).
struct PublicationRecord {
  std::string paper_id;
  std::vector<std::string> authors;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

template <Scalar T>
struct AuthorCredit {
  std::string author_id;
  T total_credit;
  std::size_t paper_count = 0;

  friend bool operator==(const AuthorCredit&, const AuthorCredit&) = default;
};

/// Per-author credit over a corpus; entries sorted by credit descending, then author id.
template <Scalar T>
struct AuthorCreditReport {
  SchemeSpec scheme;
  std::size_t record_count = 0;
  std::vector<AuthorCredit<T>> entries;

  T total_credit() const {
    T total(0);
    for (const auto& e : entries) total += e.total_credit;
    return total;
  }
};

namespace detail {

/// Splits RFC-4180 text into records of fields. Quoted fields may contain
/// commas, doubled quotes and line breaks. A trailing line break does not
/// start a new record.
inline std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  std::size_t i = 0;
  const std::size_t n = text.size();
  const auto row = [&] { return records.size() + 1; };

  while (i < n) {
    if (text[i] == '"') {
      ++i;
      for (;;) {
        if (i >= n) throw CorpusError(row(), "unterminated quoted field");
        if (text[i] == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += text[i++];
      }
      if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        throw CorpusError(row(), "unexpected character after closing quote");
      }
    } else {
      while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        if (text[i] == '"') throw CorpusError(row(), "quote inside unquoted field");
        field += text[i++];
      }
    }

    fields.push_back(std::move(field));
    field.clear();
    if (i >= n) break;
    if (text[i] == ',') {
      ++i;
      if (i >= n) fields.emplace_back();  // "a," ends with an empty field
      continue;
    }
    // Line break: \n, \r\n or a lone \r.
    if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
    ++i;
    records.push_back(std::move(fields));
    fields.clear();
  }
  if (!fields.empty()) records.push_back(std::move(fields));
  return records;
}

inline std::vector<std::string> split_authors(const std::string& field, std::size_t row) {
  std::vector<std::string> authors;
  std::size_t start = 0;
  for (;;) {
    const auto bar = field.find('|', start);
    std::string author = field.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
    if (author.empty()) throw CorpusError(row, "empty author identifier");
    authors.push_back(std::move(author));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return authors;
}

}  // namespace detail

/// Checks the record invariants: non-empty id, at least one author, no empty or repeated author.
inline void validate_record(const PublicationRecord& record, std::size_t row = 0) {
  auto fail = [&](const std::string& cause) {
    if (row != 0) throw CorpusError(row, cause);
    throw DomainError("record '" + record.paper_id + "': " + cause);
  };
  if (record.paper_id.empty()) fail("empty paper_id");
  if (record.authors.empty()) fail("no authors");
  std::unordered_set<std::string_view> seen;
  for (const auto& a : record.authors) {
    if (a.empty()) fail("empty author identifier");
    if (!seen.insert(a).second) fail("duplicate author '" + a + "'");
  }
}

/// Reads a corpus CSV (header `paper_id,authors`, authors pipe-separated).
/// The whole input is rejected on the first bad row.
inline std::vector<PublicationRecord> parse_corpus(std::istream& source) {
  std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  if (source.bad()) throw ParseError("failed to read corpus");
  std::string_view view = text;
  if (view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);

  auto rows = detail::split_csv(view);
  while (rows.size() > 1 && rows.back() == std::vector<std::string>{""}) rows.pop_back();
  if (rows.empty()) throw CorpusError(1, "missing header 'paper_id,authors'");
  if (rows[0] != std::vector<std::string>{"paper_id", "authors"}) {
    throw CorpusError(1, "expected header 'paper_id,authors'");
  }

  std::vector<PublicationRecord> records;
  records.reserve(rows.size() - 1);
  std::set<std::string, std::less<>> ids;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const std::size_t row = r + 1;
    const auto& fields = rows[r];
    if (fields.size() != 2) {
      throw CorpusError(row, "expected 2 columns, found " + std::to_string(fields.size()));
    }
    PublicationRecord record{fields[0], detail::split_authors(fields[1], row)};
    validate_record(record, row);
    if (!ids.insert(record.paper_id).second) {
      throw CorpusError(row, "duplicate paper_id '" + record.paper_id + "'");
    }
    records.push_back(std::move(record));
  }
  return records;
}

/// Credits every author with their positional weight in each record and
/// aggregates. Records are visited in paper_id order so float sums do not
/// depend on input order.
template <Scalar T>
AuthorCreditReport<T> score_corpus(std::span<const PublicationRecord> records, const SchemeSpec& spec) {
  std::vector<const PublicationRecord*> order;
  order.reserve(records.size());
  std::set<std::string_view> ids;
  for (const auto& rec : records) {
    validate_record(rec);
    if (!ids.insert(rec.paper_id).second) {
      throw DomainError("duplicate paper_id '" + rec.paper_id + "'");
    }
    order.push_back(&rec);
  }
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return a->paper_id < b->paper_id; });

  struct Tally {
    T credit{0};
    std::size_t papers = 0;
  };
  std::map<std::int64_t, WeightVector<T>> by_size;
  std::map<std::string, Tally, std::less<>> tallies;
  for (const auto* rec : order) {
    const auto k = static_cast<std::int64_t>(rec->authors.size());
    auto it = by_size.find(k);
    if (it == by_size.end()) it = by_size.emplace(k, compute_weights<T>(spec, k)).first;
    const auto weights = it->second.values();
    for (std::size_t pos = 0; pos < rec->authors.size(); ++pos) {
      auto& tally = tallies[rec->authors[pos]];
      tally.credit += weights[pos];
      ++tally.papers;
    }
  }

  AuthorCreditReport<T> report{spec, records.size(), {}};
  report.entries.reserve(tallies.size());
  for (auto& [author, tally] : tallies) {
    report.entries.push_back({author, std::move(tally.credit), tally.papers});
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const auto& a, const auto& b) { return a.total_credit > b.total_credit; });
  return report;
}

}  // namespace credit

#endif  // CREDIT_CORPUS_HPP
