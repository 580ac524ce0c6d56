#ifndef CREDIT_ERRORS_HPP
#define CREDIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace credit {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (k < 1, x out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An author index outside 1..k.
class IndexError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// 0^0 is rejected rather than defined.
class IndeterminatePower : public Error {
 public:
  IndeterminatePower() : Error("indeterminate power 0^0") {}
};

/// A value does not fit the floating-point range (overflow, or a weight that underflows to 0).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input: a number literal, a CSV record, a flag value.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Corpus ingestion failure tied to one CSV record (header is row 1).
class CorpusError : public ParseError {
 public:
  CorpusError(std::size_t row, const std::string& cause)
      : ParseError("row " + std::to_string(row) + ": " + cause), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace credit

#endif  // CREDIT_ERRORS_HPP
