#pragma once

#include <stdexcept>
#include <string>

namespace csd {

// Every library error carries a short machine-readable reason code
// (e.g. "c1-non-torsion") next to the human-readable message.
class Error : public std::runtime_error {
  public:
    Error(std::string reason, const std::string &message)
        : std::runtime_error(message), reason_(std::move(reason)) {}

    const std::string &reason() const noexcept { return reason_; }

  private:
    std::string reason_;
};

// Malformed input text. Line and column are 1-based.
class ParseError : public Error {
  public:
    ParseError(int line, int column, const std::string &message)
        : Error("parse-error", message), line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

  private:
    int line_;
    int column_;
};

// Structurally invalid diagrams (bad Morse words, inconsistent sizes).
class ValidationError : public Error {
  public:
    using Error::Error;
};

// A mathematical precondition does not hold (non-torsion c1, 0-surgery,
// unreachable d3 target, ...).
class MathError : public Error {
  public:
    using Error::Error;
};

} // namespace csd
