#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace cmgeval {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The reference side of a pair is empty.
class InvalidReferenceError : public Error {
 public:
  using Error::Error;
};

/// A metric is mathematically undefined for the input (e.g. ROUGE-2 on a one-token reference).
class UndefinedScoreError : public Error {
 public:
  using Error::Error;
};

/// A precondition on arguments or parameters was violated.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Rank correlation is undefined (a constant input vector).
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

/// A data file failed validation. Carries the offending line number and/or record id.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::optional<std::size_t> line = std::nullopt,
                  std::optional<std::string> record_id = std::nullopt)
      : Error(what), line_(line), record_id_(std::move(record_id)) {}

  const std::optional<std::size_t>& line() const noexcept { return line_; }
  const std::optional<std::string>& record_id() const noexcept { return record_id_; }

 private:
  std::optional<std::size_t> line_;
  std::optional<std::string> record_id_;
};

/// A file could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cmgeval
