#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dualcalc {

// Stable codes; the CLI prints these verbatim in json mode.
enum class ErrorCode {
  non_finite,
  zero_divisor,
  invalid_interval,
  invalid_partition,
  domain,
  syntax,
  max_depth_exceeded,
  invalid_epsilon,
  precondition_failed,
  invalid_argument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NonFiniteError : public Error {
 public:
  explicit NonFiniteError(const std::string& what) : Error(ErrorCode::non_finite, what) {}
};

class ZeroDivisorError : public Error {
 public:
  explicit ZeroDivisorError(const std::string& what) : Error(ErrorCode::zero_divisor, what) {}
};

class InvalidIntervalError : public Error {
 public:
  explicit InvalidIntervalError(const std::string& what)
      : Error(ErrorCode::invalid_interval, what) {}
};

class InvalidPartitionError : public Error {
 public:
  explicit InvalidPartitionError(const std::string& what)
      : Error(ErrorCode::invalid_partition, what) {}
};

/// Evaluation left the domain of a sub-expression (log of Re <= 0, division by a
/// zero-divisor, ...). `subexpression()` holds the printed offending node.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::string subexpression)
      : Error(ErrorCode::domain, what), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(ErrorCode::syntax, message + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class InvalidEpsilonError : public Error {
 public:
  explicit InvalidEpsilonError(const std::string& what) : Error(ErrorCode::invalid_epsilon, what) {}
};

class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(const std::string& what)
      : Error(ErrorCode::precondition_failed, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::invalid_argument, what) {}
};

}  // namespace dualcalc
