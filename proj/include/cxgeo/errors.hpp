#pragma once

#include <stdexcept>
#include <string>

namespace cxgeo {

// Coarse classification used by the CLI to pick an exit code.
enum class ErrorCategory { parse, domain, numerical, io };

class Error : public std::exception {
 public:
  Error(ErrorCategory category, std::string message)
      : category_(category), message_(std::move(message)) {}

  const char* what() const noexcept override { return message_.c_str(); }
  ErrorCategory category() const noexcept { return category_; }

  // Appends location info (e.g. the tau at which an integrator failed) and
  // keeps the dynamic type when rethrown with `throw;`.
  void add_context(const std::string& context) { message_ += " [" + context + "]"; }

 private:
  ErrorCategory category_;
  std::string message_;
};

#define CXGEO_DEFINE_ERROR(Name, Category)                               \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(std::string message)                                   \
        : Error(ErrorCategory::Category, #Name ": " + std::move(message)) {} \
  };

CXGEO_DEFINE_ERROR(DimensionMismatch, domain)
CXGEO_DEFINE_ERROR(NonHermitian, domain)
CXGEO_DEFINE_ERROR(NotPositiveDefinite, numerical)
CXGEO_DEFINE_ERROR(DomainError, domain)
CXGEO_DEFINE_ERROR(UnknownIdentifier, parse)
CXGEO_DEFINE_ERROR(IndexOutOfRange, parse)
CXGEO_DEFINE_ERROR(SingularMetric, numerical)
CXGEO_DEFINE_ERROR(StepFailure, numerical)
CXGEO_DEFINE_ERROR(NotContractive, numerical)
CXGEO_DEFINE_ERROR(NoConvergence, numerical)
CXGEO_DEFINE_ERROR(HypothesisViolation, domain)
CXGEO_DEFINE_ERROR(IncompatibleDimensions, domain)
CXGEO_DEFINE_ERROR(IoError, io)

#undef CXGEO_DEFINE_ERROR

class SingularMassMatrix : public Error {
 public:
  SingularMassMatrix(std::string message, double condition)
      : Error(ErrorCategory::numerical, "SingularMassMatrix: " + std::move(message) +
                                            " (condition estimate " + std::to_string(condition) + ")"),
        condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

// Position-annotated parse failure (expressions and scenario files).
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& message)
      : Error(ErrorCategory::parse, "SyntaxError at line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cxgeo
