#pragma once

#include <stdexcept>
#include <string>

namespace qst {

// Coarse failure categories, mapped to CLI exit codes:
//   validation -> 2, numerical -> 3, schema -> 4.
enum class ErrorCategory { validation, numerical, schema };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

class BadDimension : public Error {
 public:
  explicit BadDimension(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

class BadRank : public Error {
 public:
  explicit BadRank(const std::string& what)
      : Error(ErrorCategory::validation, what) {}
};

class ZeroTrace : public Error {
 public:
  explicit ZeroTrace(const std::string& what)
      : Error(ErrorCategory::numerical, what) {}
};

class SingularTransfer : public Error {
 public:
  SingularTransfer(const std::string& what, double smallest_sv, double largest_sv)
      : Error(ErrorCategory::numerical, what),
        smallest_sv_(smallest_sv),
        largest_sv_(largest_sv) {}

  double smallest_singular_value() const { return smallest_sv_; }
  double largest_singular_value() const { return largest_sv_; }

 private:
  double smallest_sv_;
  double largest_sv_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what)
      : Error(ErrorCategory::schema, what) {}
};

}  // namespace qst
