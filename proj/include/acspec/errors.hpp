#ifndef ACSPEC_ERRORS_HPP
#define ACSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace acspec {

/// Enumeration or spectrum request beyond a documented cap.
class SizeError : public std::runtime_error {
 public:
  explicit SizeError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data (depth sequences, residue counts, groupoid files).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Evaluation failure (missing assignment, domain violation).
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation not defined for this groupoid kind.
class UnsupportedKindError : public std::runtime_error {
 public:
  explicit UnsupportedKindError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Unknown catalog id.
class UnknownIdError : public std::runtime_error {
 public:
  explicit UnknownIdError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace acspec

#endif
