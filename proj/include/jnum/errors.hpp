#pragma once

#include <stdexcept>
#include <string>

namespace jnum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a data invariant. `label()` names the
// offending prime when there is one.
class ConsistencyError : public Error {
 public:
  ConsistencyError(const std::string& what, std::string label = {})
      : Error(label.empty() ? what : what + " [" + label + "]"), label_(std::move(label)) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label)
      : Error("unknown prime divisor label: " + label), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class AsymmetricMatrix : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class PositiveSelfIntersection : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

class DTooSmall : public Error {
 public:
  using Error::Error;
};

class NoPositiveMultiplicity : public Error {
 public:
  using Error::Error;
};

class NotACandidate : public Error {
 public:
  using Error::Error;
};

class InsufficientBaseWindow : public Error {
 public:
  using Error::Error;
};

class IterationCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace jnum
