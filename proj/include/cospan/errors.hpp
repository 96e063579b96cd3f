#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cospan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// finset

class MismatchedSets : public Error {
 public:
  using Error::Error;
};

class InvalidSet : public Error {
 public:
  using Error::Error;
};

// opennet

class MismatchedBoundary : public Error {
 public:
  using Error::Error;
};

class InvalidNet : public Error {
 public:
  using Error::Error;
};

/// Raised when an exact isomorphism search would exceed its size bound.
class TooLarge : public Error {
 public:
  using Error::Error;
};

// morphexpr

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, std::string token,
              const std::string &reason);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string &token() const { return token_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

class UnboundGenerator : public Error {
 public:
  explicit UnboundGenerator(std::string name);
  const std::string &name() const { return name_; }

 private:
  std::string name_;
};

class BoundaryMismatch : public Error {
 public:
  BoundaryMismatch(std::string expected, std::string found,
                   std::string subexpression);

  const std::string &expected() const { return expected_; }
  const std::string &found() const { return found_; }
  const std::string &subexpression() const { return subexpression_; }

 private:
  std::string expected_;
  std::string found_;
  std::string subexpression_;
};

// dynamics

class UnboundRate : public Error {
 public:
  explicit UnboundRate(std::string name);
  const std::string &name() const { return name_; }

 private:
  std::string name_;
};

class MarkingMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class NonFiniteState : public Error {
 public:
  explicit NonFiniteState(double time);
  double time() const { return time_; }

 private:
  double time_;
};

// modelio

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string &reason);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string entity, const std::string &reason);
  const std::string &entity() const { return entity_; }

 private:
  std::string entity_;
};

}  // namespace cospan
