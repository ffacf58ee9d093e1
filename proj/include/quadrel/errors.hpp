#pragma once

#include <stdexcept>
#include <string>

namespace quadrel {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// A stated hypothesis of an operation does not hold; carries the name of
/// the violated property.
class PreconditionFailed : public Error {
 public:
  PreconditionFailed(const std::string& property, const std::string& what)
      : Error(what), property_(property) {}
  const std::string& property() const { return property_; }

 private:
  std::string property_;
};

class NotAnIrreflexiveCollusion : public PreconditionFailed {
 public:
  explicit NotAnIrreflexiveCollusion(const std::string& property)
      : PreconditionFailed(property,
                           "relation is not an irreflexive collusion: not " +
                               property) {}
};

class InvalidFrame : public Error {
 public:
  using Error::Error;
};

class NotSSF : public Error {
 public:
  using Error::Error;
};

class PartitionIncompatible : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class TooLargeForBruteForce : public Error {
 public:
  using Error::Error;
};

class UnknownRelation : public Error {
 public:
  using Error::Error;
};

class MalformedSequent : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a text input; `line` is 1-based (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0,
             std::size_t column = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace quadrel
