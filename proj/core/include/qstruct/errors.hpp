#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qstruct {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symbol missing, duplicated, or used with the wrong arity or kind.
class SignatureError : public Error {
 public:
  using Error::Error;
};

// Element or element set outside the universe it is used against.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PinError : public Error {
 public:
  using Error::Error;
};

// An exhaustive sweep would exceed its configured bound.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::size_t reached)
      : Error(what + " (reached " + std::to_string(reached) + ")"), reached_(reached) {}
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class AssignmentError : public Error {
 public:
  using Error::Error;
};

class KappaError : public Error {
 public:
  using Error::Error;
};

// Formula does not have the syntactic shape an operation requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class IntersectionFailure : public Error {
 public:
  using Error::Error;
};

class EmissionError : public Error {
 public:
  using Error::Error;
};

class UniversalityError : public Error {
 public:
  using Error::Error;
};

// Failure while reading or parsing a named input file.
class FileError : public Error {
 public:
  FileError(const std::string& path, const std::string& what) : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace qstruct
