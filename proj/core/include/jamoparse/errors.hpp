#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jamoparse {

// Base class for every error raised by the library. Callers that do not care
// about the specific kind can catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidLetterError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. `line()` is 1-based, 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class NonProjectiveError : public Error {
 public:
  NonProjectiveError(const std::string& what, std::size_t sentence)
      : Error(what), sentence_(sentence) {}
  std::size_t sentence() const noexcept { return sentence_; }

 private:
  std::size_t sentence_;
};

class VersionMismatchError : public Error {
 public:
  using Error::Error;
};

class CorruptFileError : public Error {
 public:
  using Error::Error;
};

}  // namespace jamoparse
