#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hosb {

/// Base class for solver-domain failures. Precondition violations use the
/// standard std::invalid_argument / std::out_of_range instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-finite position or momentum appeared during time evolution.
class NumericFailure : public Error {
 public:
  NumericFailure(long step, const std::string& what)
      : Error("numeric failure at step " + std::to_string(step) + ": " + what), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

class GenerationFailure : public Error {
 public:
  GenerationFailure(std::size_t n, std::size_t attempts)
      : Error("3R3X generation failed for n=" + std::to_string(n) + " after " +
              std::to_string(attempts) + " attempts"),
        n_(n),
        attempts_(attempts) {}
  std::size_t n() const noexcept { return n_; }
  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t n_;
  std::size_t attempts_;
};

class UnsupportedReduction : public Error {
 public:
  using Error::Error;
};

/// Text input failure; line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace hosb
