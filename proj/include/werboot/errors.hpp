#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace werboot {

// Base class of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad inputs: malformed files, invalid flags, datasets that violate the
// ingestion contract. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Statistical preconditions that make a requested quantity undefined
// (zero denominators, too few samples). The CLI maps these to exit code 3.
class StatisticError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  ParseError(std::string path, std::size_t line, const std::string& what)
      : ValidationError(path + ":" + std::to_string(line) + ": " + what),
        path_(std::move(path)),
        line_(line) {}

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

class DuplicateUttId : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyBlock : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyDataset : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MissingUtterance : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An utterance whose reference has zero words. Rejected at ingestion instead
// of silently dropped, since dropping would bias the WER denominator.
class EmptyReference : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidConfig : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ZeroReferenceLength : public StatisticError {
 public:
  using StatisticError::StatisticError;
};

class ZeroBaselineWer : public StatisticError {
 public:
  using StatisticError::StatisticError;
};

class EmptySamples : public StatisticError {
 public:
  using StatisticError::StatisticError;
};

class InsufficientSamples : public StatisticError {
 public:
  using StatisticError::StatisticError;
};

class InsufficientBlocks : public StatisticError {
 public:
  using StatisticError::StatisticError;
};

}  // namespace werboot
