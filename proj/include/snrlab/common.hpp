#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace snrlab {

// Error hierarchy. The CLI maps these onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Length is not a power of two, or two sequences disagree in length.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Scene has no light to distribute (e.g. an all-black image with x0 > 0).
class DegenerateSceneError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Request exceeds a configured size limit (dense materialization, sweep range).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Trial ensemble is empty, too small, or mixes cells.
class AggregationError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or command line.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Architecture { lci, pai, lai };

std::string_view to_string(Architecture arch);
Architecture parse_architecture(std::string_view name);

}  // namespace snrlab
