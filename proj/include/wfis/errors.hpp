#pragma once

#include <stdexcept>

namespace wfis {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Lookup outside the range a table was built for.
class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Model configuration with no well-defined outcome (empty urn, no draws, 0/0 ratio).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeding a configured resource bound (oracle size, table size).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wfis
