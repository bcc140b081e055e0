#pragma once

#include <stdexcept>
#include <string>

namespace lrw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed graph input (out-of-range vertex, self-loop, bad format).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Structurally invalid rank-decomposition.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Input exceeds the configured cap of an exhaustive routine.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A checked contract failed (improper coloring, violated chain condition, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace lrw
