// errors.hpp
// Exception taxonomy shared by the whole library.

#pragma once

#include <stdexcept>
#include <string>

namespace ampq {

/// Rounding wiped out (nearly) all amplitude mass: the grid cannot
/// represent the state.
struct StateVanished : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct BadPartition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Requested size exceeds an exhaustive-search or memory bound.
struct TooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct TooShort : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadQ : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ampq
