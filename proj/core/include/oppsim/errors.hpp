#pragma once

#include <stdexcept>
#include <string>

namespace oppsim {

// Errors caused by invalid input or misuse of a contract. The CLI maps these
// to exit code 2.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// schedule() with a fire time in the past.
struct PastEventError : SimError {
  using SimError::SimError;
};

// uniform(lo, hi) with lo > hi.
struct InvertedRangeError : SimError {
  using SimError::SimError;
};

// Preset name that is not one of the built-in scenarios.
struct UnknownScenarioError : SimError {
  using SimError::SimError;
};

// Same message injected twice.
struct DuplicateInjectionError : SimError {
  using SimError::SimError;
};

// (user, message) pair missing from the precomputed reaction table.
struct UnknownPairError : SimError {
  using SimError::SimError;
};

// Filesystem failures. The CLI maps these to exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oppsim
