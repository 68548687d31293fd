#pragma once

#include <stdexcept>
#include <string>

namespace symdist {

// Thrown when a computation would exceed a configured resource ceiling
// (sieve limits, search space guards, unacknowledged long-running sweeps).
class resource_error : public std::runtime_error {
  public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when external input (code files, Hadamard files, checkpoints)
// fails to parse or fails validation.
class input_error : public std::runtime_error {
  public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace symdist
