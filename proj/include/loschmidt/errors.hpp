#pragma once

#include <stdexcept>
#include <string>

namespace loschmidt {

// Error taxonomy shared by the library, the CLI and the python bindings.
// The CLI maps each class to a distinct exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error { using Error::Error; };       // invalid ChainConfig / SweepSpec
struct GridError : Error { using Error::Error; };         // invalid or too-coarse TimeGrid
struct DomainError : Error { using Error::Error; };       // argument outside its contract
struct PhysicalityError : Error { using Error::Error; };  // non-physical state, |nu| > 1
struct ResourceError : Error { using Error::Error; };     // dense-diagonalization size caps
struct NotFoundError : Error { using Error::Error; };     // requested scan absent from a sweep
struct AmbiguityError : Error { using Error::Error; };    // tied minima in critical-point detection
struct IoError : Error { using Error::Error; };           // unreadable/unwritable paths

}  // namespace loschmidt
