#pragma once
//! \file errors.hpp
//! Error taxonomy shared by the library and the CLI exit codes.

#include <stdexcept>
#include <string>

namespace rbvp {

/// malformed configuration / input (CLI exit code 1)
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// a theorem hypothesis is violated, e.g. lambda+Lambda = 0 (exit code 2)
struct hypothesis_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// solver divergence or linear-solve failure (exit code 3)
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rbvp
