#pragma once

#include <stdexcept>

namespace lobert {

// Error taxonomy mirrors the CLI exit codes: ConfigError -> 2,
// DataError -> 3, DivergenceError -> 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lobert
