#pragma once

#include <stdexcept>

namespace nlosloc {

// Scene/link synthesis could not satisfy its constraints.
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Missing, corrupt or schema-violating files on disk.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid input to an encoder (empty link, point out of bounds, ...).
struct EncodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tensor/model dimension mismatch.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Training produced a non-finite loss.
struct DivergenceError : std::runtime_error {
  int epoch = -1;
  DivergenceError(const std::string& msg, int epoch_) : std::runtime_error(msg), epoch(epoch_) {}
};

}  // namespace nlosloc
