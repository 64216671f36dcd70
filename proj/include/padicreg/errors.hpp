#pragma once

#include <stdexcept>
#include <string>

namespace padicreg {

/// Malformed input text (rational literals, graph files, dataset files).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An exhaustive solver was asked to run past its configured cap.
struct InstanceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace padicreg
