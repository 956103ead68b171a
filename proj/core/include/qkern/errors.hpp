#pragma once

#include <stdexcept>
#include <string>

namespace qkern {

/// Invalid arguments or malformed inputs (CLI exit code 2).
class input_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds a hard resource guard, e.g. too many qubits (CLI exit code 3).
class capacity_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Inputs are well-formed but numerically unusable (degenerate labels,
/// non-PSD exact Gram matrix, ...). Maps to CLI exit code 2.
class data_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qkern
