#pragma once

#include <stdexcept>
#include <string>

namespace betacap {

// Malformed text input: symbol/weight/set specs, config files.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid argument or violated precondition.
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A solver or quadrature failed to converge.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Too few usable singular values for a decay-rate fit.
struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace betacap
