#pragma once

#include <stdexcept>
#include <string>

namespace tubal {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operand shapes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A spectral object is not the transform of a real tensor.
class SymmetryError : public Error {
public:
    using Error::Error;
};

// Malformed or truncated file.
class FormatError : public Error {
public:
    using Error::Error;
};

// Invalid configuration or argument value.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Objective became NaN or infinite during a solve.
class DivergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace tubal
