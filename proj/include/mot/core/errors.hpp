#pragma once

#include <stdexcept>
#include <string>

namespace mot {

// Invalid or inconsistent configuration / input data. CLI maps this to exit 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure (NaN/Inf, blow-up, solver breakdown). CLI maps this to exit 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / serialization failure. CLI maps this to exit 4.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mot
