#pragma once

#include <stdexcept>

namespace ionsim {

// Bad or inconsistent user input (configs, parameters out of domain).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A hard size guard was hit (enumeration width, Hilbert dimension).
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical routine failed or an internal consistency check tripped.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ionsim
