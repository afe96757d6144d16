#pragma once

#include <stdexcept>
#include <string>

namespace exo {

// Error taxonomy shared by all modules. The CLI maps these onto exit codes
// and machine-readable stderr tags (see cli.cpp).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct computation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace exo
