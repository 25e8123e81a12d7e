#ifndef EHG_ERRORS_HPP
#define EHG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ehg {

// Bad inputs: malformed configs, precondition violations. CLI exit code 1.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Solver failures: iteration caps, missing brackets. CLI exit code 2.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ehg

#endif
