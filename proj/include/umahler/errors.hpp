#pragma once

#include <stdexcept>
#include <string>

namespace umahler {

// Invalid mathematical input (zero where nonzero required, mixed fields, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Malformed textual input; `position` is a 0-based offset into the input.
struct parse_error : std::invalid_argument {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : std::invalid_argument(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// An enumeration or size guard tripped; the computation was refused, not wrong.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace umahler
