#pragma once

#include <stdexcept>
#include <string>

namespace penrisk {

// Raised for malformed or inconsistent input data (life-table files,
// benefit files). Argument and configuration problems use
// std::invalid_argument instead; the CLI maps the two to distinct
// exit codes.
class DataError : public std::runtime_error {
  public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace penrisk
