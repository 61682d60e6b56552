#pragma once

#include <stdexcept>
#include <string>

namespace skacz {

// Raised when an iterative procedure cannot reach its target, or when input
// data turn out to be numerically unusable (e.g. an inconsistent system).
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace skacz
