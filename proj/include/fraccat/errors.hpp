#pragma once

#include <stdexcept>
#include <string>

namespace fraccat {

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfTube : std::runtime_error {
    explicit OutOfTube(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fraccat
