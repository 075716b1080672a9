#pragma once

#include <stdexcept>
#include <string>

namespace perfhom {

/// Invalid configuration or precondition violation traceable to user input.
/// The CLI maps this to exit code 2.
struct config_error : std::invalid_argument {
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative solve or adaptive quadrature failed to reach its tolerance.
/// The CLI maps this to exit code 3.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace perfhom
