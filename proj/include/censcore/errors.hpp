#pragma once

#include <stdexcept>
#include <string>

namespace censcore {

// Thrown when an iterative numerical routine (series summation, adaptive
// quadrature, root bracketing) exhausts its budget before reaching tolerance.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace censcore
