#pragma once

#include <stdexcept>
#include <string>

namespace varbound {

// Base class for everything this library throws.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input text (potential expressions, fixture lines).
struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Parameter outside the mathematical domain of a formula.
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

// Numerical failure: conditioning, missing bracket, tail too short.
struct numeric_error : error {
    explicit numeric_error(const std::string& msg) : error(msg) {}
};

// Cholesky pivot loss: the basis has become numerically dependent.
struct basis_dependent_error : numeric_error {
    int pivot_index;
    double pivot_value;
    basis_dependent_error(int index, double value)
        : numeric_error("basis numerically dependent: Cholesky pivot " +
                        std::to_string(index) + " = " + std::to_string(value)),
          pivot_index(index), pivot_value(value) {}
};

}  // namespace varbound
