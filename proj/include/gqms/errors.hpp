// errors.hpp — Exception types shared by the gqms library

#pragma once

#include <stdexcept>
#include <string>

namespace gqms {

// Base for failures that carry the residual of the violated check.
class Error : public std::runtime_error {
public:
    Error(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// A modelling hypothesis does not hold: unstable drift, non-faithful
// invariant state, non-symplectic transformation, inconsistent parameters.
class ModelError : public Error {
public:
    using Error::Error;
};

// An eigen/linear solver failed or a computed identity drifted past its
// tolerance although the inputs satisfied every precondition.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace gqms
