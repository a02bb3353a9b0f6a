// williamson.hpp — Williamson normal form of Gaussian covariances, inverse
// temperatures and temperature classes

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gqms/linalg.hpp"

namespace gqms {

// S = G^T diag(nu, nu) G with G symplectic and nu_1 >= ... >= nu_d > 1.
struct WilliamsonResult {
    RMatrix g;
    RVector nu;
    RVector beta;
    double reconstruction_residual = 0.0;  // max|G^T D G - S| / max(1, max|S|)
    double symplectic_residual = 0.0;      // max|G^T J G - J|

    // M = G^{-1} = -J G^T J
    RMatrix inverse() const;
    // diag(nu, nu)
    RMatrix diagonal() const;
};

// Positive halves of the +-pairs of eigenvalues of i J S, descending.
// Throws std::invalid_argument for an asymmetric S and NumericalError when an
// eigenvalue has imaginary part above 1e-8 (relative) or the pairing fails.
RVector symplectic_eigenvalues(const RMatrix& s);

// Throws std::invalid_argument for asymmetric input, ModelError when S is not
// positive definite or some nu <= 1 + tol, and NumericalError when the
// residual checks fail.
WilliamsonResult williamson(const RMatrix& s, double tol = 1e-9);

// beta = log((nu + 1)/(nu - 1)); throws std::domain_error for nu <= 1.
double beta_from_nu(double nu);
// coth(beta/2)
double nu_from_beta(double beta);
RVector beta_from_nu(const RVector& nu);

// Modes with equal inverse temperature. Classes are listed in order of
// decreasing beta; indices inside a class are ascending.
struct TemperaturePartition {
    std::vector<std::vector<Index>> classes;
    std::vector<double> representative_beta;  // class mean
    std::vector<std::string> warnings;        // near-threshold neighbour gaps

    bool borderline() const { return !warnings.empty(); }
    std::size_t size() const { return classes.size(); }
};

// Sorts beta descending (ties by index) and links neighbours whose gap is at
// most tol * max(1, |beta|). A gap within a factor 10 of the threshold adds a
// warning.
TemperaturePartition temperature_partition(const RVector& beta, double tol = 1e-8);

// For A = [[X, Y], [-Y, X]] the unitary U = (1/2)[[(1+i), (1-i)], [(1-i), (1+i)]]
// gives U^* A U = diag(X - iY, X + iY).
std::pair<CMatrix, CMatrix> block_diagonalize(const RMatrix& x, const RMatrix& y);
CMatrix block_unitary(Index d);

} // namespace gqms
