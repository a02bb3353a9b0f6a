// linalg.hpp — Dense linear-algebra helpers used across the gqms modules

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gqms {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using RMatrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

namespace linalg {

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// max|a - b| / max(1, max|a|, max|b|)
template <typename A, typename B>
double scaled_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    const double scale = std::max({1.0, max_abs(a), max_abs(b)});
    return max_abs(a - b) / scale;
}

// The 2d x 2d matrix [[0, 1], [-1, 0]] (blocks of size d).
RMatrix symplectic_form(Index d);

// (Re z; Im z) and its inverse.
RVector stack(const CVector& z);
CVector unstack(const RVector& x);

// Scaling-and-squaring Pade exponential.
RMatrix expm(const RMatrix& a);

// Eigenvalues of a general real or complex matrix; throws NumericalError when
// the QR iteration does not converge.
CVector eigenvalues(const RMatrix& a);
CVector eigenvalues(const CMatrix& a);

// Largest real part over the spectrum.
double spectral_abscissa(const RMatrix& a);

// Smallest eigenvalue of a Hermitian matrix.
double min_hermitian_eigenvalue(const CMatrix& a);

// Singular values, descending.
RVector singular_values(const CMatrix& a);

// Rank with threshold tol * sigma_max. The decision is "borderline" when the
// singular value nearest to the threshold lies within a factor 10 of it.
struct RankDecision {
    Index rank = 0;
    Index columns = 0;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    bool borderline = false;

    Index kernel_dim() const { return columns - rank; }
    bool full_column_rank() const { return rank == columns; }
};

RankDecision numerical_rank(const CMatrix& a, double tol);

// Classify a quantity against a relative threshold with the same factor-10
// guard band used by numerical_rank.
bool within_guard_band(double ratio, double tol);

} // namespace linalg
} // namespace gqms
