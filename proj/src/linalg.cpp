// linalg.cpp — Dense linear-algebra helpers

#include "gqms/linalg.hpp"

#include <algorithm>

#include <unsupported/Eigen/MatrixFunctions>

#include "gqms/errors.hpp"

namespace gqms::linalg {

RMatrix symplectic_form(Index d)
{
    RMatrix j = RMatrix::Zero(2 * d, 2 * d);
    j.topRightCorner(d, d).setIdentity();
    j.bottomLeftCorner(d, d) = -RMatrix::Identity(d, d);
    return j;
}

RVector stack(const CVector& z)
{
    const Index d = z.size();
    RVector x(2 * d);
    x.head(d) = z.real();
    x.tail(d) = z.imag();
    return x;
}

CVector unstack(const RVector& x)
{
    if (x.size() % 2 != 0) {
        throw std::invalid_argument("unstack: vector length must be even");
    }
    const Index d = x.size() / 2;
    CVector z(d);
    z.real() = x.head(d);
    z.imag() = x.tail(d);
    return z;
}

RMatrix expm(const RMatrix& a)
{
    return a.exp();
}

CVector eigenvalues(const RMatrix& a)
{
    Eigen::EigenSolver<RMatrix> solver(a, false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigenvalue iteration did not converge", 0.0);
    }
    return solver.eigenvalues();
}

CVector eigenvalues(const CMatrix& a)
{
    Eigen::ComplexEigenSolver<CMatrix> solver(a, false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("complex eigenvalue iteration did not converge", 0.0);
    }
    return solver.eigenvalues();
}

double spectral_abscissa(const RMatrix& a)
{
    return eigenvalues(a).real().maxCoeff();
}

double min_hermitian_eigenvalue(const CMatrix& a)
{
    const CMatrix h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigenvalue iteration did not converge", 0.0);
    }
    return solver.eigenvalues().minCoeff();
}

RVector singular_values(const CMatrix& a)
{
    if (a.size() == 0) {
        return RVector();
    }
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues();
}

bool within_guard_band(double ratio, double tol)
{
    return ratio >= tol / 10.0 && ratio <= tol * 10.0;
}

RankDecision numerical_rank(const CMatrix& a, double tol)
{
    RankDecision out;
    out.columns = a.cols();
    const RVector sigma = singular_values(a);
    if (sigma.size() == 0) {
        return out;
    }
    out.sigma_max = sigma(0);
    out.sigma_min = sigma(sigma.size() - 1);
    if (out.sigma_max == 0.0) {
        return out;
    }
    const double threshold = tol * out.sigma_max;
    for (Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > threshold) {
            ++out.rank;
        }
        if (within_guard_band(sigma(i) / out.sigma_max, tol)) {
            out.borderline = true;
        }
    }
    return out;
}

} // namespace gqms::linalg
