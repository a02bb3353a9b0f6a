// williamson.cpp — Symplectic diagonalization of covariance matrices

#include "gqms/williamson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gqms/errors.hpp"

namespace gqms {

namespace {

void require_symmetric(const RMatrix& s, const char* who)
{
    if (s.rows() != s.cols() || s.rows() == 0 || s.rows() % 2 != 0) {
        throw std::invalid_argument(std::string(who) + ": covariance must be 2d x 2d");
    }
    const double asym = linalg::max_abs(s - s.transpose()) / std::max(1.0, linalg::max_abs(s));
    if (asym > 1e-9) {
        std::ostringstream msg;
        msg << who << ": covariance is not symmetric (relative asymmetry " << asym << ")";
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

RMatrix WilliamsonResult::inverse() const
{
    const RMatrix j = linalg::symplectic_form(nu.size());
    return -j * g.transpose() * j;
}

RMatrix WilliamsonResult::diagonal() const
{
    RVector diag(2 * nu.size());
    diag << nu, nu;
    return diag.asDiagonal();
}

RVector symplectic_eigenvalues(const RMatrix& s)
{
    require_symmetric(s, "symplectic_eigenvalues");
    const Index d = s.rows() / 2;
    const CMatrix k = cplx(0.0, 1.0) * (linalg::symplectic_form(d) * s).cast<cplx>();
    const CVector ev = linalg::eigenvalues(k);

    const double scale = std::max(1.0, linalg::max_abs(s));
    const double imag = ev.imag().cwiseAbs().maxCoeff() / scale;
    if (imag > 1e-8) {
        std::ostringstream msg;
        msg << "symplectic_eigenvalues: eigenvalue of iJS with imaginary part " << imag
            << " (invalid covariance)";
        throw NumericalError(msg.str(), imag);
    }

    std::vector<double> re(ev.size());
    for (Index i = 0; i < ev.size(); ++i) {
        re[static_cast<std::size_t>(i)] = ev(i).real();
    }
    std::sort(re.begin(), re.end(), std::greater<>());

    RVector nu(d);
    double pairing = 0.0;
    for (Index j = 0; j < d; ++j) {
        nu(j) = re[static_cast<std::size_t>(j)];
        pairing = std::max(pairing, std::abs(nu(j) + re[static_cast<std::size_t>(2 * d - 1 - j)]));
    }
    pairing /= scale;
    if (pairing > 1e-8) {
        throw NumericalError("symplectic_eigenvalues: eigenvalues of iJS are not +- paired", pairing);
    }
    return nu;
}

WilliamsonResult williamson(const RMatrix& s, double tol)
{
    require_symmetric(s, "williamson");
    const Index d = s.rows() / 2;
    const RMatrix sym = 0.5 * (s + s.transpose());
    const RMatrix j = linalg::symplectic_form(d);

    Eigen::LLT<RMatrix> llt(sym);
    if (llt.info() != Eigen::Success) {
        throw ModelError("williamson: covariance is not positive definite", 0.0);
    }
    const RMatrix l = llt.matrixL();

    // L^T (iJ) L is Hermitian with eigenvalues +-nu_j. An eigenvector v for
    // -nu gives w = L^{-T} v, and sqrt(2 nu) (Re w, Im w) are the columns
    // (x_j, y_j) of M = G^{-1}.
    const CMatrix h = cplx(0.0, 1.0) * (l.transpose() * j * l).cast<cplx>();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("williamson: Hermitian eigensolver did not converge", 0.0);
    }
    const RVector mu = eig.eigenvalues();

    WilliamsonResult out;
    out.nu.resize(d);
    RMatrix m(2 * d, 2 * d);
    const CMatrix lt_inv_v = l.transpose().cast<cplx>().triangularView<Eigen::Upper>().solve(
        eig.eigenvectors().leftCols(d));
    for (Index k = 0; k < d; ++k) {
        const double nu = -mu(k);
        if (!(nu > 1.0 + tol)) {
            std::ostringstream msg;
            msg << "williamson: symplectic eigenvalue " << nu << " <= 1 + " << tol
                << " (invariant state is not faithful)";
            throw ModelError(msg.str(), nu - 1.0);
        }
        out.nu(k) = nu;
        CVector w = lt_inv_v.col(k);
        // fix the phase: largest component (lowest index on ties) real positive
        Index pivot = 0;
        for (Index i = 1; i < w.size(); ++i) {
            if (std::abs(w(i)) > std::abs(w(pivot)) * (1.0 + 1e-12)) {
                pivot = i;
            }
        }
        w *= std::conj(w(pivot)) / std::abs(w(pivot));
        w *= std::sqrt(2.0 * nu);
        m.col(k) = w.real();
        m.col(k + d) = w.imag();
    }

    out.g = -j * m.transpose() * j;
    out.beta = beta_from_nu(out.nu);

    const RMatrix recon = out.g.transpose() * out.diagonal() * out.g;
    out.reconstruction_residual = linalg::max_abs(recon - sym) / std::max(1.0, linalg::max_abs(sym));
    out.symplectic_residual = linalg::max_abs(out.g.transpose() * j * out.g - j);
    if (out.reconstruction_residual > 1e-9) {
        throw NumericalError("williamson: reconstruction residual above 1e-9", out.reconstruction_residual);
    }
    if (out.symplectic_residual > 1e-10 * std::max(1.0, linalg::max_abs(out.g) * linalg::max_abs(out.g))) {
        throw NumericalError("williamson: symplectic residual above 1e-10", out.symplectic_residual);
    }
    return out;
}

double beta_from_nu(double nu)
{
    if (!(nu > 1.0)) {
        throw std::domain_error("beta_from_nu: symplectic eigenvalue must exceed 1");
    }
    // log((nu + 1)/(nu - 1)) = log1p(2/(nu - 1))
    return std::log1p(2.0 / (nu - 1.0));
}

double nu_from_beta(double beta)
{
    if (!(beta > 0.0)) {
        throw std::domain_error("nu_from_beta: inverse temperature must be positive");
    }
    return 1.0 / std::tanh(0.5 * beta);
}

RVector beta_from_nu(const RVector& nu)
{
    RVector out(nu.size());
    for (Index i = 0; i < nu.size(); ++i) {
        out(i) = beta_from_nu(nu(i));
    }
    return out;
}

TemperaturePartition temperature_partition(const RVector& beta, double tol)
{
    TemperaturePartition out;
    const Index d = beta.size();
    if (d == 0) {
        return out;
    }
    std::vector<Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return beta(a) > beta(b); });

    std::vector<Index> current{order[0]};
    for (std::size_t k = 1; k < order.size(); ++k) {
        const Index prev = order[k - 1];
        const Index next = order[k];
        const double gap = std::abs(beta(prev) - beta(next));
        const double scale = std::max({1.0, std::abs(beta(prev)), std::abs(beta(next))});
        const double ratio = gap / scale;
        if (linalg::within_guard_band(ratio, tol)) {
            std::ostringstream msg;
            msg << "modes " << prev << " and " << next << ": relative beta gap " << ratio
                << " within a factor 10 of tolerance " << tol;
            out.warnings.push_back(msg.str());
        }
        if (ratio <= tol) {
            current.push_back(next);
        } else {
            out.classes.push_back(current);
            current = {next};
        }
    }
    out.classes.push_back(current);

    for (auto& cls : out.classes) {
        double sum = 0.0;
        for (const Index i : cls) {
            sum += beta(i);
        }
        out.representative_beta.push_back(sum / static_cast<double>(cls.size()));
        std::sort(cls.begin(), cls.end());
    }
    return out;
}

std::pair<CMatrix, CMatrix> block_diagonalize(const RMatrix& x, const RMatrix& y)
{
    if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
        throw std::invalid_argument("block_diagonalize: X and Y must be square of equal size");
    }
    const cplx i(0.0, 1.0);
    return {x.cast<cplx>() - i * y.cast<cplx>(), x.cast<cplx>() + i * y.cast<cplx>()};
}

CMatrix block_unitary(Index d)
{
    const CMatrix id = CMatrix::Identity(d, d);
    CMatrix u(2 * d, 2 * d);
    u << cplx(1, 1) * id, cplx(1, -1) * id, cplx(1, -1) * id, cplx(1, 1) * id;
    return 0.5 * u;
}

} // namespace gqms
