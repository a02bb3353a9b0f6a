// sampling.cpp — Seeded random instances

#include "gqms/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "gqms/errors.hpp"

namespace gqms::sampling {

CMatrix complex_normal(Index rows, Index cols, Rng& rng)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    CMatrix out(rows, cols);
    // fill column-major in a fixed order so streams are reproducible
    for (Index c = 0; c < cols; ++c) {
        for (Index r = 0; r < rows; ++r) {
            const double re = n(rng);
            const double im = n(rng);
            out(r, c) = cplx(re, im);
        }
    }
    return out;
}

CVector complex_normal(Index n, Rng& rng)
{
    return complex_normal(n, 1, rng).col(0);
}

RVector real_normal(Index n, Rng& rng)
{
    std::normal_distribution<double> dist(0.0, 1.0);
    RVector out(n);
    for (Index i = 0; i < n; ++i) {
        out(i) = dist(rng);
    }
    return out;
}

CMatrix random_unitary(Index n, Rng& rng)
{
    const CMatrix a = complex_normal(n, n, rng);
    Eigen::HouseholderQR<CMatrix> qr(a);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) {
            q.col(j) *= r(j, j) / mag;
        }
    }
    return q;
}

SampledParams random_stable_params(Index d, Rng& rng, double margin, int max_attempts)
{
    if (d < 1) {
        throw std::invalid_argument("random_stable_params: d must be positive");
    }
    std::uniform_int_distribution<Index> kraus(1, 2 * d);
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        const Index m = kraus(rng);
        CMatrix u = complex_normal(m, d, rng);
        CMatrix v = complex_normal(m, d, rng);
        const CMatrix a = complex_normal(d, d, rng);
        const CMatrix b = complex_normal(d, d, rng);
        CVector zeta = complex_normal(d, rng);
        auto params = GeneratorParams::create(0.5 * (a + a.adjoint()), 0.5 * (b + b.transpose()),
                                              std::move(u), std::move(v), std::move(zeta));
        const StabilityReport st = is_stable(drift(params), margin);
        if (st.stable) {
            return {std::move(params), st.abscissa, attempt};
        }
    }
    std::ostringstream msg;
    msg << "random_stable_params: no stable instance in " << max_attempts << " draws for d = " << d;
    throw NumericalError(msg.str(), 0.0);
}

RMatrix random_symplectic_matrix(Index d, Rng& rng, double scale)
{
    RMatrix h(2 * d, 2 * d);
    const RVector entries = real_normal(4 * d * d, rng);
    for (Index c = 0; c < 2 * d; ++c) {
        for (Index r = 0; r < 2 * d; ++r) {
            h(r, c) = entries(c * 2 * d + r);
        }
    }
    h = 0.5 * scale * (h + h.transpose()).eval();
    return linalg::expm(linalg::symplectic_form(d) * h);
}

RealLinearOp random_symplectic(Index d, Rng& rng, double scale)
{
    return RealLinearOp::from_matrix(random_symplectic_matrix(d, rng, scale));
}

PlantedCovariance planted_covariance(Index d, Rng& rng, double nu_min, double nu_max, double scale)
{
    std::uniform_real_distribution<double> dist(nu_min, nu_max);
    PlantedCovariance out;
    out.nu.resize(d);
    for (Index j = 0; j < d; ++j) {
        out.nu(j) = dist(rng);
    }
    std::sort(out.nu.data(), out.nu.data() + d, std::greater<>());
    out.g0 = random_symplectic_matrix(d, rng, scale);
    RVector diag(2 * d);
    diag << out.nu, out.nu;
    out.s = out.g0.transpose() * diag.asDiagonal() * out.g0;
    out.s = 0.5 * (out.s + out.s.transpose()).eval();
    return out;
}

} // namespace gqms::sampling
