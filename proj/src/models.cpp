// models.cpp — Built-in generators and closed-form references

#include "gqms/models.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "gqms/errors.hpp"
#include "gqms/williamson.hpp"

namespace gqms::models {

namespace {

void require_positive_beta(double beta, const char* who)
{
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw ModelError(std::string(who) + ": inverse temperature must be positive and finite", beta);
    }
}

void check_chain(const BosonChainSpec& spec)
{
    if (spec.omega == 0.0 || !std::isfinite(spec.omega)) {
        throw ModelError("boson chain: coupling omega must be nonzero", spec.omega);
    }
    require_positive_beta(spec.beta1, "boson chain");
    require_positive_beta(spec.beta3, "boson chain");
    if (spec.beta1 == spec.beta3) {
        throw ModelError("boson chain: beta1 and beta3 must differ", 0.0);
    }
}

} // namespace

double gamma_minus(double beta)
{
    require_positive_beta(beta, "gamma_minus");
    return std::sqrt(std::exp(beta) / std::expm1(beta));
}

double gamma_plus(double beta)
{
    require_positive_beta(beta, "gamma_plus");
    return std::sqrt(1.0 / std::expm1(beta));
}

GeneratorParams boson_chain_params(const BosonChainSpec& spec)
{
    check_chain(spec);
    CMatrix u = CMatrix::Zero(4, 3);
    CMatrix v = CMatrix::Zero(4, 3);
    u(1, 0) = gamma_plus(spec.beta1);
    u(3, 2) = gamma_plus(spec.beta3);
    v(0, 0) = gamma_minus(spec.beta1);
    v(2, 2) = gamma_minus(spec.beta3);

    CMatrix omega = CMatrix::Zero(3, 3);
    omega(0, 1) = omega(1, 0) = omega(1, 2) = omega(2, 1) = spec.omega;
    return GeneratorParams::create(std::move(omega), CMatrix::Zero(3, 3), std::move(u), std::move(v),
                                   CVector::Zero(3));
}

BosonChainClosedForm boson_chain_closed_form(const BosonChainSpec& spec)
{
    check_chain(spec);
    const double w = spec.omega;
    const double c1 = nu_from_beta(spec.beta1);
    const double c3 = nu_from_beta(spec.beta3);

    BosonChainClosedForm out;
    out.lambda = 0.5 * (c1 + c3);
    out.mu = 0.5 * (c1 - c3);
    out.r = std::sqrt(8.0 * w * w + 1.0) / (4.0 * w * w + 1.0);

    RMatrix diag = RMatrix::Zero(3, 3);
    diag.diagonal() << -1.0, 0.0, 1.0;
    RMatrix b(3, 3);
    b << 0.0, -w, 0.0,
         w, 0.0, -w,
         0.0, w, 0.0;
    out.s_delta.resize(6, 6);
    out.s_delta << -0.5 * diag, b,
                   -b, -0.5 * diag;
    out.s_delta *= 2.0 / (4.0 * w * w + 1.0);
    out.s_full = out.lambda * RMatrix::Identity(6, 6) + out.mu * out.s_delta;

    std::vector<double> nu = {std::abs(out.lambda), std::abs(out.lambda + out.mu * out.r),
                              std::abs(out.lambda - out.mu * out.r)};
    std::sort(nu.begin(), nu.end(), std::greater<>());
    out.symplectic_eigenvalues = Eigen::Map<RVector>(nu.data(), 3);
    out.final_betas = beta_from_nu(out.symplectic_eigenvalues);
    return out;
}

GeneratorParams two_mode_example_params(double u, double v, double a, double b, double c)
{
    if (!(v > u && u > 0.0)) {
        throw ModelError("two-mode example: requires v > u > 0", u - v);
    }
    if (a == c) {
        throw ModelError("two-mode example: requires a != c", 0.0);
    }
    CMatrix um(1, 2);
    um << u, u;
    CMatrix vm(1, 2);
    vm << v, v;
    CMatrix omega(2, 2);
    omega << a, b, b, c;
    const cplx k(0.0, u * v * (v * v - u * u) / (v * v + u * u));
    const CMatrix kappa = CMatrix::Constant(2, 2, k);
    return GeneratorParams::create(std::move(omega), kappa, std::move(um), std::move(vm), CVector::Zero(2));
}

GeneratorParams ou_params(double beta, cplx zeta)
{
    CMatrix u = CMatrix::Zero(2, 1);
    CMatrix v = CMatrix::Zero(2, 1);
    u(1, 0) = gamma_plus(beta);
    v(0, 0) = gamma_minus(beta);
    CVector z(1);
    z(0) = zeta;
    return GeneratorParams::create(CMatrix::Zero(1, 1), CMatrix::Zero(1, 1), std::move(u), std::move(v),
                                   std::move(z));
}

} // namespace gqms::models
