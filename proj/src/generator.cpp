// generator.cpp — Drift/diffusion construction, Lyapunov solver, invariant
// state and Gaussian state evolution

#include "gqms/generator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "gqms/errors.hpp"

namespace gqms {

namespace {

void require(bool ok, const std::string& msg)
{
    if (!ok) {
        throw std::invalid_argument(msg);
    }
}

double relative_to(double value, double scale)
{
    return value / std::max(1.0, scale);
}

quadrature::Options integral_options(double scale)
{
    quadrature::Options opts;
    opts.abs_tol = 1e-12 * std::max(1.0, scale);
    opts.rel_tol = 1e-12;
    return opts;
}

} // namespace

GeneratorParams GeneratorParams::create(CMatrix omega, CMatrix kappa, CMatrix u, CMatrix v,
                                        CVector zeta, double symmetry_tol)
{
    const Index d = omega.rows();
    require(d >= 1, "generator: at least one mode is required");
    require(omega.cols() == d, "generator: Omega must be square");
    require(kappa.rows() == d && kappa.cols() == d, "generator: kappa must be d x d");
    require(u.cols() == d && v.cols() == d, "generator: U and V must have d columns");
    require(u.rows() == v.rows(), "generator: U and V must have the same number of rows");
    require(zeta.size() == d, "generator: zeta must have length d");
    const Index m = u.rows();
    require(m >= 1 && m <= 2 * d, "generator: the Kraus count m must satisfy 1 <= m <= 2d");

    const double herm = relative_to(linalg::max_abs(omega - omega.adjoint()), linalg::max_abs(omega));
    if (herm > symmetry_tol) {
        std::ostringstream msg;
        msg << "generator: Omega is not Hermitian (relative deviation " << herm << ")";
        throw std::invalid_argument(msg.str());
    }
    const double sym = relative_to(linalg::max_abs(kappa - kappa.transpose()), linalg::max_abs(kappa));
    if (sym > symmetry_tol) {
        std::ostringstream msg;
        msg << "generator: kappa is not symmetric (relative deviation " << sym << ")";
        throw std::invalid_argument(msg.str());
    }

    GeneratorParams p;
    p.omega_ = 0.5 * (omega + omega.adjoint());
    p.kappa_ = 0.5 * (kappa + kappa.transpose());
    p.u_ = std::move(u);
    p.v_ = std::move(v);
    p.zeta_ = std::move(zeta);
    return p;
}

GeneratorParams GeneratorParams::with_zeta(CVector zeta) const
{
    require(zeta.size() == modes(), "generator: zeta must have length d");
    GeneratorParams p = *this;
    p.zeta_ = std::move(zeta);
    return p;
}

RealLinearOp drift(const GeneratorParams& params)
{
    const CMatrix& u = params.u();
    const CMatrix& v = params.v();
    const cplx i(0.0, 1.0);
    CMatrix linear = 0.5 * (u.transpose() * u.conjugate() - v.transpose() * v.conjugate()) + i * params.omega();
    CMatrix antilinear = 0.5 * (u.transpose() * v - v.transpose() * u) + i * params.kappa();
    return {std::move(linear), std::move(antilinear)};
}

RealLinearOp diffusion(const GeneratorParams& params)
{
    const CMatrix& u = params.u();
    const CMatrix& v = params.v();
    return {u.transpose() * u.conjugate() + v.transpose() * v.conjugate(),
            u.transpose() * v + v.transpose() * u};
}

StabilityReport is_stable(const RealLinearOp& drift, double margin)
{
    StabilityReport out;
    out.abscissa = linalg::spectral_abscissa(drift.to_matrix());
    out.stable = out.abscissa < -margin;
    return out;
}

RealLinearOp solve_lyapunov(const RealLinearOp& drift, const RealLinearOp& diffusion)
{
    if (drift.dim() != diffusion.dim() || !drift.is_square() || !diffusion.is_square()) {
        throw std::invalid_argument("solve_lyapunov: drift and diffusion must be square of equal size");
    }
    const StabilityReport stability = is_stable(drift);
    if (!stability.stable) {
        std::ostringstream msg;
        msg << "solve_lyapunov: drift is not stable (spectral abscissa " << stability.abscissa << ")";
        throw ModelError(msg.str(), stability.abscissa);
    }

    const RMatrix z = drift.to_matrix();
    const RMatrix c = diffusion.to_matrix();
    const Index n = z.rows();
    const RMatrix id = RMatrix::Identity(n, n);

    // vec(Z^T S) + vec(S Z) = (I (x) Z^T + Z^T (x) I) vec(S)
    const RMatrix k = Eigen::kroneckerProduct(id, z.transpose()) + Eigen::kroneckerProduct(z.transpose(), id);
    Eigen::FullPivLU<RMatrix> lu(k);
    if (!lu.isInvertible()) {
        throw NumericalError("solve_lyapunov: Kronecker system is singular", 0.0);
    }
    const RVector rhs = -Eigen::Map<const RVector>(c.data(), c.size());
    const RVector sol = lu.solve(rhs);
    RMatrix s = Eigen::Map<const RMatrix>(sol.data(), n, n);
    s = 0.5 * (s + s.transpose()).eval();

    const double residual = relative_to(linalg::max_abs(z.transpose() * s + s * z + c), linalg::max_abs(c));
    if (residual > 1e-10) {
        throw NumericalError("solve_lyapunov: residual above 1e-10", residual);
    }
    return RealLinearOp::from_matrix(s);
}

StateValidity check_gaussian_state(const GaussianState& state)
{
    StateValidity out;
    const RMatrix s = state.covariance.to_matrix();
    const Index d = state.covariance.dim();
    const double scale = std::max(1.0, linalg::max_abs(s));
    out.asymmetry = linalg::max_abs(s - s.transpose()) / scale;
    const CMatrix h = s.cast<cplx>() + cplx(0.0, 1.0) * linalg::symplectic_form(d).cast<cplx>();
    out.min_eigenvalue = linalg::min_hermitian_eigenvalue(h) / scale;
    return out;
}

GaussianState invariant_state(const GeneratorParams& params, double validity_tol)
{
    const RealLinearOp z = drift(params);
    GaussianState state;
    state.covariance = solve_lyapunov(z, diffusion(params));

    // (Z^#)^{-1} zeta on the identification, then multiply by i/2.
    const RMatrix zt = z.to_matrix().transpose();
    const RVector w = zt.fullPivLu().solve(linalg::stack(params.zeta()));
    state.mean = cplx(0.0, 0.5) * linalg::unstack(w);

    const StateValidity validity = check_gaussian_state(state);
    if (!validity.valid(validity_tol)) {
        std::ostringstream msg;
        msg << "invariant_state: covariance violates S + iJ >= 0 (min eigenvalue "
            << validity.min_eigenvalue << ", asymmetry " << validity.asymmetry << ")";
        throw ModelError(msg.str(), validity.min_eigenvalue);
    }
    return state;
}

GaussianState evolve_state(const GeneratorParams& params, const GaussianState& state0, double t,
                           EvolutionMethod method)
{
    if (!(t >= 0.0)) {
        throw std::invalid_argument("evolve_state: time must be nonnegative");
    }
    const Index d = params.modes();
    if (state0.mean.size() != d || state0.covariance.dim() != d) {
        throw std::invalid_argument("evolve_state: initial state dimension does not match the generator");
    }

    const RealLinearOp zop = drift(params);
    const RMatrix z = zop.to_matrix();
    const RMatrix c = diffusion(params).to_matrix();
    const RMatrix j = linalg::symplectic_form(d);
    const RVector zeta = linalg::stack(params.zeta());
    const RVector mean0 = linalg::stack(state0.mean);
    const RMatrix s0 = state0.covariance.to_matrix();

    if (method == EvolutionMethod::Automatic) {
        method = is_stable(zop).stable ? EvolutionMethod::ClosedForm : EvolutionMethod::Quadrature;
    }

    const RMatrix e = linalg::expm(t * z);
    const RMatrix et = e.transpose();  // exp(t Z^#)

    RVector mean_t = j * et * j.transpose() * mean0;
    RMatrix s_t;
    if (method == EvolutionMethod::ClosedForm) {
        if (!is_stable(zop).stable) {
            throw ModelError("evolve_state: closed form requires a stable drift", is_stable(zop).abscissa);
        }
        const RMatrix s_inf = solve_lyapunov(zop, diffusion(params)).to_matrix();
        s_t = et * (s0 - s_inf) * e + s_inf;
        // int_0^t exp(s Z^T) ds zeta = (Z^T)^{-1} (exp(t Z^T) - 1) zeta
        const RVector integral = z.transpose().fullPivLu().solve((et - RMatrix::Identity(2 * d, 2 * d)) * zeta);
        mean_t += 0.5 * j * integral;
    } else {
        auto cov_integrand = [&](double s) -> RMatrix {
            const RMatrix es = linalg::expm(s * z);
            return es.transpose() * c * es;
        };
        const double scale = linalg::max_abs(c) * std::max(1.0, t);
        const RMatrix integral = quadrature::integrate(cov_integrand, 0.0, t, integral_options(scale)).value;
        s_t = et * s0 * e + integral;

        auto mean_integrand = [&](double s) -> RVector { return linalg::expm(s * z.transpose()) * zeta; };
        const double mscale = linalg::max_abs(zeta) * std::max(1.0, t);
        const RVector mint = quadrature::integrate(mean_integrand, 0.0, t, integral_options(mscale)).value;
        mean_t += 0.5 * j * mint;
    }

    s_t = 0.5 * (s_t + s_t.transpose()).eval();
    return {linalg::unstack(mean_t), RealLinearOp::from_matrix(s_t)};
}

std::vector<EvolutionSample> evolve_trajectory(const GeneratorParams& params,
                                               const GaussianState& state0,
                                               std::span<const double> times,
                                               EvolutionMethod method)
{
    std::vector<EvolutionSample> out;
    out.reserve(times.size());
    for (const double t : times) {
        out.push_back({t, evolve_state(params, state0, t, method)});
    }
    return out;
}

WeylAction weyl_action(const GeneratorParams& params, const CVector& z, double t)
{
    if (!(t >= 0.0)) {
        throw std::invalid_argument("weyl_action: time must be nonnegative");
    }
    if (z.size() != params.modes()) {
        throw std::invalid_argument("weyl_action: vector dimension does not match the generator");
    }
    const RMatrix zm = drift(params).to_matrix();
    const RMatrix c = diffusion(params).to_matrix();
    const RVector x0 = linalg::stack(z);
    const RVector zeta = linalg::stack(params.zeta());

    // (Re<e^{sZ}z, C e^{sZ}z>, Re<zeta, e^{sZ}z>)
    auto integrand = [&](double s) -> Eigen::Vector2d {
        const RVector x = linalg::expm(s * zm) * x0;
        return {x.dot(c * x), zeta.dot(x)};
    };

    WeylAction out;
    out.zt = linalg::unstack(linalg::expm(t * zm) * x0);
    if (t > 0.0) {
        quadrature::Options opts;
        opts.abs_tol = 1e-10;
        opts.rel_tol = 1e-13;
        const Eigen::Vector2d integral = quadrature::integrate(integrand, 0.0, t, opts).value;
        out.log_modulus = -0.5 * integral(0);
        out.phase = integral(1);
    }
    return out;
}

MomentumImage momentum_image(const GeneratorParams& params, const CVector& z)
{
    if (z.size() != params.modes()) {
        throw std::invalid_argument("momentum_image: vector dimension does not match the generator");
    }
    // Re<zeta, z> = Re(zeta^* z)
    const double re = params.zeta().dot(z).real();
    return {drift(params).apply(z), -re / std::sqrt(2.0)};
}

bool same_noise_part(const CMatrix& u, const CMatrix& v, const CMatrix& u2, const CMatrix& v2, double tol)
{
    const Index d = u.cols();
    if (v.cols() != d || u2.cols() != d || v2.cols() != d) {
        throw std::invalid_argument("same_noise_part: all matrices must have the same column count");
    }
    if (u.rows() != v.rows() || u2.rows() != v2.rows()) {
        throw std::invalid_argument("same_noise_part: U and V must have matching row counts");
    }
    const double a = linalg::scaled_diff(u.transpose() * u.conjugate(), u2.transpose() * u2.conjugate());
    const double b = linalg::scaled_diff(v.transpose() * v.conjugate(), v2.transpose() * v2.conjugate());
    const double c = linalg::scaled_diff(u.transpose() * v, u2.transpose() * v2);
    const double e = linalg::scaled_diff(v.transpose() * u, v2.transpose() * u2);
    return std::max({a, b, c, e}) <= tol;
}

double fit_covariance_decay_rate(const GeneratorParams& params, const GaussianState& state0,
                                 std::span<const double> times)
{
    if (times.size() < 2) {
        throw std::invalid_argument("fit_covariance_decay_rate: need at least two times");
    }
    const RealLinearOp zop = drift(params);
    const RMatrix z = zop.to_matrix();
    const RMatrix s_inf = solve_lyapunov(zop, diffusion(params)).to_matrix();
    const RMatrix delta0 = state0.covariance.to_matrix() - s_inf;

    const auto n = static_cast<double>(times.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const double t : times) {
        const RMatrix e = linalg::expm(t * z);
        const double norm = (e.transpose() * delta0 * e).norm();
        if (!(norm > 0.0)) {
            throw NumericalError("fit_covariance_decay_rate: deviation vanished at a sample time", t);
        }
        const double y = std::log(norm);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> decay_fit_times(double abscissa, int count)
{
    if (!(abscissa < 0.0)) {
        throw std::invalid_argument("decay_fit_times: abscissa must be negative");
    }
    if (count < 2) {
        throw std::invalid_argument("decay_fit_times: need at least two samples");
    }
    const double unit = 1.0 / std::abs(abscissa);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = unit * (10.0 + 90.0 * k / (count - 1));
    }
    return out;
}

} // namespace gqms
