// generator.hpp — GKSL parameter sets of Gaussian quantum Markov semigroups,
// their drift/diffusion operators, invariant states and state evolution

#pragma once

#include <span>
#include <vector>

#include "gqms/quadrature.hpp"
#include "gqms/realop.hpp"

namespace gqms {

// Parameters (Omega, kappa, U, V, zeta) of a Gaussian GKSL generator with d
// modes and m Kraus operators. Omega is d x d Hermitian, kappa d x d
// symmetric, U and V are m x d, zeta has length d.
class GeneratorParams {
public:
    GeneratorParams() = default;

    // Checks shapes and 1 <= m <= 2d. Omega and kappa are symmetrized when
    // they are Hermitian/symmetric within symmetry_tol (relative to their
    // largest entry); otherwise std::invalid_argument is thrown.
    static GeneratorParams create(CMatrix omega, CMatrix kappa, CMatrix u, CMatrix v,
                                  CVector zeta, double symmetry_tol = 1e-9);

    Index modes() const { return omega_.rows(); }
    Index kraus() const { return u_.rows(); }

    const CMatrix& omega() const { return omega_; }
    const CMatrix& kappa() const { return kappa_; }
    const CMatrix& u() const { return u_; }
    const CMatrix& v() const { return v_; }
    const CVector& zeta() const { return zeta_; }

    GeneratorParams with_zeta(CVector zeta) const;

private:
    CMatrix omega_;
    CMatrix kappa_;
    CMatrix u_;
    CMatrix v_;
    CVector zeta_;
};

struct GaussianState {
    CVector mean;
    RealLinearOp covariance;
};

struct StateValidity {
    double asymmetry = 0.0;     // max|S - S^T| of the identification
    double min_eigenvalue = 0.0; // smallest eigenvalue of S + iJ

    bool valid(double tol = 1e-9) const { return asymmetry <= tol && min_eigenvalue >= -tol; }
};

StateValidity check_gaussian_state(const GaussianState& state);

struct EvolutionSample {
    double t = 0.0;
    GaussianState state;
};

// Z z = ((U^T conj(U) - V^T conj(V))/2 + i Omega) z + ((U^T V - V^T U)/2 + i kappa) conj(z)
RealLinearOp drift(const GeneratorParams& params);
// C z = (U^T conj(U) + V^T conj(V)) z + (U^T V + V^T U) conj(z)
RealLinearOp diffusion(const GeneratorParams& params);

struct StabilityReport {
    bool stable = false;
    double abscissa = 0.0;
};

// Stable when every eigenvalue of the drift identification has real part
// below -margin.
StabilityReport is_stable(const RealLinearOp& drift, double margin = 0.0);

// Solves Z^# S + S Z = -C through the Kronecker form on the 2d x 2d
// identifications. Throws ModelError for an unstable drift.
RealLinearOp solve_lyapunov(const RealLinearOp& drift, const RealLinearOp& diffusion);

// mean = (i/2) (Z^#)^{-1} zeta, covariance from the Lyapunov equation.
// Throws ModelError for an unstable drift or when S + iJ is not positive
// semidefinite within validity_tol.
GaussianState invariant_state(const GeneratorParams& params, double validity_tol = 1e-9);

enum class EvolutionMethod {
    Automatic,  // closed form when the drift is stable, quadrature otherwise
    ClosedForm,
    Quadrature,
};

// Mean and covariance at time t of the predual evolution started from state0.
GaussianState evolve_state(const GeneratorParams& params, const GaussianState& state0, double t,
                           EvolutionMethod method = EvolutionMethod::Automatic);

std::vector<EvolutionSample> evolve_trajectory(const GeneratorParams& params,
                                               const GaussianState& state0,
                                               std::span<const double> times,
                                               EvolutionMethod method = EvolutionMethod::Automatic);

// Coefficients of T_t(W(z)) = exp(log_modulus + i phase) W(zt).
struct WeylAction {
    double log_modulus = 0.0;
    double phase = 0.0;
    CVector zt;
};

WeylAction weyl_action(const GeneratorParams& params, const CVector& z, double t);

// L(p(z)) = p(Zz) + scalar
struct MomentumImage {
    CVector drifted;
    double scalar = 0.0;
};

MomentumImage momentum_image(const GeneratorParams& params, const CVector& z);

// True when the Gram products U^T conj(U), V^T conj(V), U^T V and V^T U of
// both pairs agree within tol (relative), i.e. both pairs give the same noise
// contribution to the drift and diffusion.
bool same_noise_part(const CMatrix& u, const CMatrix& v, const CMatrix& u2, const CMatrix& v2,
                     double tol = 1e-10);

// Least-squares slope of log ||S_t - S_inf||_F over the given times. For a
// stable drift this approaches 2 * spectral abscissa.
double fit_covariance_decay_rate(const GeneratorParams& params, const GaussianState& state0,
                                 std::span<const double> times);

// Evenly spaced fit times over [10, 100] / |abscissa|.
std::vector<double> decay_fit_times(double abscissa, int count = 46);

} // namespace gqms
