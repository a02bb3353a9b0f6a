// models.hpp — Built-in generators: the three-mode boson chain, the two-mode
// equal-temperature counterexample and the one-mode Ornstein-Uhlenbeck model

#pragma once

#include "gqms/generator.hpp"

namespace gqms::models {

// H = omega (a1* a2 + a2* a3 + h.c.), thermal baths at beta1 on mode 1 and
// beta3 on mode 3, mode 2 undamped.
struct BosonChainSpec {
    double omega = 1.0;
    double beta1 = 0.69314718055994531;  // ln 2
    double beta3 = 1.0986122886681098;   // ln 3
};

// gamma^- = sqrt(e^b / (e^b - 1)), gamma^+ = sqrt(1 / (e^b - 1))
double gamma_minus(double beta);
double gamma_plus(double beta);

// Throws ModelError when omega = 0, beta1 = beta3 or a beta is not positive.
GeneratorParams boson_chain_params(const BosonChainSpec& spec);

struct BosonChainClosedForm {
    RMatrix s_full;      // lambda S_1 + mu S_delta
    RMatrix s_delta;
    double lambda = 0.0;
    double mu = 0.0;
    double r = 0.0;
    RVector symplectic_eigenvalues;  // descending
    RVector final_betas;             // same order
};

BosonChainClosedForm boson_chain_closed_form(const BosonChainSpec& spec);

// U = [u, u], V = [v, v], Omega = [[a, b], [b, c]],
// kappa = i u v (v^2 - u^2)/(v^2 + u^2) E with E the all-ones matrix.
// Requires v > u > 0 and a != c (ModelError otherwise).
GeneratorParams two_mode_example_params(double u, double v, double a, double b, double c);

// d = 1, m = 2, U = (0; gamma^+), V = (gamma^-; 0), Omega = kappa = 0 and
// zeta as given. Drift -1/2, diffusion coth(beta/2).
GeneratorParams ou_params(double beta, cplx zeta = 0.0);

} // namespace gqms::models
