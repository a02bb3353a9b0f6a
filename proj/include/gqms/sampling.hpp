// sampling.hpp — Seeded random instances for property and fuzz suites

#pragma once

#include <cstdint>
#include <random>

#include "gqms/generator.hpp"

namespace gqms::sampling {

using Rng = std::mt19937_64;

// Entries with independent N(0, 1/2) real and imaginary parts.
CMatrix complex_normal(Index rows, Index cols, Rng& rng);
CVector complex_normal(Index n, Rng& rng);
RVector real_normal(Index n, Rng& rng);

// Unitary from the QR factorization of a complex normal matrix, with the
// phases of R's diagonal absorbed.
CMatrix random_unitary(Index n, Rng& rng);

// U, V, zeta complex normal; Omega = (A + A^*)/2 and kappa = (B + B^T)/2 from
// complex normal A, B; m uniform in [1, 2d]. Draws are rejected until the
// drift's spectral abscissa is below -margin.
struct SampledParams {
    GeneratorParams params;
    double abscissa = 0.0;
    int attempts = 0;
};

SampledParams random_stable_params(Index d, Rng& rng, double margin = 1e-3, int max_attempts = 100000);

// exp(J H) with H symmetric normal of scale `scale`. Symplectic because J H
// lies in the symplectic Lie algebra.
RMatrix random_symplectic_matrix(Index d, Rng& rng, double scale = 0.3);
RealLinearOp random_symplectic(Index d, Rng& rng, double scale = 0.3);

// G0^T diag(nu, nu) G0 with nu drawn uniformly from [nu_min, nu_max].
struct PlantedCovariance {
    RMatrix s;
    RMatrix g0;
    RVector nu;  // descending
};

PlantedCovariance planted_covariance(Index d, Rng& rng, double nu_min = 1.05, double nu_max = 6.0,
                                     double scale = 0.3);

} // namespace gqms::sampling
