// standardize.hpp — Symplectic change of parametrization that makes the
// invariant state diagonal with zero mean

#pragma once

#include "gqms/generator.hpp"
#include "gqms/williamson.hpp"

namespace gqms {

struct StandardizeOptions {
    double stability_margin = 0.0;    // drift abscissa must be below -margin
    double temperature_tol = 1e-8;    // temperature_partition tolerance
    double faithful_tol = 1e-9;       // every nu must exceed 1 + faithful_tol
    double zeta_tol = 1e-6;           // relative residual of the new linear term
};

struct StandardizedGenerator {
    GeneratorParams params;           // (Omega~, kappa~, U~, V~, 0)
    SymplecticParts m_parts;          // M = G^{-1}
    RVector beta;
    TemperaturePartition partition;
    WilliamsonResult williamson;
    GaussianState original_state;     // invariant state of the input
    CVector mean_removed;             // omega of the input
    double abscissa = 0.0;
    double zeta_residual = 0.0;       // |M^#(zeta - 2 Z^# J omega)| before zeroing
    double diagonal_residual = 0.0;   // invariant covariance of params vs diag(nu, nu)
};

// invariant_state -> williamson -> M = G^{-1} -> transform_params, with the
// new linear term checked and then set to zero. Throws ModelError for an
// unstable drift, a non-faithful invariant state or an inconsistent zeta.
StandardizedGenerator standardize(const GeneratorParams& params, const StandardizeOptions& opts = {});

// Parameters of the generator conjugated by the symplectic M:
//   Omega~ = M1^* Omega M1 + M2^T Omega^T conj(M2) + M1^* kappa conj(M2) + M2^T kappa^* M1
//   kappa~ = M1^* Omega M2 + M2^T Omega^T conj(M1) + M1^* kappa conj(M1) + M2^T kappa^* M2
//   U~ = U conj(M1) + conj(V) M2,  V~ = conj(U) M2 + V conj(M1),  zeta~ = M^# zeta
// The result has drift M^{-1} Z M and diffusion M^# C M; both identities are
// checked (NumericalError past 1e-10 relative). Throws ModelError when M is
// not symplectic within tol.
GeneratorParams transform_params(const GeneratorParams& params, const SymplecticParts& m, double tol = 1e-10);

} // namespace gqms
