// standardize.cpp — Standardization of Gaussian generators

#include "gqms/standardize.hpp"

#include <sstream>

#include "gqms/errors.hpp"

namespace gqms {

GeneratorParams transform_params(const GeneratorParams& params, const SymplecticParts& m, double tol)
{
    const RealLinearOp mop = m.op();
    if (mop.dim() != params.modes() || !mop.is_square()) {
        throw std::invalid_argument("transform_params: symplectic transformation has the wrong dimension");
    }
    const SymplecticCheck check = check_symplectic(mop, tol);
    if (!check.symplectic) {
        std::ostringstream msg;
        msg << "transform_params: M is not symplectic (residual " << check.residual << ")";
        throw ModelError(msg.str(), check.residual);
    }

    const CMatrix& m1 = m.m1;
    const CMatrix& m2 = m.m2;
    const CMatrix& om = params.omega();
    const CMatrix& ka = params.kappa();
    const CMatrix& u = params.u();
    const CMatrix& v = params.v();

    CMatrix omega = m1.adjoint() * om * m1 + m2.transpose() * om.transpose() * m2.conjugate()
                    + m1.adjoint() * ka * m2.conjugate() + m2.transpose() * ka.adjoint() * m1;
    CMatrix kappa = m1.adjoint() * om * m2 + m2.transpose() * om.transpose() * m1.conjugate()
                    + m1.adjoint() * ka * m1.conjugate() + m2.transpose() * ka.adjoint() * m2;
    CMatrix ut = u * m1.conjugate() + v.conjugate() * m2;
    CMatrix vt = u.conjugate() * m2 + v * m1.conjugate();
    CVector zeta = mop.sharp().apply(params.zeta());

    GeneratorParams out = GeneratorParams::create(std::move(omega), std::move(kappa), std::move(ut),
                                                  std::move(vt), std::move(zeta));

    // drift M^{-1} Z M and diffusion M^# C M
    const RMatrix mm = mop.to_matrix();
    const RMatrix minv = inverse_symplectic(mop, tol).to_matrix();
    const RMatrix z_expected = minv * drift(params).to_matrix() * mm;
    const RMatrix c_expected = mm.transpose() * diffusion(params).to_matrix() * mm;
    const double mscale = std::max(1.0, linalg::max_abs(mm) * linalg::max_abs(mm));
    const double z_res = linalg::scaled_diff(drift(out).to_matrix(), z_expected) / mscale;
    const double c_res = linalg::scaled_diff(diffusion(out).to_matrix(), c_expected) / mscale;
    if (z_res > 1e-10 || c_res > 1e-10) {
        std::ostringstream msg;
        msg << "transform_params: transformed drift/diffusion residuals " << z_res << ", " << c_res;
        throw NumericalError(msg.str(), std::max(z_res, c_res));
    }
    return out;
}

StandardizedGenerator standardize(const GeneratorParams& params, const StandardizeOptions& opts)
{
    StandardizedGenerator out;
    const RealLinearOp z = drift(params);
    const StabilityReport st = is_stable(z, opts.stability_margin);
    out.abscissa = st.abscissa;
    if (!st.stable) {
        std::ostringstream msg;
        msg << "standardize: drift spectral abscissa " << st.abscissa << " is not below -"
            << opts.stability_margin;
        throw ModelError(msg.str(), st.abscissa);
    }

    out.original_state = invariant_state(params);
    out.mean_removed = out.original_state.mean;
    out.williamson = williamson(out.original_state.covariance.to_matrix(), opts.faithful_tol);
    out.beta = out.williamson.beta;
    out.partition = temperature_partition(out.beta, opts.temperature_tol);

    const RealLinearOp mop = RealLinearOp::from_matrix(out.williamson.inverse());
    out.m_parts = SymplecticParts::from_op(mop);

    const GeneratorParams transformed = transform_params(params, out.m_parts, 1e-9);

    // zeta~ = M^# (zeta - 2 Z^# J omega) vanishes for the invariant mean
    const CVector jw = RealLinearOp::j(params.modes()).apply(out.mean_removed);
    const CVector shifted = params.zeta() - 2.0 * z.sharp().apply(jw);
    const CVector zeta_t = mop.sharp().apply(shifted);
    out.zeta_residual = linalg::max_abs(zeta_t) / std::max(1.0, linalg::max_abs(transformed.zeta()));
    if (out.zeta_residual > opts.zeta_tol) {
        std::ostringstream msg;
        msg << "standardize: transformed linear term does not vanish (residual " << out.zeta_residual << ")";
        throw ModelError(msg.str(), out.zeta_residual);
    }
    out.params = transformed.with_zeta(CVector::Zero(params.modes()));

    const RMatrix s_std = solve_lyapunov(drift(out.params), diffusion(out.params)).to_matrix();
    out.diagonal_residual = linalg::max_abs(s_std - out.williamson.diagonal())
                            / std::max(1.0, out.williamson.nu.maxCoeff());
    if (out.diagonal_residual > 1e-8) {
        std::ostringstream msg;
        msg << "standardize: invariant covariance of the standardized generator is off diagonal form by "
            << out.diagonal_residual;
        throw NumericalError(msg.str(), out.diagonal_residual);
    }
    return out;
}

} // namespace gqms
