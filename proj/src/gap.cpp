// gap.cpp — Spectral-gap matrices and existence criteria

#include "gqms/gap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gqms/errors.hpp"
#include "gqms/quadrature.hpp"

namespace gqms::gap {

namespace {

void require_beta(const RVector& beta, Index d, const char* who)
{
    if (beta.size() != d) {
        throw std::invalid_argument(std::string(who) + ": beta has the wrong length");
    }
    for (Index j = 0; j < d; ++j) {
        if (!(beta(j) > 0.0) || !std::isfinite(beta(j))) {
            throw std::invalid_argument(std::string(who) + ": inverse temperatures must be positive and finite");
        }
    }
}

template <typename F>
RMatrix doubled_diagonal(const RVector& beta, F f)
{
    const Index d = beta.size();
    RVector diag(2 * d);
    for (Index j = 0; j < d; ++j) {
        diag(j) = diag(j + d) = f(0.5 * beta(j));
    }
    return diag.asDiagonal();
}

RVector csch_entries(const RVector& beta)
{
    return beta.unaryExpr([](double b) { return 1.0 / std::sinh(0.5 * b); });
}

} // namespace

RMatrix d_csch(const RVector& beta)
{
    return doubled_diagonal(beta, [](double x) { return 1.0 / std::sinh(x); });
}

RMatrix d_coth(const RVector& beta)
{
    return doubled_diagonal(beta, [](double x) { return 1.0 / std::tanh(x); });
}

RMatrix d_sinh(const RVector& beta)
{
    return doubled_diagonal(beta, [](double x) { return std::sinh(x); });
}

RMatrix d_cosh(const RVector& beta)
{
    return doubled_diagonal(beta, [](double x) { return std::cosh(x); });
}

RMatrix kms_gap_matrix(const RealLinearOp& z, const RVector& beta)
{
    require_beta(beta, z.dim(), "kms_gap_matrix");
    const RMatrix zm = z.to_matrix();
    const RVector csch = d_csch(beta).diagonal();
    // D^{-1} Z^T D with D diagonal
    const RMatrix conj = csch.cwiseInverse().asDiagonal() * zm.transpose() * csch.asDiagonal();
    return zm + conj;
}

CMatrix gns_gap_matrix(const RealLinearOp& z, const RVector& beta)
{
    require_beta(beta, z.dim(), "gns_gap_matrix");
    const Index d = z.dim();
    const CMatrix zm = z.to_matrix().cast<cplx>();
    const CMatrix j = linalg::symplectic_form(d).cast<cplx>();
    const CMatrix csch = d_csch(beta).cast<cplx>();
    const CMatrix csch_inv = d_csch(beta).diagonal().cwiseInverse().asDiagonal().toDenseMatrix().cast<cplx>();
    const CMatrix k = d_cosh(beta).cast<cplx>() + cplx(0.0, 1.0) * j * d_sinh(beta).cast<cplx>();
    Eigen::PartialPivLU<CMatrix> lu(k);
    return zm + lu.solve(csch_inv * zm.transpose() * csch * k);
}

CMatrix gns_alt_matrix(const RealLinearOp& z, const RVector& beta)
{
    require_beta(beta, z.dim(), "gns_alt_matrix");
    const Index d = z.dim();
    const CMatrix zm = z.to_matrix().cast<cplx>();
    const CMatrix h = d_coth(beta).cast<cplx>() + cplx(0.0, 1.0) * linalg::symplectic_form(d).cast<cplx>();
    return zm.transpose() * h + h * zm;
}

RMatrix kms_form_matrix(const RealLinearOp& z, const RVector& beta)
{
    require_beta(beta, z.dim(), "kms_form_matrix");
    const RMatrix zm = z.to_matrix();
    const RMatrix dc = d_csch(beta);
    return zm.transpose() * dc + dc * zm;
}

RealLinearOp kms_form_operator(const CMatrix& u, const CMatrix& v, const RVector& beta)
{
    const Index d = u.cols();
    if (v.cols() != d || v.rows() != u.rows()) {
        throw std::invalid_argument("kms_form_operator: U and V must have the same shape");
    }
    require_beta(beta, d, "kms_form_operator");
    const CMatrix uu = u.transpose() * u.conjugate();
    const CMatrix vv = v.transpose() * v.conjugate();
    const CMatrix uv = u.transpose() * v;
    const CMatrix vu = v.transpose() * u;
    const RVector em = (-0.5 * beta).array().exp();
    const RVector ep = (0.5 * beta).array().exp();

    CMatrix linear(d, d);
    CMatrix antilinear(d, d);
    for (Index j = 0; j < d; ++j) {
        for (Index k = 0; k < d; ++k) {
            linear(j, k) = -2.0 * uu(j, k) / (em(j) + em(k)) - 2.0 * vv(j, k) / (ep(j) + ep(k));
            antilinear(j, k) = -2.0 * uv(j, k) / (em(j) + ep(k)) - 2.0 * vu(j, k) / (ep(j) + em(k));
        }
    }
    return {std::move(linear), std::move(antilinear)};
}

RealLinearOp a_t_operator(const CMatrix& u, const CMatrix& v, const RVector& beta, double t)
{
    const Index d = u.cols();
    if (v.cols() != d || v.rows() != u.rows()) {
        throw std::invalid_argument("a_t_operator: U and V must have the same shape");
    }
    if (!(t >= 0.0)) {
        throw std::invalid_argument("a_t_operator: t must be nonnegative");
    }
    require_beta(beta, d, "a_t_operator");
    CMatrix linear = u.conjugate();
    CMatrix antilinear = v;
    for (Index k = 0; k < d; ++k) {
        linear.col(k) *= std::exp(-std::exp(-0.5 * beta(k)) * t / 2.0);
        antilinear.col(k) *= std::exp(-std::exp(0.5 * beta(k)) * t / 2.0);
    }
    return {std::move(linear), std::move(antilinear)};
}

double a_t_horizon(const RVector& beta)
{
    return 40.0 * std::max(1.0, std::exp(0.5 * beta.maxCoeff()));
}

RealLinearOp a_t_factorization(const CMatrix& u, const CMatrix& v, const RVector& beta,
                               std::optional<double> horizon)
{
    require_beta(beta, u.cols(), "a_t_factorization");
    const double t_max = horizon.value_or(a_t_horizon(beta));
    auto integrand = [&](double t) -> RMatrix {
        const RealLinearOp a = a_t_operator(u, v, beta, t);
        return a.sharp().compose(a).to_matrix();
    };
    quadrature::Options opts;
    const double scale = std::max(1.0, linalg::max_abs(u) + linalg::max_abs(v));
    opts.abs_tol = 1e-10 * scale * scale;
    opts.rel_tol = 1e-12;
    opts.initial_intervals = 16;
    const RMatrix integral = quadrature::integrate(integrand, 0.0, t_max, opts).value;
    return RealLinearOp::from_matrix(-integral);
}

RealLinearOp dual_drift(const RealLinearOp& z, const RVector& beta)
{
    require_beta(beta, z.dim(), "dual_drift");
    const RVector csch = csch_entries(beta);
    const RealLinearOp d = RealLinearOp::diagonal(csch);
    const RealLinearOp d_inv = RealLinearOp::diagonal(csch.cwiseInverse());
    return d_inv * z.sharp() * d;
}

bool KmsCriterion::borderline() const
{
    return std::any_of(classes.begin(), classes.end(), [](const auto& c) { return c.borderline; });
}

std::vector<Index> KmsCriterion::kernel_dims() const
{
    std::vector<Index> out;
    for (const auto& c : classes) {
        out.push_back(c.kernel_dim());
    }
    return out;
}

KmsCriterion kms_gap_exists(const CMatrix& u, const CMatrix& v, const TemperaturePartition& partition,
                            double tol)
{
    const Index d = u.cols();
    if (v.cols() != d || v.rows() != u.rows()) {
        throw std::invalid_argument("kms_gap_exists: U and V must have the same shape");
    }
    Index covered = 0;
    KmsCriterion out;
    out.exists = true;
    for (const auto& cls : partition.classes) {
        const auto n = static_cast<Index>(cls.size());
        CMatrix stacked(2 * u.rows(), n);
        for (Index c = 0; c < n; ++c) {
            const Index idx = cls[static_cast<std::size_t>(c)];
            if (idx < 0 || idx >= d) {
                throw std::invalid_argument("kms_gap_exists: partition index out of range");
            }
            stacked.col(c) << u.col(idx), v.col(idx);
        }
        covered += n;
        out.classes.push_back(linalg::numerical_rank(stacked, tol));
        if (!out.classes.back().full_column_rank()) {
            out.exists = false;
        }
    }
    if (covered != d) {
        throw std::invalid_argument("kms_gap_exists: partition does not cover every mode");
    }
    return out;
}

GnsCriterion gns_gap_exists(const CMatrix& u, const CMatrix& v, double tol)
{
    const Index d = u.cols();
    if (v.cols() != d || v.rows() != u.rows()) {
        throw std::invalid_argument("gns_gap_exists: U and V must have the same shape");
    }
    CMatrix joined(u.rows(), 2 * d);
    joined << u, v.conjugate();
    GnsCriterion out;
    out.rank = linalg::numerical_rank(joined, tol);
    out.exists = out.rank.rank == 2 * d;
    return out;
}

SingularityDecision singular_by_svd(const CMatrix& a, double tol)
{
    SingularityDecision out;
    const RVector sigma = linalg::singular_values(a);
    if (sigma.size() == 0 || sigma(0) == 0.0) {
        out.singular = true;
        return out;
    }
    out.ratio = sigma(sigma.size() - 1) / sigma(0);
    out.singular = out.ratio <= tol;
    out.borderline = linalg::within_guard_band(out.ratio, tol);
    return out;
}

SingularityDecision zero_eigenvalue(const CVector& eigenvalues, double tol)
{
    SingularityDecision out;
    if (eigenvalues.size() == 0) {
        return out;
    }
    const RVector mags = eigenvalues.cwiseAbs();
    const double top = mags.maxCoeff();
    if (top == 0.0) {
        out.singular = true;
        return out;
    }
    out.ratio = mags.minCoeff() / top;
    out.singular = out.ratio <= tol;
    out.borderline = linalg::within_guard_band(out.ratio, tol);
    return out;
}

double first_order_gap(const CVector& eigenvalues, bool exists, double eig_tol)
{
    if (!exists) {
        throw ModelError("first_order_gap: no spectral gap for this embedding", 0.0);
    }
    const double scale = std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
    const double imag = eigenvalues.imag().cwiseAbs().maxCoeff();
    const double top = eigenvalues.real().maxCoeff();
    if (imag > eig_tol * scale || top > eig_tol * scale) {
        std::ostringstream msg;
        msg << "first_order_gap: gap matrix spectrum is not real nonpositive (max |Im| " << imag
            << ", max Re " << top << ")";
        throw NumericalError(msg.str(), std::max(imag, top));
    }
    return -0.5 * top;
}

bool GapReport::kms_consistent() const
{
    return kms_exists == !kms_form_singular.singular && kms_exists == !kms_matrix_zero.singular;
}

bool GapReport::gns_consistent() const
{
    return gns_exists == !gns_alt_singular.singular && gns_exists == !gns_matrix_zero.singular;
}

bool GapReport::borderline() const
{
    return kms.borderline() || gns.borderline() || kms_form_singular.borderline || kms_matrix_zero.borderline
           || gns_alt_singular.borderline || gns_matrix_zero.borderline;
}

GapReport analyze_gaps(const StandardizedGenerator& std_gen, const GapOptions& opts)
{
    const GeneratorParams& p = std_gen.params;
    const RVector& beta = std_gen.beta;
    const RealLinearOp z = drift(p);

    GapReport r;
    r.kms_matrix = kms_gap_matrix(z, beta);
    r.gns_matrix = gns_gap_matrix(z, beta);
    r.gns_alt_matrix = gns_alt_matrix(z, beta);
    r.kms_form = kms_form_matrix(z, beta);
    r.kms_form_closed = kms_form_operator(p.u(), p.v(), beta);

    r.kms_eigenvalues = linalg::eigenvalues(r.kms_matrix);
    r.gns_eigenvalues = linalg::eigenvalues(r.gns_matrix);
    const CMatrix alt_h = 0.5 * (r.gns_alt_matrix + r.gns_alt_matrix.adjoint());
    r.gns_alt_hermitian_residual = linalg::max_abs(r.gns_alt_matrix - alt_h)
                                   / std::max(1.0, linalg::max_abs(r.gns_alt_matrix));
    Eigen::SelfAdjointEigenSolver<CMatrix> alt_eig(alt_h, Eigen::EigenvaluesOnly);
    if (alt_eig.info() != Eigen::Success) {
        throw NumericalError("analyze_gaps: Hermitian eigensolver failed on the GNS form", 0.0);
    }
    r.gns_alt_eigenvalues = alt_eig.eigenvalues();

    r.kms = kms_gap_exists(p.u(), p.v(), std_gen.partition, opts.rank_tol);
    r.gns = gns_gap_exists(p.u(), p.v(), opts.rank_tol);
    r.kms_exists = r.kms.exists;
    r.gns_exists = r.gns.exists;

    r.kms_form_singular = singular_by_svd(r.kms_form.cast<cplx>(), opts.rank_tol);
    r.kms_matrix_zero = zero_eigenvalue(r.kms_eigenvalues, opts.rank_tol);
    r.gns_alt_singular = singular_by_svd(r.gns_alt_matrix, opts.rank_tol);
    r.gns_matrix_zero = zero_eigenvalue(r.gns_eigenvalues, opts.rank_tol);

    r.form_identity_residual = linalg::scaled_diff(r.kms_form_closed.to_matrix(), r.kms_form);
    r.dual_drift_residual = linalg::scaled_diff(r.kms_matrix, z.to_matrix() + dual_drift(z, beta).to_matrix());
    r.max_eigen_imag = std::max(r.kms_eigenvalues.imag().cwiseAbs().maxCoeff(),
                                r.gns_eigenvalues.imag().cwiseAbs().maxCoeff());
    r.max_eigen_real = std::max(r.kms_eigenvalues.real().maxCoeff(), r.gns_eigenvalues.real().maxCoeff());

    if (r.kms_exists) {
        r.kms_gap_first_order = first_order_gap(r.kms_eigenvalues, true, opts.eig_tol);
    }
    if (r.gns_exists) {
        r.gns_gap_first_order = first_order_gap(r.gns_eigenvalues, true, opts.eig_tol);
    }

    for (const auto& w : std_gen.partition.warnings) {
        r.warnings.push_back("temperature partition: " + w);
    }
    if (r.kms.borderline()) {
        r.warnings.push_back("KMS rank decision within a factor 10 of the rank tolerance");
    }
    if (r.gns.borderline()) {
        r.warnings.push_back("GNS rank decision within a factor 10 of the rank tolerance");
    }
    if (!r.borderline()) {
        if (!r.kms_consistent()) {
            r.warnings.push_back("KMS verdict disagrees with the gap-matrix cross-checks");
        }
        if (!r.gns_consistent()) {
            r.warnings.push_back("GNS verdict disagrees with the gap-matrix cross-checks");
        }
    }
    return r;
}

} // namespace gqms::gap
