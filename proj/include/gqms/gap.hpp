// gap.hpp — KMS and GNS spectral-gap matrices, existence criteria and the
// dual drift of a standardized Gaussian generator
//
// Everything here assumes the standardized form: the invariant state is
// diagonal with inverse temperatures beta and zero mean. The beta-taking
// overloads are the building blocks; analyze_gaps takes the
// StandardizedGenerator so that beta always comes from the invariant state.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gqms/standardize.hpp"

namespace gqms::gap {

// diag(f(beta_j/2)) repeated over both blocks of the 2d identification
RMatrix d_csch(const RVector& beta);
RMatrix d_coth(const RVector& beta);
RMatrix d_sinh(const RVector& beta);
RMatrix d_cosh(const RVector& beta);

// Z + D_csch^{-1} Z^T D_csch
RMatrix kms_gap_matrix(const RealLinearOp& z, const RVector& beta);
// Z + (D_cosh + i J D_sinh)^{-1} D_csch^{-1} Z^T D_csch (D_cosh + i J D_sinh)
CMatrix gns_gap_matrix(const RealLinearOp& z, const RVector& beta);
// Z^T (D_coth + i J) + (D_coth + i J) Z, Hermitian negative semidefinite
CMatrix gns_alt_matrix(const RealLinearOp& z, const RVector& beta);
// Z^T D_csch + D_csch Z from the drift
RMatrix kms_form_matrix(const RealLinearOp& z, const RVector& beta);

// The same form written through U and V alone:
//   linear (j,k)     -2 (U^T conj U)_jk / (e^{-b_j/2} + e^{-b_k/2}) - 2 (V^T conj V)_jk / (e^{b_j/2} + e^{b_k/2})
//   antilinear (j,k) -2 (U^T V)_jk / (e^{-b_j/2} + e^{b_k/2}) - 2 (V^T U)_jk / (e^{b_j/2} + e^{-b_k/2})
RealLinearOp kms_form_operator(const CMatrix& u, const CMatrix& v, const RVector& beta);

// A_t : C^d -> C^m with
//   linear (j,k)     exp(-e^{-b_k/2} t / 2) conj(u_jk)
//   antilinear (j,k) exp(-e^{ b_k/2} t / 2) v_jk
// so that kms_form_operator = -int_0^inf A_t^# A_t dt.
RealLinearOp a_t_operator(const CMatrix& u, const CMatrix& v, const RVector& beta, double t);

// -int_0^T A_t^# A_t dt by adaptive quadrature, T = 40 max(1, e^{beta_max/2})
// unless given.
RealLinearOp a_t_factorization(const CMatrix& u, const CMatrix& v, const RVector& beta,
                               std::optional<double> horizon = std::nullopt);
double a_t_horizon(const RVector& beta);

// D_csch^{-1} o Z^# o D_csch
RealLinearOp dual_drift(const RealLinearOp& z, const RVector& beta);

// Per class n: rank of [U_n; V_n] against |I_n|.
struct KmsCriterion {
    bool exists = false;
    std::vector<linalg::RankDecision> classes;
    bool borderline() const;
    std::vector<Index> kernel_dims() const;
};

KmsCriterion kms_gap_exists(const CMatrix& u, const CMatrix& v, const TemperaturePartition& partition,
                            double tol = 1e-9);

// rank [U | conj V] == 2d
struct GnsCriterion {
    bool exists = false;
    linalg::RankDecision rank;
    bool borderline() const { return rank.borderline; }
};

GnsCriterion gns_gap_exists(const CMatrix& u, const CMatrix& v, double tol = 1e-9);

// Singularity judged from the ratio of the smallest to the largest magnitude
// (singular values or eigenvalues) against tol, with the factor-10 guard band.
struct SingularityDecision {
    bool singular = false;
    double ratio = 0.0;
    bool borderline = false;
};

SingularityDecision singular_by_svd(const CMatrix& a, double tol);
SingularityDecision zero_eigenvalue(const CVector& eigenvalues, double tol);

// -1/2 max Re(lambda). Throws ModelError when exists is false and
// NumericalError when some eigenvalue has |Im| or Re above eig_tol.
double first_order_gap(const CVector& eigenvalues, bool exists, double eig_tol = 1e-8);

struct GapOptions {
    double rank_tol = 1e-9;
    double eig_tol = 1e-8;
};

struct GapReport {
    RMatrix kms_matrix;
    CMatrix gns_matrix;
    CMatrix gns_alt_matrix;
    RMatrix kms_form;                 // Z^T D_csch + D_csch Z
    RealLinearOp kms_form_closed;     // the U, V expression

    CVector kms_eigenvalues;
    CVector gns_eigenvalues;
    RVector gns_alt_eigenvalues;

    KmsCriterion kms;
    GnsCriterion gns;
    bool kms_exists = false;
    bool gns_exists = false;

    // labelled "first-order restricted": -1/2 max Re over the gap matrix spectrum
    std::optional<double> kms_gap_first_order;
    std::optional<double> gns_gap_first_order;

    // independent cross-checks of each verdict
    SingularityDecision kms_form_singular;
    SingularityDecision kms_matrix_zero;
    SingularityDecision gns_alt_singular;
    SingularityDecision gns_matrix_zero;

    double form_identity_residual = 0.0;   // closed form vs Z^T D_csch + D_csch Z
    double dual_drift_residual = 0.0;      // kms_matrix vs Z + dual drift
    double max_eigen_imag = 0.0;
    double max_eigen_real = 0.0;
    double gns_alt_hermitian_residual = 0.0;

    std::vector<std::string> warnings;

    bool kms_consistent() const;   // verdict agrees with both cross-checks
    bool gns_consistent() const;
    bool borderline() const;
};

GapReport analyze_gaps(const StandardizedGenerator& std_gen, const GapOptions& opts = {});

} // namespace gqms::gap
