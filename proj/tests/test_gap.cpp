// test_gap.cpp — KMS/GNS gap matrices, existence criteria and the A_t factorization

#include <doctest.h>

#include <cmath>

#include "gqms/errors.hpp"
#include "gqms/gap.hpp"
#include "gqms/models.hpp"
#include "gqms/sampling.hpp"

using namespace gqms;

namespace {

const double kLn4 = std::log(4.0);

} // namespace

TEST_SUITE("gap") {

TEST_CASE("doubled diagonals")
{
    RVector beta(2);
    beta << kLn4, std::log(2.0);
    RVector expected(4);
    expected << 4.0 / 3.0, 2.0 * std::sqrt(2.0), 4.0 / 3.0, 2.0 * std::sqrt(2.0);
    CHECK(linalg::max_abs(gap::d_csch(beta).diagonal() - expected) <= 1e-14);
    CHECK(std::abs(gap::d_coth(beta)(1, 1) - 3.0) <= 1e-14);
    const RMatrix c = gap::d_cosh(beta), s = gap::d_sinh(beta);
    CHECK(linalg::max_abs(c * c - s * s - RMatrix::Identity(4, 4)) <= 1e-14);
}

TEST_CASE("OU gap matrices")
{
    const GeneratorParams p = models::ou_params(kLn4);
    const RealLinearOp z = drift(p);
    RVector beta(1);
    beta << kLn4;
    CHECK(linalg::max_abs(gap::kms_gap_matrix(z, beta) + RMatrix::Identity(2, 2)) <= 1e-14);
    CHECK(linalg::max_abs(gap::gns_gap_matrix(z, beta) + CMatrix::Identity(2, 2)) <= 1e-14);
    CHECK(linalg::max_abs(gap::kms_form_matrix(z, beta) + (4.0 / 3.0) * RMatrix::Identity(2, 2)) <= 1e-14);

    const CMatrix alt = gap::gns_alt_matrix(z, beta);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(alt);
    RVector expected(2);
    expected << -8.0 / 3.0, -2.0 / 3.0;
    CHECK(linalg::max_abs(es.eigenvalues() - expected) <= 1e-14);

    const gap::GapReport r = gap::analyze_gaps(standardize(p));
    CHECK(r.kms_exists);
    CHECK(r.gns_exists);
    REQUIRE(r.kms_gap_first_order.has_value());
    REQUIRE(r.gns_gap_first_order.has_value());
    CHECK(std::abs(*r.kms_gap_first_order - 0.5) <= 1e-12);
    CHECK(std::abs(*r.gns_gap_first_order - 0.5) <= 1e-12);
    CHECK(r.kms_consistent());
    CHECK(r.gns_consistent());
}

TEST_CASE("two-mode example: equal temperatures, no KMS gap")
{
    const double u = 1.0, v = 2.0;
    const GeneratorParams p = models::two_mode_example_params(u, v, 1.0, 0.0, 2.0);
    const RealLinearOp z = drift(p);
    RVector beta = RVector::Constant(2, std::log(v * v / (u * u)));

    const RMatrix zm = z.to_matrix();
    const RMatrix sym = zm.transpose() + zm;
    CHECK(linalg::max_abs(gap::kms_form_matrix(z, beta) - (2 * u * v / (v * v - u * u)) * sym) <= 1e-13);
    RVector k1(4), k2(4);
    k1 << 1, -1, 0, 0;
    k2 << 0, 0, 1, -1;
    CHECK(linalg::max_abs(sym * k1) <= 1e-14);
    CHECK(linalg::max_abs(sym * k2) <= 1e-14);

    const StandardizedGenerator sg = standardize(p);
    CHECK(sg.partition.size() == 1);
    CHECK(std::abs(sg.beta(0) - std::log(4.0)) <= 1e-12);
    const gap::GapReport r = gap::analyze_gaps(sg);
    CHECK_FALSE(r.kms_exists);
    CHECK(r.kms.kernel_dims() == std::vector<Index>{1});
    CHECK_FALSE(r.gns_exists);
    CHECK_FALSE(r.kms_gap_first_order.has_value());
    CHECK(r.kms_form_singular.singular);
    CHECK(r.kms_matrix_zero.singular);
    CHECK(r.kms_consistent());
    CHECK(r.gns_consistent());
}

TEST_CASE("boson chain: KMS gap but no GNS gap")
{
    const gap::GapReport r = gap::analyze_gaps(standardize(models::boson_chain_params({})));
    CHECK(r.kms_exists);
    CHECK_FALSE(r.gns_exists);
    CHECK(r.gns.rank.rank == 4);
    CHECK(r.kms_consistent());
    CHECK(r.gns_consistent());
    REQUIRE(r.kms_gap_first_order.has_value());
    CHECK(*r.kms_gap_first_order > 0.0);
}

TEST_CASE("GNS criterion")
{
    sampling::Rng rng(401);
    const Index d = 2;
    const CMatrix u = sampling::complex_normal(2 * d, d, rng);
    const CMatrix v = sampling::complex_normal(2 * d, d, rng);
    CHECK(gap::gns_gap_exists(u, v).exists);
    const CMatrix real_u = u.real().cast<cplx>();
    CHECK_FALSE(gap::gns_gap_exists(real_u, real_u).exists);
    CHECK_FALSE(gap::gns_gap_exists(u.topRows(3), v.topRows(3)).exists);
}

TEST_CASE("KMS criterion per temperature class")
{
    RVector beta(3);
    beta << 1.0, 1.0, 2.0;
    const TemperaturePartition part = temperature_partition(beta);
    CMatrix u = CMatrix::Zero(2, 3), v = CMatrix::Zero(2, 3);
    u(0, 0) = 1.0;
    u(0, 2) = 1.0;
    v(1, 1) = 1.0;
    CHECK(gap::kms_gap_exists(u, v, part).exists);
    v(1, 1) = 0.0;
    v(1, 0) = 2.0;
    const gap::KmsCriterion c = gap::kms_gap_exists(u, v, part);
    CHECK_FALSE(c.exists);
    CHECK(c.kernel_dims() == std::vector<Index>{0, 1});
}

TEST_CASE("closed-form KMS form and dual drift on standardized random instances")
{
    sampling::Rng rng(402);
    for (int k = 0; k < 30; ++k) {
        const Index d = 1 + k % 3;
        const StandardizedGenerator sg = standardize(sampling::random_stable_params(d, rng).params);
        const RealLinearOp z = drift(sg.params);
        const RMatrix form = gap::kms_form_matrix(z, sg.beta);
        const RMatrix closed = gap::kms_form_operator(sg.params.u(), sg.params.v(), sg.beta).to_matrix();
        CHECK(linalg::scaled_diff(closed, form) <= 1e-9);
        const RMatrix dcsch = gap::d_csch(sg.beta);
        const RMatrix dual = dcsch.inverse() * z.to_matrix().transpose() * dcsch;
        CHECK(linalg::scaled_diff(gap::dual_drift(z, sg.beta).to_matrix(), dual) <= 1e-12);
        CHECK(linalg::scaled_diff(gap::kms_gap_matrix(z, sg.beta), z.to_matrix() + dual) <= 1e-12);
        // the form is negative semidefinite
        Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (form + form.transpose()));
        CHECK(es.eigenvalues().maxCoeff() <= 1e-10 * std::max(1.0, linalg::max_abs(form)));
    }
}

TEST_CASE("A_t factorization reproduces the KMS form")
{
    sampling::Rng rng(403);
    for (int k = 0; k < 4; ++k) {
        const Index d = 1 + k % 2;
        const CMatrix u = sampling::complex_normal(2, d, rng);
        const CMatrix v = sampling::complex_normal(2, d, rng);
        RVector beta(d);
        for (Index j = 0; j < d; ++j) {
            beta(j) = 0.5 + 1.5 * static_cast<double>(j);
        }
        const RMatrix closed = gap::kms_form_operator(u, v, beta).to_matrix();
        const RMatrix quad = gap::a_t_factorization(u, v, beta).to_matrix();
        CHECK(linalg::scaled_diff(quad, closed) <= 1e-6);
    }
}

TEST_CASE("singularity decisions")
{
    CVector e(3);
    e << cplx(-1, 0), cplx(-1e-12, 0), cplx(-2, 0);
    CHECK(gap::zero_eigenvalue(e, 1e-9).singular);
    e(1) = -0.3;
    CHECK_FALSE(gap::zero_eigenvalue(e, 1e-9).singular);
    e(1) = -5e-9;
    CHECK(gap::zero_eigenvalue(e, 1e-9).borderline);
    CHECK_THROWS_AS(gap::first_order_gap(e, false), ModelError);
    CHECK(std::abs(gap::first_order_gap(e, true) - 2.5e-9) <= 1e-20);
}

TEST_CASE("alternative GNS matrix is Hermitian and negative semidefinite")
{
    sampling::Rng rng(404);
    for (int k = 0; k < 20; ++k) {
        const Index d = 1 + k % 3;
        const StandardizedGenerator sg = standardize(sampling::random_stable_params(d, rng).params);
        const CMatrix alt = gap::gns_alt_matrix(drift(sg.params), sg.beta);
        CHECK(linalg::max_abs(alt - alt.adjoint()) <= 1e-10 * std::max(1.0, linalg::max_abs(alt)));
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (alt + alt.adjoint()));
        CHECK(es.eigenvalues().maxCoeff() <= 1e-9 * std::max(1.0, linalg::max_abs(alt)));
    }
}

}
