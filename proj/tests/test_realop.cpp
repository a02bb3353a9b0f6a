// test_realop.cpp — Real-linear operator calculus

#include <doctest.h>

#include <cmath>

#include "gqms/errors.hpp"
#include "gqms/realop.hpp"
#include "gqms/sampling.hpp"

using namespace gqms;

namespace {

RealLinearOp random_op(Index d, sampling::Rng& rng)
{
    return {sampling::complex_normal(d, d, rng), sampling::complex_normal(d, d, rng)};
}

} // namespace

TEST_SUITE("realop") {

TEST_CASE("identification of identity, J and conjugation")
{
    const Index d = 3;
    CHECK(linalg::max_abs(RealLinearOp::identity(d).to_matrix() - RMatrix::Identity(6, 6)) == 0.0);

    RMatrix j_expected = RMatrix::Zero(6, 6);
    j_expected.topRightCorner(3, 3).setIdentity();
    j_expected.bottomLeftCorner(3, 3) = -RMatrix::Identity(3, 3);
    CHECK(linalg::max_abs(RealLinearOp::j(d).to_matrix() - j_expected) == 0.0);
    CHECK(linalg::max_abs(linalg::symplectic_form(d) - j_expected) == 0.0);

    RMatrix conj_expected = RMatrix::Identity(6, 6);
    conj_expected.bottomRightCorner(3, 3) *= -1.0;
    CHECK(linalg::max_abs(RealLinearOp::conjugation(d).to_matrix() - conj_expected) == 0.0);
}

TEST_CASE("from_matrix inverts to_matrix")
{
    const Index d = 2;
    const RealLinearOp id = RealLinearOp::from_matrix(RMatrix::Identity(4, 4));
    CHECK(op_distance(id, RealLinearOp::identity(d)) == 0.0);
    const RealLinearOp j = RealLinearOp::from_matrix(linalg::symplectic_form(d));
    CHECK(op_distance(j, RealLinearOp::j(d)) == 0.0);

    sampling::Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const RealLinearOp op = random_op(3, rng);
        CHECK(op_distance(RealLinearOp::from_matrix(op.to_matrix()), op) <= 1e-14);
    }
    CHECK_THROWS_AS(RealLinearOp::from_matrix(RMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("apply matches the stacked matrix product")
{
    CVector z(2);
    z << cplx(1, 1), cplx(2, 0);
    CHECK(linalg::max_abs(RealLinearOp::identity(2).apply(z) - z) == 0.0);

    CVector w(2);
    w << cplx(1, 0), cplx(0, 1);
    CVector jw(2);
    jw << cplx(0, -1), cplx(1, 0);
    CHECK(linalg::max_abs(RealLinearOp::j(2).apply(w) - jw) <= 1e-15);

    sampling::Rng rng(12);
    for (int k = 0; k < 20; ++k) {
        const RealLinearOp op = random_op(3, rng);
        const CVector x = sampling::complex_normal(3, rng);
        const CVector direct = op.apply(x);
        const CVector via = linalg::unstack(op.to_matrix() * linalg::stack(x));
        CHECK(linalg::scaled_diff(direct, via) <= 1e-13);
    }
    CHECK_THROWS_AS(RealLinearOp::identity(2).apply(CVector::Zero(3)), std::invalid_argument);
}

TEST_CASE("real-linearity of apply")
{
    sampling::Rng rng(13);
    const RealLinearOp op = random_op(3, rng);
    const CVector z = sampling::complex_normal(3, rng);
    const cplx alpha(0.3, -1.7);
    const CVector lhs = op.apply(alpha * z);
    const CVector rhs = alpha * (op.linear() * z) + std::conj(alpha) * (op.antilinear() * z.conjugate());
    CHECK(linalg::scaled_diff(lhs, rhs) <= 1e-14);
}

TEST_CASE("sharp is the adjoint for Re<.,.>")
{
    CHECK(op_distance(RealLinearOp::identity(3).sharp(), RealLinearOp::identity(3)) == 0.0);
    CHECK(op_distance(RealLinearOp::j(3).sharp(), -RealLinearOp::j(3)) == 0.0);

    sampling::Rng rng(14);
    for (int k = 0; k < 20; ++k) {
        const RealLinearOp op = random_op(3, rng);
        CHECK(linalg::max_abs(op.sharp().to_matrix() - op.to_matrix().transpose()) <= 1e-14);
        const CVector y = sampling::complex_normal(3, rng);
        const CVector z = sampling::complex_normal(3, rng);
        const double lhs = op.sharp().apply(y).dot(z).real();
        const double rhs = y.dot(op.apply(z)).real();
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("Re<y, z> equals the dot product of stacked vectors")
{
    sampling::Rng rng(15);
    const CVector y = sampling::complex_normal(4, rng);
    const CVector z = sampling::complex_normal(4, rng);
    CHECK(std::abs(y.dot(z).real() - linalg::stack(y).dot(linalg::stack(z))) <= 1e-14);
}

TEST_CASE("composition, sums and scaling")
{
    const RealLinearOp j = RealLinearOp::j(2);
    CHECK(op_distance(j * j, -RealLinearOp::identity(2)) == 0.0);

    sampling::Rng rng(16);
    for (int k = 0; k < 20; ++k) {
        const RealLinearOp s = random_op(3, rng);
        const RealLinearOp t = random_op(3, rng);
        CHECK(op_distance(s * RealLinearOp::identity(3), s) == 0.0);
        CHECK(linalg::scaled_diff((s * t).to_matrix(), s.to_matrix() * t.to_matrix()) <= 1e-13);
        CHECK(linalg::scaled_diff((s + t).to_matrix(), s.to_matrix() + t.to_matrix()) <= 1e-14);
        CHECK(linalg::scaled_diff((2.5 * s).to_matrix(), 2.5 * s.to_matrix()) <= 1e-14);
    }
    CHECK_THROWS_AS(RealLinearOp::identity(2) * RealLinearOp::identity(3), std::invalid_argument);
    CHECK_THROWS_AS(RealLinearOp::identity(2) + RealLinearOp::identity(3), std::invalid_argument);
}

TEST_CASE("rectangular operators compose like their identifications")
{
    sampling::Rng rng(17);
    const RealLinearOp a(sampling::complex_normal(4, 2, rng), sampling::complex_normal(4, 2, rng));
    CHECK(a.dim() == 2);
    CHECK(a.codim() == 4);
    CHECK(linalg::scaled_diff((a.sharp() * a).to_matrix(), a.to_matrix().transpose() * a.to_matrix()) <= 1e-13);
}

TEST_CASE("symplectic checks")
{
    CHECK(is_symplectic(RealLinearOp::identity(3)));
    CHECK(is_symplectic(RealLinearOp::j(3)));
    for (const double r : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
        const RealLinearOp squeeze(CMatrix::Constant(1, 1, std::cosh(r)), CMatrix::Constant(1, 1, std::sinh(r)));
        CHECK(is_symplectic(squeeze));
        const RealLinearOp inv = inverse_symplectic(squeeze);
        CHECK(std::abs(inv.linear()(0, 0) - std::cosh(r)) <= 1e-15);
        CHECK(std::abs(inv.antilinear()(0, 0) + std::sinh(r)) <= 1e-15);
        CHECK(op_distance(inv * squeeze, RealLinearOp::identity(1)) <= 1e-12);
    }
    CHECK(op_distance(inverse_symplectic(RealLinearOp::identity(2)), RealLinearOp::identity(2)) == 0.0);

    const RealLinearOp not_symplectic = 2.0 * RealLinearOp::identity(2);
    CHECK_FALSE(is_symplectic(not_symplectic));
    CHECK_THROWS_AS(inverse_symplectic(not_symplectic), ModelError);
    CHECK(check_symplectic(not_symplectic).residual > 0.1);
}

TEST_CASE("random symplectic matrices")
{
    sampling::Rng rng(18);
    for (int k = 0; k < 20; ++k) {
        const RealLinearOp m = sampling::random_symplectic(3, rng);
        CHECK(check_symplectic(m).residual <= 1e-12);
        const RMatrix mm = m.to_matrix();
        const RMatrix j = linalg::symplectic_form(3);
        CHECK(linalg::max_abs(mm.transpose() * j * mm - j) <= 1e-12);
        CHECK(is_symplectic(m.sharp()));
        const RealLinearOp inv = inverse_symplectic(m);
        CHECK(is_symplectic(inv));
        CHECK(op_distance(inv * m, RealLinearOp::identity(3)) <= 1e-11);
        CHECK(op_distance(m * inv, RealLinearOp::identity(3)) <= 1e-11);
    }
}

}
