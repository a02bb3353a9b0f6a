// realop.cpp — Real-linear operator calculus

#include "gqms/realop.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include "gqms/errors.hpp"

namespace gqms {

RealLinearOp::RealLinearOp(CMatrix linear, CMatrix antilinear)
    : linear_(std::move(linear)), antilinear_(std::move(antilinear))
{
    if (linear_.rows() != antilinear_.rows() || linear_.cols() != antilinear_.cols()) {
        throw std::invalid_argument("RealLinearOp: linear and antilinear parts differ in shape");
    }
}

RealLinearOp RealLinearOp::identity(Index d)
{
    return {CMatrix::Identity(d, d), CMatrix::Zero(d, d)};
}

RealLinearOp RealLinearOp::zero(Index rows, Index cols)
{
    return {CMatrix::Zero(rows, cols), CMatrix::Zero(rows, cols)};
}

RealLinearOp RealLinearOp::j(Index d)
{
    return {cplx(0.0, -1.0) * CMatrix::Identity(d, d), CMatrix::Zero(d, d)};
}

RealLinearOp RealLinearOp::conjugation(Index d)
{
    return {CMatrix::Zero(d, d), CMatrix::Identity(d, d)};
}

RealLinearOp RealLinearOp::diagonal(const RVector& entries)
{
    const Index d = entries.size();
    return {entries.cast<cplx>().asDiagonal(), CMatrix::Zero(d, d)};
}

RealLinearOp RealLinearOp::from_matrix(const RMatrix& m)
{
    if (m.rows() % 2 != 0 || m.cols() % 2 != 0) {
        throw std::invalid_argument("from_matrix: identification must have even dimensions");
    }
    const Index r = m.rows() / 2;
    const Index c = m.cols() / 2;
    const RMatrix s11 = m.topLeftCorner(r, c);
    const RMatrix s12 = m.topRightCorner(r, c);
    const RMatrix s21 = m.bottomLeftCorner(r, c);
    const RMatrix s22 = m.bottomRightCorner(r, c);

    CMatrix linear(r, c);
    linear.real() = 0.5 * (s11 + s22);
    linear.imag() = 0.5 * (s21 - s12);
    CMatrix antilinear(r, c);
    antilinear.real() = 0.5 * (s11 - s22);
    antilinear.imag() = 0.5 * (s12 + s21);
    return {std::move(linear), std::move(antilinear)};
}

RMatrix RealLinearOp::to_matrix() const
{
    const Index r = codim();
    const Index c = dim();
    RMatrix m(2 * r, 2 * c);
    m.topLeftCorner(r, c) = linear_.real() + antilinear_.real();
    m.topRightCorner(r, c) = antilinear_.imag() - linear_.imag();
    m.bottomLeftCorner(r, c) = linear_.imag() + antilinear_.imag();
    m.bottomRightCorner(r, c) = linear_.real() - antilinear_.real();
    return m;
}

CVector RealLinearOp::apply(const CVector& z) const
{
    if (z.size() != dim()) {
        std::ostringstream msg;
        msg << "apply: vector of length " << z.size() << " for operator on C^" << dim();
        throw std::invalid_argument(msg.str());
    }
    return linear_ * z + antilinear_ * z.conjugate();
}

RealLinearOp RealLinearOp::sharp() const
{
    return {linear_.adjoint(), antilinear_.transpose()};
}

RealLinearOp RealLinearOp::compose(const RealLinearOp& other) const
{
    if (dim() != other.codim()) {
        throw std::invalid_argument("compose: inner dimensions do not match");
    }
    // (S o T) z = (S1 T1 + S2 conj(T2)) z + (S1 T2 + S2 conj(T1)) conj(z)
    return {linear_ * other.linear_ + antilinear_ * other.antilinear_.conjugate(),
            linear_ * other.antilinear_ + antilinear_ * other.linear_.conjugate()};
}

void RealLinearOp::require_same_shape(const RealLinearOp& other, const char* what) const
{
    if (dim() != other.dim() || codim() != other.codim()) {
        throw std::invalid_argument(std::string(what) + ": operator shapes differ");
    }
}

RealLinearOp RealLinearOp::operator+(const RealLinearOp& other) const
{
    require_same_shape(other, "add");
    return {linear_ + other.linear_, antilinear_ + other.antilinear_};
}

RealLinearOp RealLinearOp::operator-(const RealLinearOp& other) const
{
    require_same_shape(other, "subtract");
    return {linear_ - other.linear_, antilinear_ - other.antilinear_};
}

RealLinearOp RealLinearOp::operator-() const
{
    return {-linear_, -antilinear_};
}

RealLinearOp operator*(double s, const RealLinearOp& op)
{
    return {s * op.linear_, s * op.antilinear_};
}

double op_distance(const RealLinearOp& a, const RealLinearOp& b)
{
    if (a.dim() != b.dim() || a.codim() != b.codim()) {
        throw std::invalid_argument("op_distance: operator shapes differ");
    }
    return std::max(linalg::scaled_diff(a.linear(), b.linear()),
                    linalg::scaled_diff(a.antilinear(), b.antilinear()));
}

SymplecticCheck check_symplectic(const RealLinearOp& op, double tol)
{
    SymplecticCheck out;
    if (!op.is_square()) {
        out.residual = std::numeric_limits<double>::infinity();
        return out;
    }
    const Index d = op.dim();
    const CMatrix& m1 = op.linear();
    const CMatrix& m2 = op.antilinear();
    const CMatrix id = CMatrix::Identity(d, d);

    double res = 0.0;
    res = std::max(res, linalg::max_abs(m1.adjoint() * m1 - m2.transpose() * m2.conjugate() - id));
    res = std::max(res, linalg::max_abs(m2.transpose() * m1.conjugate() - m1.adjoint() * m2));
    res = std::max(res, linalg::max_abs(m1 * m1.adjoint() - m2 * m2.adjoint() - id));
    res = std::max(res, linalg::max_abs(m1 * m2.transpose() - m2 * m1.transpose()));

    const RMatrix m = op.to_matrix();
    const RMatrix j = linalg::symplectic_form(d);
    res = std::max(res, linalg::max_abs(m.transpose() * j * m - j));

    const double scale = std::max(1.0, linalg::max_abs(m) * linalg::max_abs(m));
    out.residual = res / scale;
    out.symplectic = out.residual <= tol;
    return out;
}

RealLinearOp inverse_symplectic(const RealLinearOp& op, double tol)
{
    const SymplecticCheck check = check_symplectic(op, tol);
    if (!check.symplectic) {
        std::ostringstream msg;
        msg << "inverse_symplectic: operator is not symplectic (residual " << check.residual << ")";
        throw ModelError(msg.str(), check.residual);
    }
    return {op.linear().adjoint(), -op.antilinear().transpose()};
}

} // namespace gqms
