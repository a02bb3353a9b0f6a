// realop.hpp — Real-linear operators z -> S1 z + S2 conj(z) and their real
// matrix identifications
//
// A real-linear operator from C^n to C^m is stored as the complex pair
// (S1, S2), both m x n. Its identification on R^{2n} -> R^{2m} acts on the
// stacked vector (Re z; Im z):
//
//     [ Re S1 + Re S2   Im S2 - Im S1 ]
//     [ Im S1 + Im S2   Re S1 - Re S2 ]
//
// Every module shares this stacking convention.

#pragma once

#include "gqms/linalg.hpp"

namespace gqms {

class RealLinearOp {
public:
    RealLinearOp() = default;
    RealLinearOp(CMatrix linear, CMatrix antilinear);

    static RealLinearOp identity(Index d);
    static RealLinearOp zero(Index rows, Index cols);
    static RealLinearOp zero(Index d) { return zero(d, d); }
    // J : z -> -i z
    static RealLinearOp j(Index d);
    static RealLinearOp conjugation(Index d);
    // Diagonal complex-linear operator with real entries.
    static RealLinearOp diagonal(const RVector& entries);

    // Inverse of the identification; the matrix must have even dimensions.
    static RealLinearOp from_matrix(const RMatrix& m);

    // Domain dimension (n) and codomain dimension (m).
    Index dim() const { return linear_.cols(); }
    Index codim() const { return linear_.rows(); }
    bool is_square() const { return dim() == codim(); }

    const CMatrix& linear() const { return linear_; }
    const CMatrix& antilinear() const { return antilinear_; }

    RMatrix to_matrix() const;
    CVector apply(const CVector& z) const;

    // Adjoint with respect to Re<.,.>: z -> S1^* z + S2^T conj(z).
    RealLinearOp sharp() const;

    // (this o other)
    RealLinearOp compose(const RealLinearOp& other) const;

    RealLinearOp operator+(const RealLinearOp& other) const;
    RealLinearOp operator-(const RealLinearOp& other) const;
    RealLinearOp operator*(const RealLinearOp& other) const { return compose(other); }
    RealLinearOp operator-() const;
    friend RealLinearOp operator*(double s, const RealLinearOp& op);

private:
    void require_same_shape(const RealLinearOp& other, const char* what) const;

    CMatrix linear_;
    CMatrix antilinear_;
};

// max scaled entry difference between two operators of the same shape
double op_distance(const RealLinearOp& a, const RealLinearOp& b);

// The complex pair of a symplectic transformation M z = M1 z + M2 conj(z).
struct SymplecticParts {
    CMatrix m1;
    CMatrix m2;

    RealLinearOp op() const { return RealLinearOp(m1, m2); }
    static SymplecticParts from_op(const RealLinearOp& op) { return {op.linear(), op.antilinear()}; }
};

struct SymplecticCheck {
    bool symplectic = false;
    // max over the four complex-pair conditions and M^T J M - J, scaled by
    // max(1, max|M|^2)
    double residual = 0.0;
};

SymplecticCheck check_symplectic(const RealLinearOp& op, double tol = 1e-12);
inline bool is_symplectic(const RealLinearOp& op, double tol = 1e-12)
{
    return check_symplectic(op, tol).symplectic;
}

// z -> M1^* z - M2^T conj(z). Throws ModelError if op is not symplectic
// within tol.
RealLinearOp inverse_symplectic(const RealLinearOp& op, double tol = 1e-10);

} // namespace gqms
