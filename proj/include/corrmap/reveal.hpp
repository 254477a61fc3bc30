#pragma once

#include "corrmap/eig.hpp"
#include "corrmap/tensor.hpp"
#include "corrmap/types.hpp"

namespace corrmap {

/// Cyclic shift |k> -> |k+j mod d>. Wraparound is forced: it is the unique
/// completion making the shift unitary.
struct ShiftOp {
    Index d = 1;
    Index j = 0;
    CMatrix matrix;
};

inline ShiftOp shift_op(Index d, long j) {
    if (d < 1) throw ValidationError("shift_op: dimension must be positive");
    Index jj = static_cast<Index>(((j % d) + d) % d);
    CMatrix m = CMatrix::Zero(d, d);
    for (Index k = 0; k < d; ++k) m((k + jj) % d, k) = 1.0;
    return ShiftOp{d, jj, std::move(m)};
}

/// The constructed correlation-revealing unitary U = U3 U2 U1 and the
/// operator it acts on. Working dimensions are equalized, d_S = d_Ec = d_Er
/// = d; omega is padded with zero rows/cols when smaller than d^2.
struct RevealPlan {
    DimSpec dims;
    CMatrix omega;  // padded to d^2, Hermitian, unit trace, min eig r00 < 0
    double r00 = 0.0;
    CMatrix u1, u2, u3, u_total;
};

/// Builds the three-stage unitary:
///   U1 rotates the eigenbasis of omega (x) |0><0| onto the computational
///      product basis, most negative eigenvalue routed to |000>, remaining
///      eigenvalues filling (0,j) then (i,j) in ascending order;
///   U2 copies the E_c label onto E_r for the (0,j>0) slots, via controlled
///      cyclic shifts;
///   U3 shifts S conditioned on the doubled E labels, moving the rest of
///      row 0 off the |0><0| entry of the reduced state.
inline RevealPlan build_reveal(const CMatrix& omega, Index d) {
    if (d < 2) throw ValidationError("build_reveal: need d >= 2");
    if (omega.rows() != omega.cols())
        throw ValidationError("build_reveal: omega must be square");
    if (omega.rows() > d * d)
        throw ValidationError("build_reveal: omega larger than d^2");
    require_hermitian(omega, "build_reveal");
    if (std::abs(omega.trace().real() - 1.0) > tol::density ||
        std::abs(omega.trace().imag()) > tol::density)
        throw ValidationError("build_reveal: omega must have unit trace");

    const Index dd = d * d;
    CMatrix padded = CMatrix::Zero(dd, dd);
    padded.topLeftCorner(omega.rows(), omega.cols()) = omega;

    const EigDecomp eig = hermitian_eig(padded);
    if (eig.values(0) >= -tol::negativity)
        throw ValidationError("build_reveal: omega is PSD, nothing to reveal");

    RevealPlan plan;
    plan.dims = DimSpec{d, d, d};
    plan.omega = std::move(padded);
    plan.r00 = eig.values(0);

    // U1 = W (x) I_Er with W mapping ascending eigenvector m to |m>; the
    // flat index m corresponds to the separable label (i, j) = (m/d, m%d).
    CMatrix w = CMatrix::Zero(dd, dd);
    for (Index m = 0; m < dd; ++m) w.row(m) = eig.vectors.col(m).adjoint();
    plan.u1 = kron(w, identity(d));

    // U2: block diagonal over (i, j); block v_j on E_r for i == 0, j >= 1.
    const Index d3 = d * d * d;
    plan.u2 = CMatrix::Zero(d3, d3);
    for (Index i = 0; i < d; ++i) {
        for (Index j = 0; j < d; ++j) {
            const CMatrix block = (i == 0 && j >= 1) ? shift_op(d, j).matrix : identity(d);
            const Index base = (i * d + j) * d;
            plan.u2.block(base, base, d, d) = block;
        }
    }

    // U3: controlled on (j, k) in E_c (x) E_r; shift v_j on S when j == k.
    plan.u3 = CMatrix::Zero(d3, d3);
    for (Index j = 0; j < d; ++j) {
        for (Index k = 0; k < d; ++k) {
            const CMatrix block = (j == k) ? shift_op(d, j).matrix : identity(d);
            for (Index s = 0; s < d; ++s)
                for (Index s2 = 0; s2 < d; ++s2)
                    plan.u3((s * d + j) * d + k, (s2 * d + j) * d + k) = block(s, s2);
        }
    }

    plan.u_total = plan.u3 * plan.u2 * plan.u1;
    return plan;
}

struct RevealOutcome {
    CMatrix eta3;    // tr_E[U (omega (x) |0><0|) U^dag]
    double achieved; // <0|eta3|0>, equals r00 up to float error
};

inline RevealOutcome verify_reveal(const RevealPlan& plan) {
    const Index d = plan.dims.d_s;
    const CMatrix sigma0 = kron(plan.omega, basis_projector(d, 0));
    const CMatrix sigma3 = plan.u_total * sigma0 * plan.u_total.adjoint();
    CMatrix eta3 = trace_env(sigma3, plan.dims);
    const double achieved = eta3(0, 0).real();
    return RevealOutcome{std::move(eta3), achieved};
}

}  // namespace corrmap
