#pragma once

// Test-only reference implementations. Each one deliberately takes a
// different route than the library code it checks: series instead of
// eigendecomposition, explicit index loops instead of stride arithmetic,
// direct linear solves instead of operator-basis expansions.

#include "corrmap/types.hpp"

#include <cmath>
#include <vector>

namespace oracle {

using corrmap::CMatrix;
using corrmap::Complex;
using corrmap::CVector;
using corrmap::Index;

/// exp(-i t h) by scaling-and-squaring a plain Taylor series.
inline CMatrix taylor_expm(const CMatrix& h, double t) {
    const Index d = h.rows();
    CMatrix a = Complex(0.0, -t) * h;
    int squarings = 0;
    while (a.norm() > 0.5) {
        a *= 0.5;
        ++squarings;
    }
    CMatrix result = CMatrix::Identity(d, d);
    CMatrix term = CMatrix::Identity(d, d);
    for (int k = 1; k <= 30; ++k) {
        term = term * a / double(k);
        result += term;
        if (term.norm() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

/// Three-factor partial trace by brute-force summation over basis indices.
inline CMatrix partial_trace_3(const CMatrix& m, Index d0, Index d1, Index d2,
                               bool keep0, bool keep1, bool keep2) {
    const Index dk = (keep0 ? d0 : 1) * (keep1 ? d1 : 1) * (keep2 ? d2 : 1);
    CMatrix out = CMatrix::Zero(dk, dk);
    for (Index i0 = 0; i0 < d0; ++i0)
        for (Index i1 = 0; i1 < d1; ++i1)
            for (Index i2 = 0; i2 < d2; ++i2)
                for (Index j0 = 0; j0 < d0; ++j0)
                    for (Index j1 = 0; j1 < d1; ++j1)
                        for (Index j2 = 0; j2 < d2; ++j2) {
                            if (!keep0 && i0 != j0) continue;
                            if (!keep1 && i1 != j1) continue;
                            if (!keep2 && i2 != j2) continue;
                            Index row = 0, col = 0;
                            if (keep0) { row = i0; col = j0; }
                            if (keep1) { row = row * d1 + i1; col = col * d1 + j1; }
                            if (keep2) { row = row * d2 + i2; col = col * d2 + j2; }
                            out(row, col) += m((i0 * d1 + i1) * d2 + i2,
                                               (j0 * d1 + j1) * d2 + j2);
                        }
    return out;
}

/// Apply a map through its Choi matrix by direct block contraction:
/// B(eta) = sum_ij eta(i,j) * choi_block(i,j).
inline CMatrix choi_contract(const CMatrix& choi, const CMatrix& eta) {
    const Index d = eta.rows();
    CMatrix out = CMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            out += eta(i, j) * choi.block(i * d, j * d, d, d);
    return out;
}

/// Direct evaluation of the composed map,
/// B(eta) = sum_k alpha_k sum_e <e| U A_k eta A_k^dag U^dag |e>,
/// with the environment sum written out entrywise.
inline CMatrix direct_composed_apply(const std::vector<double>& alphas,
                                     const std::vector<CMatrix>& ops, const CMatrix& u,
                                     const CMatrix& eta, Index d_s, Index d_env) {
    CMatrix out = CMatrix::Zero(d_s, d_s);
    for (size_t k = 0; k < alphas.size(); ++k) {
        const CMatrix x = u * ops[k] * eta * ops[k].adjoint() * u.adjoint();
        for (Index s = 0; s < d_s; ++s)
            for (Index s2 = 0; s2 < d_s; ++s2) {
                Complex acc = 0.0;
                for (Index e = 0; e < d_env; ++e) acc += x(s * d_env + e, s2 * d_env + e);
                out(s, s2) += alphas[k] * acc;
            }
    }
    return out;
}

/// Dual set via one complex linear solve: unknowns are the raw entries of
/// each Delta_i, equations tr[Delta_i P_j] = delta_ij. Uniqueness (P spans
/// the operator space) forces the Hermitian solution.
inline std::vector<CMatrix> dual_solve(const std::vector<CMatrix>& p) {
    const Index n = p[0].rows();
    const Index m = n * n;
    CMatrix system(m, m);  // row j: coefficients of tr[Delta P_j] in Delta entries
    for (Index j = 0; j < m; ++j)
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b)
                system(j, a * n + b) = p[static_cast<size_t>(j)](b, a);
    Eigen::PartialPivLU<CMatrix> lu(system);
    std::vector<CMatrix> duals;
    for (Index i = 0; i < m; ++i) {
        CVector rhs = CVector::Zero(m);
        rhs(i) = 1.0;
        const CVector x = lu.solve(rhs);
        CMatrix delta(n, n);
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b) delta(a, b) = x(a * n + b);
        duals.push_back(std::move(delta));
    }
    return duals;
}

/// Basis-form action A[eta] = sum_i tr[Delta_i eta] R_i.
inline CMatrix basis_sum_apply(const std::vector<CMatrix>& duals,
                               const std::vector<CMatrix>& r, const CMatrix& eta) {
    CMatrix out = CMatrix::Zero(r[0].rows(), r[0].cols());
    for (size_t i = 0; i < duals.size(); ++i) out += (duals[i] * eta).trace() * r[i];
    return out;
}

/// Qubit pure states on a 1-degree Bloch-sphere grid.
inline std::vector<CVector> bloch_grid() {
    std::vector<CVector> states;
    const double deg = M_PI / 180.0;
    for (int it = 0; it <= 180; ++it) {
        const double theta = it * deg;
        for (int ip = 0; ip < 360; ++ip) {
            const double phi = ip * deg;
            CVector v(2);
            v(0) = std::cos(theta / 2);
            v(1) = std::exp(Complex(0, phi)) * std::sin(theta / 2);
            states.push_back(std::move(v));
        }
    }
    return states;
}

}  // namespace oracle
