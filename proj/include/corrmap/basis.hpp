#pragma once

#include "corrmap/types.hpp"

#include <span>
#include <vector>

namespace corrmap {

/// Hermitian self-dual operator basis with tr[G_i G_j] = 2 delta_ij:
/// scaled identity, then generalized Gell-Mann matrices (symmetric,
/// antisymmetric, diagonal families). n^2 elements for dimension n.
struct HermBasis {
    std::vector<CMatrix> gammas;
};

inline HermBasis herm_basis(Index n) {
    if (n < 1) throw ValidationError("herm_basis: dimension must be positive");
    HermBasis basis;
    basis.gammas.reserve(static_cast<size_t>(n) * n);

    basis.gammas.push_back(std::sqrt(2.0 / double(n)) * identity(n));

    for (Index j = 0; j < n; ++j) {
        for (Index k = j + 1; k < n; ++k) {
            CMatrix sym = CMatrix::Zero(n, n);
            sym(j, k) = 1.0;
            sym(k, j) = 1.0;
            basis.gammas.push_back(sym);

            CMatrix asym = CMatrix::Zero(n, n);
            asym(j, k) = Complex(0, -1);
            asym(k, j) = Complex(0, 1);
            basis.gammas.push_back(asym);
        }
    }

    for (Index l = 1; l < n; ++l) {
        CMatrix diag = CMatrix::Zero(n, n);
        const double factor = std::sqrt(2.0 / double(l * (l + 1)));
        for (Index j = 0; j < l; ++j) diag(j, j) = factor;
        diag(l, l) = -factor * double(l);
        basis.gammas.push_back(diag);
    }
    return basis;
}

/// Dual set {Delta_i} with tr[Delta_i P_j] = delta_ij for linearly
/// independent Hermitian {P_i} spanning the operator space (n^2 elements).
/// Expansion coefficients are inverted through an SVD; the set is declared
/// rank-deficient when the singular-value ratio drops below tol::dual_rank.
inline std::vector<CMatrix> dual_basis(std::span<const CMatrix> p) {
    if (p.empty()) throw ValidationError("dual_basis: empty basis");
    const Index n = p[0].rows();
    const Index m = static_cast<Index>(p.size());
    if (m != n * n)
        throw ValidationError("dual_basis: need exactly n^2 basis elements");
    for (const CMatrix& pi : p) {
        if (pi.rows() != n || pi.cols() != n)
            throw ValidationError("dual_basis: inconsistent element dimensions");
        require_hermitian(pi, "dual_basis");
    }

    const HermBasis gamma = herm_basis(n);

    // P_i = sum_j h_ij Gamma_j with h_ij = tr[P_i Gamma_j] / 2 (real).
    Eigen::MatrixXd h(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            h(i, j) = 0.5 * (p[i] * gamma.gammas[j]).trace().real();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) < tol::dual_rank * sv(0))
        throw ValidationError("dual_basis: basis is linearly dependent (rank-deficient expansion)");

    // D^T = H^{-1}, Delta_i = (1/2) sum_j d_ij Gamma_j.
    const Eigen::MatrixXd d = svd.solve(Eigen::MatrixXd::Identity(m, m)).transpose();

    std::vector<CMatrix> duals;
    duals.reserve(m);
    for (Index i = 0; i < m; ++i) {
        CMatrix delta = CMatrix::Zero(n, n);
        for (Index j = 0; j < m; ++j) delta += 0.5 * d(i, j) * gamma.gammas[j];
        duals.push_back(std::move(delta));
    }
    return duals;
}

}  // namespace corrmap
