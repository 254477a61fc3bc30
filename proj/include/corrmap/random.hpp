#pragma once

#include "corrmap/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace corrmap {

/// Seeded sampling of Haar-random states/unitaries and random operators.
/// One instance per scan keeps results reproducible for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double gauss() { return normal_(engine_); }

    Complex cgauss() { return Complex(gauss(), gauss()); }

    /// Haar-random unit vector (Gaussian direction).
    CVector haar_ket(Index d) {
        CVector v(d);
        for (Index i = 0; i < d; ++i) v(i) = cgauss();
        v.normalize();
        return v;
    }

    /// Haar-random unitary: QR of a Ginibre matrix with the R-diagonal
    /// phases folded back into Q.
    CMatrix haar_unitary(Index d) {
        CMatrix g(d, d);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) g(i, j) = cgauss();
        Eigen::HouseholderQR<CMatrix> qr(g);
        CMatrix q = qr.householderQ();
        const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Index j = 0; j < d; ++j) {
            const Complex rj = r(j, j);
            const Complex phase = (std::abs(rj) > 0.0) ? rj / std::abs(rj) : Complex(1.0, 0.0);
            q.col(j) *= phase;
        }
        return q;
    }

    /// Hilbert-Schmidt random density matrix, G G^dag normalized.
    CMatrix density(Index d) {
        CMatrix g(d, d);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) g(i, j) = cgauss();
        CMatrix rho = g * g.adjoint();
        rho /= rho.trace().real();
        return rho;
    }

    CMatrix hermitian(Index d) {
        CMatrix g(d, d);
        for (Index i = 0; i < d; ++i)
            for (Index j = 0; j < d; ++j) g(i, j) = cgauss();
        return 0.5 * (g + g.adjoint());
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Deterministic pure-state candidates evaluated before any random samples:
/// computational basis kets plus all pairwise (|i> +- |j>)/sqrt(2) and
/// (|i> +- i|j>)/sqrt(2) superpositions. Negativity witnesses tend to sit at
/// such states.
inline std::vector<CVector> structured_pure_states(Index d) {
    std::vector<CVector> states;
    for (Index i = 0; i < d; ++i) states.push_back(basis_ket(d, i));
    const double inv = 1.0 / std::sqrt(2.0);
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            const CVector ei = basis_ket(d, i), ej = basis_ket(d, j);
            states.push_back(inv * (ei + ej));
            states.push_back(inv * (ei - ej));
            states.push_back(inv * (ei + Complex(0, 1) * ej));
            states.push_back(inv * (ei - Complex(0, 1) * ej));
        }
    }
    return states;
}

}  // namespace corrmap
