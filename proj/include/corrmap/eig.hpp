#pragma once

#include "corrmap/types.hpp"

namespace corrmap {

/// Hermitian eigendecomposition, eigenvalues ascending, columns of `vectors`
/// orthonormal. Within degenerate subspaces the vector choice is
/// solver-dependent; callers must not rely on it.
struct EigDecomp {
    RVector values;
    CMatrix vectors;

    CMatrix reconstruct() const {
        return vectors * values.asDiagonal() * vectors.adjoint();
    }
};

inline EigDecomp hermitian_eig(const CMatrix& m) {
    require_hermitian(m, "hermitian_eig");
    // Symmetrize before solving so the residual check above is the only
    // place hermiticity tolerance enters.
    const CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericError("hermitian_eig: eigensolver failed to converge");
    return EigDecomp{solver.eigenvalues(), solver.eigenvectors()};
}

/// exp(-i t h) for Hermitian h, evaluated in the eigenbasis.
inline CMatrix expm_hermitian(const CMatrix& h, double t) {
    require_hermitian(h, "expm_hermitian");
    const EigDecomp eig = hermitian_eig(h);
    CVector phases(eig.values.size());
    for (Index k = 0; k < eig.values.size(); ++k)
        phases(k) = std::exp(Complex(0.0, -t * eig.values(k)));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

inline double min_eigenvalue(const CMatrix& m) {
    return hermitian_eig(m).values.minCoeff();
}

inline bool is_psd(const CMatrix& m, double tolerance) {
    return min_eigenvalue(m) >= -tolerance;
}

/// Density-matrix check: Hermitian, unit trace, PSD (all within `tolerance`).
inline bool is_density(const CMatrix& m, double tolerance = tol::density) {
    if (!is_hermitian(m)) return false;
    if (std::abs(m.trace().real() - 1.0) > tolerance || std::abs(m.trace().imag()) > tolerance)
        return false;
    return is_psd(m, tolerance);
}

inline void require_density(const CMatrix& m, const char* what,
                            double tolerance = tol::density) {
    if (!is_density(m, tolerance))
        throw ValidationError(std::string(what) + ": not a density matrix (PSD, unit trace)");
}

}  // namespace corrmap
