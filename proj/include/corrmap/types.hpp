#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace corrmap {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Raised when an input violates a documented precondition or schema.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a computation produces values outside its guaranteed bounds
/// (accumulated floating-point failure rather than bad input).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

namespace tol {
// Hermiticity: ||M - M^dag||_F <= max(herm_rel * ||M||_F, herm_abs_floor).
inline constexpr double herm_rel = 1e-9;
inline constexpr double herm_abs_floor = 1e-12;
// Assignment-map consistency residual bound.
inline constexpr double consistency = 1e-9;
// Complete positivity: min Choi eigenvalue >= -cp_base * d_S.
inline constexpr double cp_base = 1e-9;
// Hiding condition ||tr_E[W chi W^dag]||_F bound.
inline constexpr double hide = 1e-10;
// Negativity threshold for witness searches and positivity scans.
inline constexpr double negativity = 1e-9;
// Unitarity: ||U U^dag - I||_F <= unitary * sqrt(dim).
inline constexpr double unitary = 1e-9;
// Dual-basis rank test: smallest singular value < dual_rank * largest.
inline constexpr double dual_rank = 1e-10;
// Density-matrix validation (trace deviation and eigenvalue floor).
inline constexpr double density = 1e-9;
}  // namespace tol

/// Tensor factorization S (x) E_c (x) E_r. The factor order is fixed
/// throughout: basis index of |i j k> is (i * d_ec + j) * d_er + k.
struct DimSpec {
    Index d_s = 1;
    Index d_ec = 1;
    Index d_er = 1;

    Index total() const { return d_s * d_ec * d_er; }
    Index env() const { return d_ec * d_er; }
    bool valid() const { return d_s >= 1 && d_ec >= 1 && d_er >= 1; }
};

inline void require_dims(const DimSpec& dims) {
    if (!dims.valid())
        throw ValidationError("DimSpec factors must be positive");
}

inline double frobenius(const CMatrix& m) { return m.norm(); }

inline bool all_finite(const CMatrix& m) { return m.allFinite(); }

inline bool is_hermitian(const CMatrix& m,
                         double rel = tol::herm_rel,
                         double abs_floor = tol::herm_abs_floor) {
    if (m.rows() != m.cols()) return false;
    const double dev = (m - m.adjoint()).norm();
    return dev <= std::max(rel * m.norm(), abs_floor);
}

inline void require_hermitian(const CMatrix& m, const char* what,
                              double rel = tol::herm_rel,
                              double abs_floor = tol::herm_abs_floor) {
    if (!is_hermitian(m, rel, abs_floor))
        throw ValidationError(std::string(what) + ": matrix is not Hermitian within tolerance");
}

/// Frobenius unitarity residual, normalized by sqrt(dim) so the tolerance is
/// a per-entry scale independent of dimension.
inline double unitarity_residual(const CMatrix& u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    const Index d = u.rows();
    return (u * u.adjoint() - CMatrix::Identity(d, d)).norm() / std::sqrt(double(d));
}

inline bool is_unitary(const CMatrix& u, double tolerance = tol::unitary) {
    return unitarity_residual(u) <= tolerance;
}

inline void require_unitary(const CMatrix& u, const char* what,
                            double tolerance = tol::unitary) {
    if (!is_unitary(u, tolerance))
        throw ValidationError(std::string(what) + ": matrix is not unitary within tolerance");
}

inline CMatrix identity(Index d) { return CMatrix::Identity(d, d); }

inline CVector basis_ket(Index d, Index i) {
    CVector v = CVector::Zero(d);
    v(i) = 1.0;
    return v;
}

inline CMatrix projector(const CVector& v) { return v * v.adjoint(); }

inline CMatrix basis_projector(Index d, Index i) {
    CMatrix p = CMatrix::Zero(d, d);
    p(i, i) = 1.0;
    return p;
}

}  // namespace corrmap
