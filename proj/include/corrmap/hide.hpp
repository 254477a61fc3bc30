#pragma once

#include "corrmap/dynamics.hpp"
#include "corrmap/eig.hpp"
#include "corrmap/tensor.hpp"
#include "corrmap/types.hpp"

namespace corrmap {

/// rho = eta (x) tau + chi with eta, tau the marginals; chi carries all the
/// correlation and is traceless over each side.
struct CorrelationDecomposition {
    CMatrix eta;
    CMatrix tau;
    CMatrix chi;
};

inline CorrelationDecomposition decompose(const CMatrix& rho, const DimSpec& dims) {
    require_dims(dims);
    if (rho.rows() != dims.total() || rho.cols() != dims.total())
        throw ValidationError("decompose: rho dimension does not match dims");
    require_hermitian(rho, "decompose");
    if (std::abs(rho.trace().real() - 1.0) > tol::density ||
        std::abs(rho.trace().imag()) > tol::density)
        throw ValidationError("decompose: rho must have unit trace");

    CorrelationDecomposition out;
    out.eta = trace_env(rho, dims);
    out.tau = trace_sys(rho, dims);
    out.chi = rho - kron(out.eta, out.tau);
    return out;
}

/// ||tr_E[W chi W^dag]||_F. At most tol::hide means the coupling hides the
/// correlations for this chi.
inline double hiding_residual(const CMatrix& w, const CMatrix& chi, const DimSpec& dims,
                              double unitary_tol = tol::unitary) {
    require_dims(dims);
    if (chi.rows() != dims.total() || chi.cols() != dims.total() ||
        w.rows() != dims.total() || w.cols() != dims.total())
        throw ValidationError("hiding_residual: dimension mismatch");
    require_unitary(w, "hiding_residual", unitary_tol);
    return trace_env(w * chi * w.adjoint(), dims).norm();
}

/// When W hides the correlations of rho, the reduced dynamics equals the
/// product-part map eta -> tr_E[W (eta (x) tau0) W^dag]; returns its CP
/// verdict. Errors out when the hiding condition fails, since then the full
/// assignment-composition path is required.
inline bool hidden_map_is_cp(const CMatrix& rho, const CMatrix& w, const DimSpec& dims,
                             double hide_tol = tol::hide,
                             double cp_tol_base = tol::cp_base) {
    const CorrelationDecomposition dec = decompose(rho, dims);
    const double residual = hiding_residual(w, dec.chi, dims);
    if (residual > hide_tol)
        throw ValidationError(
            "hidden_map_is_cp: coupling does not hide the correlations; "
            "compose the full assignment map instead");
    const DynamicalMap b = compose(product_assignment(dec.tau, dims), w);
    return cp_test(b, cp_tol_base).is_cp;
}

}  // namespace corrmap
