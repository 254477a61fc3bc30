#pragma once

#include "corrmap/types.hpp"

#include <array>
#include <span>
#include <vector>

namespace corrmap {

/// Kronecker product. The left operand is the slower-varying factor, so
/// kron(kron(S, Ec), Er) realizes the fixed S (x) E_c (x) E_r ordering.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
    return kron(kron(a, b), c);
}

/// Partial trace over an arbitrary factorization. `factor_dims` lists the
/// dimension of each tensor factor in order; `keep[f]` selects the factors
/// that survive. The result is ordered by the kept factors.
inline CMatrix partial_trace(const CMatrix& m,
                             std::span<const Index> factor_dims,
                             std::span<const bool> keep) {
    if (factor_dims.size() != keep.size())
        throw ValidationError("partial_trace: factor/keep length mismatch");
    Index total = 1;
    for (Index d : factor_dims) {
        if (d < 1) throw ValidationError("partial_trace: factor dimensions must be positive");
        total *= d;
    }
    if (m.rows() != m.cols() || m.rows() != total)
        throw ValidationError("partial_trace: matrix dimension does not match factorization");

    const size_t n = factor_dims.size();
    std::vector<Index> stride(n, 1);
    for (size_t f = n; f-- > 1;) stride[f - 1] = stride[f] * factor_dims[f];

    std::vector<Index> kept_dims, kept_strides, traced_dims, traced_strides;
    for (size_t f = 0; f < n; ++f) {
        if (keep[f]) {
            kept_dims.push_back(factor_dims[f]);
            kept_strides.push_back(stride[f]);
        } else {
            traced_dims.push_back(factor_dims[f]);
            traced_strides.push_back(stride[f]);
        }
    }

    auto offset = [](Index flat, const std::vector<Index>& dims,
                     const std::vector<Index>& strides) {
        Index off = 0;
        for (size_t f = dims.size(); f-- > 0;) {
            off += (flat % dims[f]) * strides[f];
            flat /= dims[f];
        }
        return off;
    };

    Index dim_kept = 1, dim_traced = 1;
    for (Index d : kept_dims) dim_kept *= d;
    for (Index d : traced_dims) dim_traced *= d;

    std::vector<Index> traced_offsets(dim_traced);
    for (Index t = 0; t < dim_traced; ++t)
        traced_offsets[t] = offset(t, traced_dims, traced_strides);

    CMatrix out = CMatrix::Zero(dim_kept, dim_kept);
    for (Index a = 0; a < dim_kept; ++a) {
        const Index ra = offset(a, kept_dims, kept_strides);
        for (Index b = 0; b < dim_kept; ++b) {
            const Index cb = offset(b, kept_dims, kept_strides);
            Complex s = 0.0;
            for (Index off : traced_offsets) s += m(ra + off, cb + off);
            out(a, b) = s;
        }
    }
    return out;
}

inline CMatrix partial_trace(const CMatrix& m, const DimSpec& dims,
                             const std::array<bool, 3>& keep) {
    require_dims(dims);
    const std::array<Index, 3> fd{dims.d_s, dims.d_ec, dims.d_er};
    return partial_trace(m, std::span<const Index>(fd), std::span<const bool>(keep));
}

/// tr_E: trace out both environment factors, leaving the system.
inline CMatrix trace_env(const CMatrix& m, const DimSpec& dims) {
    return partial_trace(m, dims, {true, false, false});
}

/// tr_S: trace out the system, leaving E_c (x) E_r.
inline CMatrix trace_sys(const CMatrix& m, const DimSpec& dims) {
    return partial_trace(m, dims, {false, true, true});
}

}  // namespace corrmap
