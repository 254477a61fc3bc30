#pragma once

#include "corrmap/basis.hpp"
#include "corrmap/eig.hpp"
#include "corrmap/random.hpp"
#include "corrmap/tensor.hpp"
#include "corrmap/types.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace corrmap {

/// One eigenvalue-form term: a signed real weight and a rectangular operator
/// mapping S kets into S(x)E kets (total x d_S). Signs stay on alpha rather
/// than being absorbed into the operator, since positivity analysis needs
/// the signed eigenvalues explicitly.
struct AssignmentTerm {
    double alpha = 0.0;
    CMatrix op;
};

/// Basis-form provenance: S-state basis P_i, assigned SE operators R_i, and
/// the dual set Delta_i with tr[Delta_i P_j] = delta_ij.
struct BasisAssignment {
    std::vector<CMatrix> p;
    std::vector<CMatrix> r;
    std::vector<CMatrix> delta;
};

/// Linear map from S operators to SE operators,
/// eta -> sum_k alpha_k A_k eta A_k^dag.
struct AssignmentMap {
    DimSpec dims;
    std::vector<AssignmentTerm> terms;
    std::optional<BasisAssignment> basis;  // present when built from a basis form
};

inline CMatrix apply(const AssignmentMap& a, const CMatrix& eta) {
    if (eta.rows() != a.dims.d_s || eta.cols() != a.dims.d_s)
        throw ValidationError("assignment apply: eta dimension mismatch");
    CMatrix out = CMatrix::Zero(a.dims.total(), a.dims.total());
    for (const AssignmentTerm& t : a.terms)
        out += t.alpha * (t.op * eta * t.op.adjoint());
    return out;
}

/// Max Frobenius deviation of tr_E[A[B_i]] from B_i over a spanning
/// Hermitian operator basis of S. Consistent maps stay below
/// tol::consistency.
inline double check_consistency(const AssignmentMap& a) {
    const HermBasis basis = herm_basis(a.dims.d_s);
    double worst = 0.0;
    for (const CMatrix& b : basis.gammas) {
        const double dev = (trace_env(apply(a, b), a.dims) - b).norm();
        worst = std::max(worst, dev);
    }
    return worst;
}

/// Uncorrelated (Pechukas) assignment eta -> eta (x) tau, expanded over the
/// eigenvectors of tau so every alpha_k >= 0.
inline AssignmentMap product_assignment(const CMatrix& tau, const DimSpec& dims) {
    require_dims(dims);
    if (tau.rows() != dims.env() || tau.cols() != dims.env())
        throw ValidationError("product_assignment: tau must live on E_c (x) E_r");
    require_density(tau, "product_assignment");

    AssignmentMap a;
    a.dims = dims;
    const EigDecomp eig = hermitian_eig(tau);
    const CMatrix id_s = identity(dims.d_s);
    for (Index k = 0; k < eig.values.size(); ++k) {
        if (eig.values(k) <= 1e-12) continue;  // null directions of tau contribute nothing
        const CMatrix ket = eig.vectors.col(k);
        a.terms.push_back({eig.values(k), kron(id_s, ket)});
    }
    return a;
}

/// Build the eigenvalue form from a basis form {P_i -> R_i}: spectral
/// expansion of each dual Delta_i and each R_i pairs into rank-one terms
/// alpha = d_im * r_in, A = |r_in><d_im|.
inline AssignmentMap from_basis(std::span<const CMatrix> p, std::span<const CMatrix> r,
                                const DimSpec& dims) {
    require_dims(dims);
    const Index d_s = dims.d_s;
    const Index d_tot = dims.total();
    if (p.size() != static_cast<size_t>(d_s * d_s) || r.size() != p.size())
        throw ValidationError("from_basis: need d_S^2 basis states with matching R list");

    for (const CMatrix& pi : p) {
        if (pi.rows() != d_s || pi.cols() != d_s)
            throw ValidationError("from_basis: P element has wrong dimension");
        require_hermitian(pi, "from_basis P");
        if (std::abs(pi.trace().real() - 1.0) > tol::density || std::abs(pi.trace().imag()) > tol::density)
            throw ValidationError("from_basis: P elements must have unit trace");
    }
    for (size_t i = 0; i < r.size(); ++i) {
        if (r[i].rows() != d_tot || r[i].cols() != d_tot)
            throw ValidationError("from_basis: R element has wrong dimension");
        require_hermitian(r[i], "from_basis R");
        if ((trace_env(r[i], dims) - p[i]).norm() > 1e-10)
            throw ValidationError("from_basis: inconsistent R (tr_E[R_i] != P_i)");
    }

    std::vector<CMatrix> duals = dual_basis(p);

    AssignmentMap a;
    a.dims = dims;
    for (size_t i = 0; i < p.size(); ++i) {
        const EigDecomp ed = hermitian_eig(duals[i]);
        const EigDecomp er = hermitian_eig(r[i]);
        for (Index m = 0; m < ed.values.size(); ++m) {
            for (Index n = 0; n < er.values.size(); ++n) {
                const double alpha = ed.values(m) * er.values(n);
                if (std::abs(alpha) <= 1e-13) continue;
                const CMatrix op = er.vectors.col(n) * ed.vectors.col(m).adjoint();
                a.terms.push_back({alpha, op});
            }
        }
    }
    a.basis = BasisAssignment{std::vector<CMatrix>(p.begin(), p.end()),
                              std::vector<CMatrix>(r.begin(), r.end()), std::move(duals)};
    return a;
}

struct NegativityWitness {
    CMatrix eta;     // the pure input state whose image is non-PSD
    double min_eig;  // most negative output eigenvalue found
};

/// Search pure inputs for a non-PSD assignment output. Structured candidates
/// (basis kets, pairwise superpositions, eigenvectors of any provenance P_i)
/// are scanned before `samples` Haar-random kets. Absence of a witness is a
/// "none found" result, never a positivity certificate.
inline std::optional<NegativityWitness> negativity_witness(const AssignmentMap& a,
                                                           int samples,
                                                           std::uint64_t seed) {
    std::vector<CVector> candidates = structured_pure_states(a.dims.d_s);
    if (a.basis) {
        for (const CMatrix& pi : a.basis->p) {
            const EigDecomp eig = hermitian_eig(pi);
            for (Index k = 0; k < eig.values.size(); ++k)
                if (std::abs(eig.values(k)) > 1e-12)
                    candidates.push_back(eig.vectors.col(k));
        }
    }
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) candidates.push_back(rng.haar_ket(a.dims.d_s));

    double best = 0.0;
    CMatrix best_eta;
    for (const CVector& ket : candidates) {
        const CMatrix eta = projector(ket);
        const double me = min_eigenvalue(apply(a, eta));
        if (me < best) {
            best = me;
            best_eta = eta;
        }
    }
    if (best < -tol::negativity) return NegativityWitness{best_eta, best};
    return std::nullopt;
}

}  // namespace corrmap
