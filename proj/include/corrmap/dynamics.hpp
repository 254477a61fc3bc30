#pragma once

#include "corrmap/assignment.hpp"
#include "corrmap/eig.hpp"
#include "corrmap/random.hpp"
#include "corrmap/tensor.hpp"
#include "corrmap/types.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace corrmap {

struct MapTerm {
    double lambda = 0.0;
    CMatrix op;  // d_S x d_S
};

/// Superoperator on S in Choi form plus the derived eigenvalue
/// (operator-sum) form. Choi convention:
///   choi = sum_ij |i><j| (x) B(|i><j|),
/// so trace(choi) = d_S for trace-preserving maps and complete positivity
/// is exactly choi >= 0.
struct DynamicalMap {
    Index d_s = 0;
    CMatrix choi;
    std::vector<MapTerm> eigen_form;
};

namespace detail {

inline std::vector<MapTerm> eigen_form_from_choi(const CMatrix& choi, Index d_s) {
    const EigDecomp eig = hermitian_eig(choi);
    std::vector<MapTerm> terms;
    terms.reserve(static_cast<size_t>(eig.values.size()));
    for (Index k = 0; k < eig.values.size(); ++k) {
        CMatrix c(d_s, d_s);
        for (Index i = 0; i < d_s; ++i)
            for (Index a = 0; a < d_s; ++a) c(a, i) = eig.vectors(i * d_s + a, k);
        terms.push_back({eig.values(k), std::move(c)});
    }
    return terms;
}

inline void require_trace_preserving(const std::vector<MapTerm>& terms, Index d_s,
                                     const char* what) {
    CMatrix acc = CMatrix::Zero(d_s, d_s);
    for (const MapTerm& t : terms) acc += t.lambda * t.op.adjoint() * t.op;
    if ((acc - identity(d_s)).norm() > tol::consistency * double(d_s))
        throw NumericError(std::string(what) + ": map is not trace preserving");
}

}  // namespace detail

/// Wrap a raw Choi matrix (validates hermiticity and trace preservation).
inline DynamicalMap map_from_choi(const CMatrix& choi) {
    if (choi.rows() != choi.cols())
        throw ValidationError("map_from_choi: Choi matrix must be square");
    const Index d_s = static_cast<Index>(std::llround(std::sqrt(double(choi.rows()))));
    if (d_s * d_s != choi.rows())
        throw ValidationError("map_from_choi: Choi dimension is not a perfect square");
    require_hermitian(choi, "map_from_choi");
    DynamicalMap b;
    b.d_s = d_s;
    b.choi = 0.5 * (choi + choi.adjoint());
    b.eigen_form = detail::eigen_form_from_choi(b.choi, d_s);
    detail::require_trace_preserving(b.eigen_form, d_s, "map_from_choi");
    return b;
}

/// B = tr_E . U(.)U^dag . A, assembled by pushing the matrix-unit basis of S
/// through the composition.
inline DynamicalMap compose(const AssignmentMap& a, const CMatrix& u,
                            double consistency_tol = tol::consistency,
                            double unitary_tol = tol::unitary) {
    const Index d_s = a.dims.d_s;
    const Index d_tot = a.dims.total();
    if (u.rows() != d_tot || u.cols() != d_tot)
        throw ValidationError("compose: unitary dimension does not match assignment dims");
    require_unitary(u, "compose", unitary_tol);
    if (check_consistency(a) > consistency_tol)
        throw ValidationError("compose: assignment map fails consistency");

    DynamicalMap b;
    b.d_s = d_s;
    b.choi = CMatrix::Zero(d_s * d_s, d_s * d_s);
    for (Index i = 0; i < d_s; ++i) {
        for (Index j = 0; j < d_s; ++j) {
            CMatrix unit = CMatrix::Zero(d_s, d_s);
            unit(i, j) = 1.0;
            const CMatrix image = trace_env(u * apply(a, unit) * u.adjoint(), a.dims);
            b.choi.block(i * d_s, j * d_s, d_s, d_s) = image;
        }
    }
    b.eigen_form = detail::eigen_form_from_choi(b.choi, d_s);
    detail::require_trace_preserving(b.eigen_form, d_s, "compose");
    return b;
}

inline CMatrix apply_map(const DynamicalMap& b, const CMatrix& eta) {
    if (eta.rows() != b.d_s || eta.cols() != b.d_s)
        throw ValidationError("apply_map: eta dimension mismatch");
    CMatrix out = CMatrix::Zero(b.d_s, b.d_s);
    for (const MapTerm& t : b.eigen_form) out += t.lambda * (t.op * eta * t.op.adjoint());
    return out;
}

struct CpResult {
    bool is_cp = false;
    double min_choi_eig = 0.0;
};

/// Complete positivity <=> Choi matrix PSD; the tolerance scales with d_S to
/// absorb eigensolver error growth.
inline CpResult cp_test(const DynamicalMap& b, double tol_base = tol::cp_base) {
    const double me = min_eigenvalue(b.choi);
    return CpResult{me >= -tol_base * double(b.d_s), me};
}

struct PositivityReport {
    bool is_cp = false;
    double min_choi_eig = 0.0;
    double positivity_scan_min = 0.0;
    std::optional<std::pair<CVector, CVector>> witness_pair;  // (|r>, |s>)
    long samples_used = 0;
};

/// Scan pure inputs |r><r| for negative output eigenvalues, minimizing over
/// |s> exactly by eigensolve. Structured candidates and caller-supplied
/// `extra` states come before `samples` Haar-random kets. A value below
/// -tol::negativity certifies nonpositivity; anything else only means "no
/// violation found".
inline PositivityReport positivity_scan(const DynamicalMap& b, int samples,
                                        std::uint64_t seed,
                                        std::span<const CVector> extra = {}) {
    std::vector<CVector> candidates = structured_pure_states(b.d_s);
    for (const CVector& v : extra) {
        if (v.size() != b.d_s)
            throw ValidationError("positivity_scan: extra state dimension mismatch");
        candidates.push_back(v.normalized());
    }
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) candidates.push_back(rng.haar_ket(b.d_s));

    PositivityReport report;
    const CpResult cp = cp_test(b);
    report.is_cp = cp.is_cp;
    report.min_choi_eig = cp.min_choi_eig;
    report.samples_used = static_cast<long>(candidates.size());

    double worst = std::numeric_limits<double>::infinity();
    for (const CVector& ket : candidates) {
        const EigDecomp eig = hermitian_eig(apply_map(b, projector(ket)));
        if (eig.values(0) < worst) {
            worst = eig.values(0);
            if (worst < -tol::negativity)
                report.witness_pair = std::make_pair(ket, CVector(eig.vectors.col(0)));
        }
    }
    report.positivity_scan_min = worst;
    return report;
}

struct WeightReport {
    std::vector<double> weights;  // w_k >= 0, one per assignment term
    double total = 0.0;           // sum_k alpha_k w_k = <s|B(|r><r|)|s>
};

/// Positivity weights w_k = sum_e |<s e| U A_k |r>|^2, the per-term
/// contributions whose signed sum decides <s|B(|r><r|)|s> >= 0.
inline WeightReport positivity_weights(const AssignmentMap& a, const CMatrix& u,
                                       const CVector& r, const CVector& s) {
    const Index d_s = a.dims.d_s;
    const Index d_env = a.dims.env();
    if (r.size() != d_s || s.size() != d_s)
        throw ValidationError("positivity_weights: r and s must be S kets");
    if (std::abs(r.norm() - 1.0) > tol::unitary || std::abs(s.norm() - 1.0) > tol::unitary)
        throw ValidationError("positivity_weights: r and s must be unit vectors");
    if (u.rows() != a.dims.total() || u.cols() != a.dims.total())
        throw ValidationError("positivity_weights: unitary dimension mismatch");

    WeightReport report;
    report.weights.reserve(a.terms.size());
    for (const AssignmentTerm& t : a.terms) {
        const CVector y = u * (t.op * r);  // ket on S (x) E
        double w = 0.0;
        for (Index e = 0; e < d_env; ++e) {
            Complex amp = 0.0;
            for (Index i = 0; i < d_s; ++i) amp += std::conj(s(i)) * y(i * d_env + e);
            w += std::norm(amp);
        }
        report.weights.push_back(w);
        report.total += t.alpha * w;
    }
    return report;
}

}  // namespace corrmap
