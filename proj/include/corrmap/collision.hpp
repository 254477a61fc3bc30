#pragma once

#include "corrmap/dynamics.hpp"
#include "corrmap/eig.hpp"
#include "corrmap/hide.hpp"
#include "corrmap/tensor.hpp"
#include "corrmap/types.hpp"

#include <array>
#include <utility>
#include <vector>

namespace corrmap {

/// Refreshing (collision) model: S couples to a fresh ancilla in state
/// tau_anc for duration T each step, via U = exp(-i T V). Correlations with
/// the previous ancilla are discarded. An optional per-step coupling list
/// overrides the single V.
struct CollisionConfig {
    Index d_s = 2;
    Index d_anc = 2;
    CMatrix v;        // Hermitian coupling Hamiltonian on S (x) ancilla
    double t = 1.0;   // collision duration
    CMatrix tau_anc;  // fresh ancilla state
    long steps = 1;
    CMatrix eta0;     // initial system state
    std::vector<CMatrix> v_per_step;  // optional heterogeneous couplings

    DimSpec step_dims() const { return DimSpec{d_s, d_anc, 1}; }
};

inline void validate(const CollisionConfig& cfg) {
    if (cfg.d_s < 1 || cfg.d_anc < 1)
        throw ValidationError("collision: dimensions must be positive");
    if (cfg.t <= 0.0) throw ValidationError("collision: T must be positive");
    if (cfg.steps < 1) throw ValidationError("collision: need at least one step");
    const Index d_joint = cfg.d_s * cfg.d_anc;
    auto check_v = [&](const CMatrix& v) {
        if (v.rows() != d_joint || v.cols() != d_joint)
            throw ValidationError("collision: V must act on S (x) ancilla");
        require_hermitian(v, "collision V");
    };
    check_v(cfg.v);
    for (const CMatrix& v : cfg.v_per_step) check_v(v);
    if (!cfg.v_per_step.empty() && static_cast<long>(cfg.v_per_step.size()) < cfg.steps)
        throw ValidationError("collision: per-step coupling list shorter than steps");
    if (cfg.tau_anc.rows() != cfg.d_anc || cfg.tau_anc.cols() != cfg.d_anc)
        throw ValidationError("collision: tau_anc dimension mismatch");
    require_density(cfg.tau_anc, "collision tau_anc");
    if (cfg.eta0.rows() != cfg.d_s || cfg.eta0.cols() != cfg.d_s)
        throw ValidationError("collision: eta0 dimension mismatch");
    require_density(cfg.eta0, "collision eta0");
}

inline const CMatrix& coupling_for_step(const CollisionConfig& cfg, long step) {
    if (!cfg.v_per_step.empty()) return cfg.v_per_step[static_cast<size_t>(step)];
    return cfg.v;
}

/// One collision: eta' = tr_anc[U (eta (x) tau) U^dag], plus the correlation
/// matrix the step built up between S and that ancilla.
inline std::pair<CMatrix, CMatrix> collision_step(const CMatrix& eta,
                                                  const CollisionConfig& cfg,
                                                  long step = 0) {
    validate(cfg);
    if (eta.rows() != cfg.d_s || eta.cols() != cfg.d_s)
        throw ValidationError("collision_step: eta dimension mismatch");
    require_density(eta, "collision_step eta");

    const DimSpec dims = cfg.step_dims();
    const CMatrix u = expm_hermitian(coupling_for_step(cfg, step), cfg.t);
    const CMatrix joint = u * kron(eta, cfg.tau_anc) * u.adjoint();
    CMatrix eta_next = trace_env(joint, dims);
    CMatrix chi_next = joint - kron(eta_next, trace_sys(joint, dims));
    return {std::move(eta_next), std::move(chi_next)};
}

struct Trajectory {
    std::vector<CMatrix> states;          // eta_0 .. eta_N
    std::vector<double> chi_norms;        // ||chi_n||_F per step
    std::vector<double> step_cp_mineigs;  // min Choi eigenvalue of each step map
};

/// Iterate the collision map, recording the per-step correlation norm and
/// the step map's min Choi eigenvalue. Each step is CP by construction, so a
/// non-PSD eta signals numerical failure.
inline Trajectory simulate(const CollisionConfig& cfg) {
    validate(cfg);
    Trajectory traj;
    traj.states.push_back(cfg.eta0);

    // With one shared V the step map is fixed; cache its Choi diagnostics.
    double cached_mineig = 0.0;
    bool have_cached = false;

    CMatrix eta = cfg.eta0;
    for (long n = 0; n < cfg.steps; ++n) {
        const CMatrix& v = coupling_for_step(cfg, n);
        const CMatrix u = expm_hermitian(v, cfg.t);

        double mineig;
        if (cfg.v_per_step.empty() && have_cached) {
            mineig = cached_mineig;
        } else {
            const DynamicalMap step_map =
                compose(product_assignment(cfg.tau_anc, cfg.step_dims()), u);
            mineig = cp_test(step_map).min_choi_eig;
            cached_mineig = mineig;
            have_cached = true;
        }

        const DimSpec dims = cfg.step_dims();
        const CMatrix joint = u * kron(eta, cfg.tau_anc) * u.adjoint();
        CMatrix eta_next = trace_env(joint, dims);
        const CMatrix chi = joint - kron(eta_next, trace_sys(joint, dims));

        const double trace_dev = std::abs(eta_next.trace().real() - 1.0) +
                                 std::abs(eta_next.trace().imag());
        if (trace_dev > tol::density || !is_psd(eta_next, tol::density))
            throw NumericError("simulate: propagated state left the density-matrix set");

        traj.chi_norms.push_back(chi.norm());
        traj.step_cp_mineigs.push_back(mineig);
        traj.states.push_back(eta_next);
        eta = std::move(eta_next);
    }
    return traj;
}

/// Hiding residual for the correlations left by the previous step: the next
/// coupling acts on S and a fresh ancilla (identity on the old one), so
/// tr_E[W (chi_prev (x) tau_fresh) W^dag] vanishes.
inline double step_hiding_check(const CollisionConfig& cfg, const CMatrix& chi_prev) {
    validate(cfg);
    const Index d_joint = cfg.d_s * cfg.d_anc;
    if (chi_prev.rows() != d_joint || chi_prev.cols() != d_joint)
        throw ValidationError("step_hiding_check: chi_prev must live on S (x) ancilla");

    const CMatrix u = expm_hermitian(cfg.v, cfg.t);

    // Embed U on (S, fresh) with identity on the old ancilla, factor order
    // S (x) anc_old (x) anc_fresh.
    const Index d_s = cfg.d_s, d_a = cfg.d_anc;
    const Index d3 = d_s * d_a * d_a;
    CMatrix w = CMatrix::Zero(d3, d3);
    for (Index s = 0; s < d_s; ++s)
        for (Index f = 0; f < d_a; ++f)
            for (Index s2 = 0; s2 < d_s; ++s2)
                for (Index f2 = 0; f2 < d_a; ++f2) {
                    const Complex amp = u(s * d_a + f, s2 * d_a + f2);
                    if (amp == Complex(0.0, 0.0)) continue;
                    for (Index p = 0; p < d_a; ++p)
                        w((s * d_a + p) * d_a + f, (s2 * d_a + p) * d_a + f2) = amp;
                }

    const CMatrix chi_total = kron(chi_prev, cfg.tau_anc);
    const std::array<Index, 3> fd{d_s, d_a, d_a};
    const std::array<bool, 3> keep{true, false, false};
    return partial_trace(w * chi_total * w.adjoint(), fd, keep).norm();
}

}  // namespace corrmap
