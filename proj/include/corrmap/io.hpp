#pragma once

#include "corrmap/assignment.hpp"
#include "corrmap/collision.hpp"
#include "corrmap/dynamics.hpp"
#include "corrmap/types.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace corrmap {

using nlohmann::json;

// ---- matrix format: { "rows": n, "cols": m, "re": [...], "im": [...] } ----

inline json matrix_to_json(const CMatrix& m) {
    json re = json::array(), im = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline CMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("re") || !j.contains("im"))
        throw ValidationError("matrix: expected object with rows, cols, re, im");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw ValidationError("matrix: rows/cols must be integers");
    const Index rows = j["rows"].get<Index>(), cols = j["cols"].get<Index>();
    if (rows < 1 || cols < 1) throw ValidationError("matrix: rows/cols must be positive");
    const auto& re = j["re"];
    const auto& im = j["im"];
    if (!re.is_array() || !im.is_array() ||
        re.size() != static_cast<size_t>(rows * cols) ||
        im.size() != static_cast<size_t>(rows * cols))
        throw ValidationError("matrix: re/im must be arrays of length rows*cols");
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index jj = 0; jj < cols; ++jj) {
            const size_t k = static_cast<size_t>(i * cols + jj);
            if (!re[k].is_number() || !im[k].is_number())
                throw ValidationError("matrix: entries must be numbers");
            m(i, jj) = Complex(re[k].get<double>(), im[k].get<double>());
        }
    }
    if (!all_finite(m)) throw ValidationError("matrix: entries must be finite");
    return m;
}

// ---- dims: { "d_s": ..., "d_ec": ..., "d_er": ... } ----

inline json dims_to_json(const DimSpec& d) {
    return json{{"d_s", d.d_s}, {"d_ec", d.d_ec}, {"d_er", d.d_er}};
}

inline DimSpec dims_from_json(const json& j) {
    if (!j.is_object() || !j.contains("d_s") || !j.contains("d_ec") || !j.contains("d_er"))
        throw ValidationError("dims: expected object with d_s, d_ec, d_er");
    DimSpec d{j["d_s"].get<Index>(), j["d_ec"].get<Index>(), j["d_er"].get<Index>()};
    require_dims(d);
    return d;
}

// ---- assignment: { "dims": ..., "form": "eigen"|"basis", ... } ----

inline json assignment_to_json(const AssignmentMap& a) {
    json j{{"dims", dims_to_json(a.dims)}, {"form", "eigen"}};
    json terms = json::array();
    for (const AssignmentTerm& t : a.terms)
        terms.push_back(json{{"alpha", t.alpha}, {"A", matrix_to_json(t.op)}});
    j["terms"] = std::move(terms);
    return j;
}

inline AssignmentMap assignment_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("form"))
        throw ValidationError("assignment: expected object with dims and form");
    const DimSpec dims = dims_from_json(j["dims"]);
    const std::string form = j["form"].get<std::string>();
    if (form == "eigen") {
        if (!j.contains("terms") || !j["terms"].is_array())
            throw ValidationError("assignment: eigen form needs a terms array");
        AssignmentMap a;
        a.dims = dims;
        for (const json& t : j["terms"]) {
            if (!t.is_object() || !t.contains("alpha") || !t.contains("A"))
                throw ValidationError("assignment: each term needs alpha and A");
            CMatrix op = matrix_from_json(t["A"]);
            if (op.rows() != dims.total() || op.cols() != dims.d_s)
                throw ValidationError("assignment: term operator must be total x d_s");
            a.terms.push_back({t["alpha"].get<double>(), std::move(op)});
        }
        return a;
    }
    if (form == "basis") {
        if (!j.contains("P") || !j.contains("R") || !j["P"].is_array() || !j["R"].is_array())
            throw ValidationError("assignment: basis form needs P and R arrays");
        std::vector<CMatrix> p, r;
        for (const json& e : j["P"]) p.push_back(matrix_from_json(e));
        for (const json& e : j["R"]) r.push_back(matrix_from_json(e));
        return from_basis(p, r, dims);
    }
    throw ValidationError("assignment: form must be \"eigen\" or \"basis\"");
}

// ---- dynamical map: { "d_s": n, "choi": matrix } ----

inline json dynamical_map_to_json(const DynamicalMap& b) {
    return json{{"d_s", b.d_s}, {"choi", matrix_to_json(b.choi)}};
}

inline DynamicalMap dynamical_map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("d_s") || !j.contains("choi"))
        throw ValidationError("dynamical map: expected object with d_s and choi");
    const Index d_s = j["d_s"].get<Index>();
    DynamicalMap b = map_from_choi(matrix_from_json(j["choi"]));
    if (b.d_s != d_s) throw ValidationError("dynamical map: d_s does not match choi dimension");
    return b;
}

// ---- collision config ----

inline CollisionConfig collision_config_from_json(const json& j) {
    for (const char* key : {"d_s", "d_anc", "V", "T", "tau", "eta0", "steps"})
        if (!j.is_object() || !j.contains(key))
            throw ValidationError(std::string("collision config: missing field ") + key);
    CollisionConfig cfg;
    cfg.d_s = j["d_s"].get<Index>();
    cfg.d_anc = j["d_anc"].get<Index>();
    cfg.v = matrix_from_json(j["V"]);
    cfg.t = j["T"].get<double>();
    cfg.tau_anc = matrix_from_json(j["tau"]);
    cfg.eta0 = matrix_from_json(j["eta0"]);
    cfg.steps = j["steps"].get<long>();
    if (j.contains("V_per_step")) {
        if (!j["V_per_step"].is_array())
            throw ValidationError("collision config: V_per_step must be an array");
        for (const json& e : j["V_per_step"]) cfg.v_per_step.push_back(matrix_from_json(e));
    }
    validate(cfg);
    return cfg;
}

// ---- trajectory CSV ----

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// Columns: step, trace_distance_to_tau, purity, chi_norm, step_cp_mineig.
/// The chi/CP columns describe the step that produced the row's state, so
/// they are empty for step 0. trace_distance is (1/2)||eta - tau||_1.
inline std::string trajectory_to_csv(const Trajectory& traj, const CollisionConfig& cfg) {
    std::ostringstream out;
    out << "step,trace_distance_to_tau,purity,chi_norm,step_cp_mineig\n";
    // Distance target: the ancilla state embedded on S requires d_s == d_anc;
    // otherwise fall back to the maximally mixed state of S.
    const CMatrix target = (cfg.d_s == cfg.d_anc)
                               ? cfg.tau_anc
                               : CMatrix(identity(cfg.d_s) / double(cfg.d_s));
    for (size_t n = 0; n < traj.states.size(); ++n) {
        const CMatrix& eta = traj.states[n];
        const RVector dev = hermitian_eig(eta - target).values;
        const double tdist = 0.5 * dev.cwiseAbs().sum();
        const double purity = (eta * eta).trace().real();
        out << n << ',' << format_double(tdist) << ',' << format_double(purity) << ',';
        if (n == 0) {
            out << ",";
        } else {
            out << format_double(traj.chi_norms[n - 1]) << ','
                << format_double(traj.step_cp_mineigs[n - 1]);
        }
        out << '\n';
    }
    return out.str();
}

// ---- file helpers ----

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << content;
    if (!out) throw ValidationError("failed writing output file: " + path);
}

}  // namespace corrmap
