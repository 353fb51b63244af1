#pragma once

#include <optional>
#include <string>
#include <vector>

#include "drc/errors.hpp"
#include "drc/graph.hpp"
#include "drc/matrices.hpp"

namespace drc {

enum class Mode { Baseline, Reject, ConstantPoint, Damped };

inline std::string to_string(Mode m) {
    switch (m) {
        case Mode::Baseline: return "Baseline";
        case Mode::Reject: return "Reject";
        case Mode::ConstantPoint: return "ConstantPoint";
        case Mode::Damped: return "Damped";
    }
    return "?";
}

// Gains and mode for the closed loop. K = diag(k_diag), M = m*I.
struct ControllerConfig {
    Vector k_diag;
    double m = 1.0;
    double q = 0.0;      // ConstantPoint only
    double kappa = 0.0;  // Damped only
    std::optional<Vector> zeta;  // formation target; overlay active in every mode
    Mode mode = Mode::Baseline;

    void validate(int n) const {
        if (k_diag.size() != n) throw validation_error("config: k length != n");
        for (int i = 0; i < n; ++i)
            if (!(k_diag(i) > 0.0)) throw validation_error("config: k entries must be > 0");
        if (!(m > 0.0)) throw validation_error("config: m must be > 0");
        if (q < 0.0 || kappa < 0.0) throw validation_error("config: q, kappa must be >= 0");
        if (q > 0.0 && kappa > 0.0)
            throw validation_error("config: q and kappa cannot both be nonzero");
        switch (mode) {
            case Mode::Baseline:
            case Mode::Reject:
                if (q != 0.0 || kappa != 0.0)
                    throw validation_error("config: " + to_string(mode) +
                                           " mode requires q = kappa = 0");
                break;
            case Mode::ConstantPoint:
                if (!(q > 0.0) || kappa != 0.0)
                    throw validation_error("config: ConstantPoint mode requires q > 0, kappa = 0");
                break;
            case Mode::Damped:
                if (!(kappa > 0.0) || q != 0.0)
                    throw validation_error("config: Damped mode requires kappa > 0, q = 0");
                break;
        }
        if (zeta && zeta->size() != n) throw validation_error("config: zeta length != n");
    }
};

struct LoopState {
    Vector x, xhat, what;
};

struct LoopDerivative {
    Vector dx, dxhat, dwhat;
};

// u = -L x (+ u_a = -what unless Baseline) (+ u_f = L zeta when zeta present,
// i.e. u_s + u_f = -L(x - zeta)).
inline Vector control_input(const ControllerConfig& cfg, const GraphMatrices& gm,
                            const LoopState& s) {
    if (s.x.size() != gm.n || s.xhat.size() != gm.n || s.what.size() != gm.n)
        throw validation_error("control_input: state dimension mismatch");
    Vector u = -(gm.laplacian * s.x);
    if (cfg.mode != Mode::Baseline) u -= s.what;
    if (cfg.zeta) u += gm.laplacian * (*cfg.zeta);
    return u;
}

inline LoopDerivative loop_derivative(const ControllerConfig& cfg, const GraphMatrices& gm,
                                      const LoopState& s, const Vector& w_now) {
    if (w_now.size() != gm.n) throw validation_error("loop_derivative: w dimension mismatch");
    LoopDerivative d;
    d.dx = control_input(cfg, gm, s) + w_now;
    d.dxhat = -(gm.laplacian * s.xhat) + cfg.m * (s.x - s.xhat);
    if (cfg.zeta) d.dxhat += gm.laplacian * (*cfg.zeta);
    const Vector xt = s.x - s.xhat;
    switch (cfg.mode) {
        case Mode::Baseline:
            d.dwhat = Vector::Zero(gm.n);
            break;
        case Mode::Reject:
            d.dwhat = cfg.k_diag.asDiagonal() * (gm.localized_projection * xt);
            break;
        case Mode::ConstantPoint:
            d.dwhat = cfg.k_diag.asDiagonal() * (gm.localized_projection * xt + cfg.q * xt);
            break;
        case Mode::Damped:
            d.dwhat =
                cfg.k_diag.asDiagonal() * (gm.localized_projection * xt - cfg.kappa * s.what);
            break;
    }
    return d;
}

// What one agent may read: its own entries plus relative states over incident
// edges. Built by a trusted helper; the per-agent law sees only this view, so
// locality is structural.
struct AgentView {
    int degree = 0;
    double k_i = 0.0;
    double x = 0.0, xhat = 0.0, what = 0.0;
    std::vector<double> dx;      // x_i - x_j over neighbors j
    std::vector<double> dxhat;   // xhat_i - xhat_j
    std::vector<double> dzeta;   // zeta_i - zeta_j (empty when no formation)
};

inline AgentView make_agent_view(const Graph& g, const ControllerConfig& cfg, const LoopState& s,
                                 int agent) {
    if (agent < 0 || agent >= g.n) throw validation_error("agent view: index out of range");
    AgentView v;
    v.k_i = cfg.k_diag(agent);
    v.x = s.x(agent);
    v.xhat = s.xhat(agent);
    v.what = s.what(agent);
    for (auto [i, j] : g.edges) {
        const int other = i == agent ? j : (j == agent ? i : -1);
        if (other < 0) continue;
        ++v.degree;
        v.dx.push_back(s.x(agent) - s.x(other));
        v.dxhat.push_back(s.xhat(agent) - s.xhat(other));
        if (cfg.zeta) v.dzeta.push_back((*cfg.zeta)(agent) - (*cfg.zeta)(other));
    }
    return v;
}

struct AgentOutput {
    double u = 0.0;
    double what_dot = 0.0;
    double xhat_dot = 0.0;
};

// Per-agent closed-loop law. [K S]_{ii} = k_i / (degree_i + 1); the estimator
// drive is +[K S]_{ii} * sum(xt_i - xt_j), the sign the matrix form K S L
// produces.
inline AgentOutput control_input_local(const ControllerConfig& cfg, const AgentView& v) {
    AgentOutput out;
    double sum_dx = 0.0, sum_dxhat = 0.0, sum_dzeta = 0.0;
    for (double d : v.dx) sum_dx += d;
    for (double d : v.dxhat) sum_dxhat += d;
    for (double d : v.dzeta) sum_dzeta += d;

    out.u = -sum_dx + sum_dzeta;
    if (cfg.mode != Mode::Baseline) out.u -= v.what;

    out.xhat_dot = -sum_dxhat + cfg.m * (v.x - v.xhat) + sum_dzeta;

    const double ks_ii = v.k_i / (static_cast<double>(v.degree) + 1.0);
    const double sum_dxt = sum_dx - sum_dxhat;  // (xt_i - xt_j) summed over neighbors
    switch (cfg.mode) {
        case Mode::Baseline: out.what_dot = 0.0; break;
        case Mode::Reject: out.what_dot = ks_ii * sum_dxt; break;
        case Mode::ConstantPoint:
            out.what_dot = ks_ii * sum_dxt + cfg.q * v.k_i * (v.x - v.xhat);
            break;
        case Mode::Damped:
            out.what_dot = ks_ii * sum_dxt - cfg.kappa * v.k_i * v.what;
            break;
    }
    return out;
}

} // namespace drc
