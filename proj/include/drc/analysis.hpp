#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "drc/controller.hpp"
#include "drc/disturbance.hpp"
#include "drc/sim.hpp"
#include "drc/spectral.hpp"

namespace drc {

inline double spread(const Vector& v) { return v.maxCoeff() - v.minCoeff(); }

inline double stdev(const Vector& v) {
    const double mu = v.mean();
    return std::sqrt((v.array() - mu).square().sum() / static_cast<double>(v.size()));
}

inline std::size_t sample_index_at(const Trajectory& traj, double t) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < traj.samples(); ++i) {
        const double d = std::abs(traj.times[i] - t);
        if (d < bd) { bd = d; best = i; }
    }
    return best;
}

// Predicted consensus value (1/n)[1'x0 - 1' int (w - what)]: trapezoidal
// quadrature of 1^T w~ over the retained samples, w~ = what - w.
inline double consensus_limit_quadrature(const Trajectory& traj, const DisturbanceSignal& d) {
    if (d.kind == DisturbanceSignal::Kind::SinusoidBank)
        throw validation_error("consensus_limit_quadrature: disturbance is not constant");
    if (traj.samples() < 2) throw validation_error("consensus_limit_quadrature: too few samples");
    const int n = static_cast<int>(traj.x[0].size());
    double integral = 0.0;
    auto integrand = [&](std::size_t i) {
        return (traj.what[i] - d.evaluate(traj.times[i], n)).sum();
    };
    double prev = integrand(0);
    for (std::size_t i = 1; i < traj.samples(); ++i) {
        const double cur = integrand(i);
        integral += 0.5 * (prev + cur) * (traj.times[i] - traj.times[i - 1]);
        prev = cur;
    }
    return (traj.x[0].sum() - integral) / static_cast<double>(n);
}

inline double formation_check(const Trajectory& traj, const Vector& zeta) {
    const Vector& xT = traj.x.back();
    if (zeta.size() != xT.size()) throw validation_error("formation_check: zeta length mismatch");
    double dev = 0.0;
    for (int i = 0; i < xT.size(); ++i)
        for (int j = 0; j < xT.size(); ++j)
            dev = std::max(dev, std::abs((xT(i) - xT(j)) - (zeta(i) - zeta(j))));
    return dev;
}

struct BoundednessResult {
    double u_sup = 0.0;          // max over samples of ||u||_2
    Vector channel_sup;          // per-agent sup of |u_i|
    bool finite = true;
};

inline BoundednessResult boundedness_check(const Trajectory& traj) {
    BoundednessResult r;
    if (traj.samples() == 0) return r;
    r.channel_sup = Vector::Zero(traj.u[0].size());
    for (const auto& u : traj.u) {
        if (!u.allFinite()) r.finite = false;
        r.u_sup = std::max(r.u_sup, u.norm());
        r.channel_sup = r.channel_sup.cwiseMax(u.cwiseAbs());
    }
    return r;
}

// ||e(t)|| with ||e||^2 = xt' xt + wt' K^{-1} wt, wt = what - w(t).
inline std::vector<double> error_norm_series(const Trajectory& traj, const Vector& k_diag) {
    std::vector<double> out;
    out.reserve(traj.samples());
    for (std::size_t i = 0; i < traj.samples(); ++i) {
        const Vector xt = traj.x[i] - traj.xhat[i];
        const Vector wt = traj.what[i] - traj.w_true[i];
        out.push_back(std::sqrt(xt.squaredNorm() + (wt.array().square() / k_diag.array()).sum()));
    }
    return out;
}

// Same series with w reconstructed from the signal instead of the recording.
inline std::vector<double> error_norm_series(const Trajectory& traj, const DisturbanceSignal& d,
                                             const Vector& k_diag) {
    std::vector<double> out;
    out.reserve(traj.samples());
    const int n = static_cast<int>(k_diag.size());
    for (std::size_t i = 0; i < traj.samples(); ++i) {
        const Vector xt = traj.x[i] - traj.xhat[i];
        const Vector wt = traj.what[i] - d.evaluate(traj.times[i], n);
        out.push_back(std::sqrt(xt.squaredNorm() + (wt.array().square() / k_diag.array()).sum()));
    }
    return out;
}

struct DissipationResult {
    std::size_t checked = 0;
    std::size_t satisfied = 0;
    double fraction() const {
        return checked == 0 ? 1.0 : static_cast<double>(satisfied) / static_cast<double>(checked);
    }
};

// Sampled dissipation inequality Vdot <= -lmin(R)||xt||^2 - lmin(Rbar)||wt||^2 + c,
// Vdot by central differences, tolerance 1e-2 * max(1, |Vdot|).
inline DissipationResult dissipation_check(const Trajectory& traj, const Vector& k_diag,
                                           double r_min_eig, double rbar_min_eig, double c) {
    DissipationResult res;
    const std::size_t ns = traj.samples();
    if (ns < 3) return res;
    std::vector<double> v(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        const Vector xt = traj.x[i] - traj.xhat[i];
        const Vector wt = traj.what[i] - traj.w_true[i];
        v[i] = xt.squaredNorm() + (wt.array().square() / k_diag.array()).sum();
    }
    for (std::size_t i = 1; i + 1 < ns; ++i) {
        const double vdot = (v[i + 1] - v[i - 1]) / (traj.times[i + 1] - traj.times[i - 1]);
        const Vector xt = traj.x[i] - traj.xhat[i];
        const Vector wt = traj.what[i] - traj.w_true[i];
        const double rhs = -r_min_eig * xt.squaredNorm() - rbar_min_eig * wt.squaredNorm() + c;
        ++res.checked;
        if (vdot <= rhs + 1e-2 * std::max(1.0, std::abs(vdot))) ++res.satisfied;
    }
    return res;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ConvergenceReport {
    std::string name;
    Mode mode = Mode::Baseline;
    int n = 0;
    double T = 0.0;
    double sample_dt = 0.0;  // spacing of retained samples, not the integrator step
    std::size_t samples = 0;

    double spread_final = 0.0;
    double consensus_value = 0.0;  // mean of x(T); meaningful when spread small
    bool settled = false;          // ||x(T) - x(T/2)||_inf < tolerance
    double settle_delta = 0.0;
    double predicted_limit = kNaN;  // quadrature prediction (constant/zero disturbance)
    double limit_residual = kNaN;
    double what_error = 0.0;  // ||what(T) - w(T)||_inf
    double u_sup = 0.0;
    long long ebound_violations = -1;  // Damped + feasible gains only; -1 = n/a

    // Extras so every acceptance check reads off the report.
    double epsilon_consensus = 0.0;   // mean(xt(T)), the common steady offset
    double offset_residual = 0.0;   // max_i |wt_i(T) + m xt_i(T)|
    double xtilde_stdev = 0.0;
    double spread_window_max = 0.0;   // max spread over t >= T/2
    double mean_drift = 0.0;          // max_t |mean x(t) - mean x(0)|
    double formation_deviation = kNaN;  // zeta runs only
    bool assumption_feasible = false;
    double epsilon_bound = kNaN;
    double dissipation_fraction = kNaN;
    bool finite = true;
};

inline ConvergenceReport analyze(const Trajectory& traj, const ControllerConfig& cfg,
                                 const GraphMatrices& gm, const DisturbanceSignal& d,
                                 double tolerance = 1e-3, const std::string& name = "") {
    if (traj.samples() == 0) throw validation_error("analyze: empty trajectory");
    ConvergenceReport r;
    r.name = name;
    r.mode = cfg.mode;
    r.n = static_cast<int>(traj.x[0].size());
    r.T = traj.times.back();
    r.sample_dt = traj.samples() > 1 ? traj.times[1] - traj.times[0] : 0.0;
    r.samples = traj.samples();

    const Vector& xT = traj.x.back();
    r.spread_final = spread(xT);
    r.consensus_value = xT.mean();
    const std::size_t half = sample_index_at(traj, r.T / 2.0);
    r.settle_delta = (xT - traj.x[half]).cwiseAbs().maxCoeff();
    r.settled = r.settle_delta < tolerance;

    if (d.kind != DisturbanceSignal::Kind::SinusoidBank) {
        r.predicted_limit = consensus_limit_quadrature(traj, d);
        r.limit_residual = std::abs(r.consensus_value - r.predicted_limit);
    }

    const Vector wT = traj.w_true.back();
    r.what_error = (traj.what.back() - wT).cwiseAbs().maxCoeff();
    const auto bounded = boundedness_check(traj);
    r.u_sup = bounded.u_sup;
    r.finite = bounded.finite;

    const Vector xtT = traj.x.back() - traj.xhat.back();
    const Vector wtT = traj.what.back() - wT;
    r.epsilon_consensus = xtT.mean();
    r.offset_residual = (wtT + cfg.m * xtT).cwiseAbs().maxCoeff();
    r.xtilde_stdev = stdev(xtT);

    for (std::size_t i = 0; i < traj.samples(); ++i) {
        if (traj.times[i] >= r.T / 2.0)
            r.spread_window_max = std::max(r.spread_window_max, spread(traj.x[i]));
        r.mean_drift = std::max(r.mean_drift, std::abs(traj.x[i].mean() - traj.x[0].mean()));
    }
    if (cfg.zeta) r.formation_deviation = formation_check(traj, *cfg.zeta);

    if (cfg.mode == Mode::Damped) {
        const BoundReport chk = check_assumption1_grid(gm, cfg.k_diag, cfg.m, cfg.kappa);
        r.assumption_feasible = chk.assumption_feasible;
        if (chk.assumption_feasible) {
            const BoundReport bound = ultimate_bound(chk, d.w_star(), d.wdot_star());
            r.epsilon_bound = bound.epsilon;
            const auto e_norm = error_norm_series(traj, cfg.k_diag);
            long long viol = 0;
            for (std::size_t i = 0; i < traj.samples(); ++i)
                if (traj.times[i] >= r.T / 2.0 && e_norm[i] >= bound.epsilon) ++viol;
            r.ebound_violations = viol;
            r.dissipation_fraction =
                dissipation_check(traj, cfg.k_diag, bound.r_min_eig, bound.rbar_min_eig, bound.c)
                    .fraction();
        }
    }
    return r;
}

namespace detail {
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}

// Aligned text report; NaN-valued fields are omitted.
inline std::string report_text(const ConvergenceReport& r) {
    std::string out;
    auto put = [&](const std::string& key, const std::string& val) {
        out += key;
        out.append(key.size() < 22 ? 22 - key.size() : 1, ' ');
        out += val;
        out += '\n';
    };
    auto put_d = [&](const std::string& key, double v) {
        if (!std::isnan(v)) put(key, detail::fmt_double(v));
    };
    if (!r.name.empty()) put("name", r.name);
    put("mode", to_string(r.mode));
    put("n", std::to_string(r.n));
    put_d("T", r.T);
    put_d("sample_dt", r.sample_dt);
    put("samples", std::to_string(r.samples));
    put_d("spread_final", r.spread_final);
    put_d("consensus_value", r.consensus_value);
    put("settled", r.settled ? "true" : "false");
    put_d("settle_delta", r.settle_delta);
    put_d("predicted_limit", r.predicted_limit);
    put_d("limit_residual", r.limit_residual);
    put_d("what_error", r.what_error);
    put_d("u_sup", r.u_sup);
    put_d("epsilon_consensus", r.epsilon_consensus);
    put_d("offset_residual", r.offset_residual);
    put_d("xtilde_stdev", r.xtilde_stdev);
    put_d("spread_window_max", r.spread_window_max);
    put_d("mean_drift", r.mean_drift);
    put_d("formation_deviation", r.formation_deviation);
    if (r.mode == Mode::Damped) {
        put("assumption_feasible", r.assumption_feasible ? "true" : "false");
        put_d("epsilon_bound", r.epsilon_bound);
        if (r.ebound_violations >= 0)
            put("ebound_violations", std::to_string(r.ebound_violations));
        put_d("dissipation_fraction", r.dissipation_fraction);
    }
    put("finite", r.finite ? "true" : "false");
    return out;
}

// Same fields as a flat JSON object.
inline std::string report_json(const ConvergenceReport& r) {
    std::string out = "{\n";
    bool first = true;
    auto raw = [&](const std::string& key, const std::string& val) {
        if (!first) out += ",\n";
        first = false;
        out += "  \"" + key + "\": " + val;
    };
    auto put_d = [&](const std::string& key, double v) {
        if (!std::isnan(v)) raw(key, detail::fmt_double(v));
    };
    raw("name", "\"" + r.name + "\"");
    raw("mode", "\"" + to_string(r.mode) + "\"");
    raw("n", std::to_string(r.n));
    put_d("T", r.T);
    put_d("sample_dt", r.sample_dt);
    raw("samples", std::to_string(r.samples));
    put_d("spread_final", r.spread_final);
    put_d("consensus_value", r.consensus_value);
    raw("settled", r.settled ? "true" : "false");
    put_d("settle_delta", r.settle_delta);
    put_d("predicted_limit", r.predicted_limit);
    put_d("limit_residual", r.limit_residual);
    put_d("what_error", r.what_error);
    put_d("u_sup", r.u_sup);
    put_d("epsilon_consensus", r.epsilon_consensus);
    put_d("offset_residual", r.offset_residual);
    put_d("xtilde_stdev", r.xtilde_stdev);
    put_d("spread_window_max", r.spread_window_max);
    put_d("mean_drift", r.mean_drift);
    put_d("formation_deviation", r.formation_deviation);
    if (r.mode == Mode::Damped) {
        raw("assumption_feasible", r.assumption_feasible ? "true" : "false");
        put_d("epsilon_bound", r.epsilon_bound);
        if (r.ebound_violations >= 0) raw("ebound_violations", std::to_string(r.ebound_violations));
        put_d("dissipation_fraction", r.dissipation_fraction);
    }
    raw("finite", r.finite ? "true" : "false");
    out += "\n}\n";
    return out;
}

} // namespace drc
