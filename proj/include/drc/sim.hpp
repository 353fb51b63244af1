#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "drc/controller.hpp"
#include "drc/disturbance.hpp"
#include "drc/errors.hpp"

namespace drc {

struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> x, xhat, what;
    std::vector<Vector> u;       // recomputed control at each sample
    std::vector<Vector> w_true;  // disturbance value at each sample
    std::size_t samples() const { return times.size(); }
};

namespace detail {
inline bool all_finite(const Vector& v) { return v.allFinite(); }
}

// One classical RK4 update of the concatenated (x, xhat, what) system.
inline LoopState rk4_step(const ControllerConfig& cfg, const GraphMatrices& gm, const LoopState& s,
                          const DisturbanceSignal& d, double t, double h) {
    if (!(h > 0.0)) throw validation_error("rk4_step: h must be > 0");
    const int n = gm.n;
    auto axpy = [&](const LoopState& base, double a, const LoopDerivative& k) {
        return LoopState{base.x + a * k.dx, base.xhat + a * k.dxhat, base.what + a * k.dwhat};
    };
    const LoopDerivative k1 = loop_derivative(cfg, gm, s, d.evaluate(t, n));
    const Vector w_mid = d.evaluate(t + 0.5 * h, n);
    const LoopDerivative k2 = loop_derivative(cfg, gm, axpy(s, 0.5 * h, k1), w_mid);
    const LoopDerivative k3 = loop_derivative(cfg, gm, axpy(s, 0.5 * h, k2), w_mid);
    const LoopDerivative k4 = loop_derivative(cfg, gm, axpy(s, h, k3), d.evaluate(t + h, n));
    LoopState next;
    next.x = s.x + (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    next.xhat = s.xhat + (h / 6.0) * (k1.dxhat + 2.0 * k2.dxhat + 2.0 * k3.dxhat + k4.dxhat);
    next.what = s.what + (h / 6.0) * (k1.dwhat + 2.0 * k2.dwhat + 2.0 * k3.dwhat + k4.dwhat);
    if (!detail::all_finite(next.x) || !detail::all_finite(next.xhat) ||
        !detail::all_finite(next.what))
        throw numeric_error("rk4_step: non-finite state after step at t = " + std::to_string(t));
    return next;
}

// Fixed-step integration over [0, T]; records t_k = k*h every `sample_every`
// steps plus the final step. Deterministic: identical inputs give identical
// trajectories bitwise.
inline Trajectory simulate(const ControllerConfig& cfg, const GraphMatrices& gm,
                           const DisturbanceSignal& d, const Vector& x0, const Vector& xhat0,
                           const Vector& what0, double T, double h, int sample_every) {
    cfg.validate(gm.n);
    if (!(T > 0.0)) throw validation_error("simulate: T must be > 0");
    if (!(h > 0.0)) throw validation_error("simulate: h must be > 0");
    if (sample_every < 1) throw validation_error("simulate: sample_every must be >= 1");
    if (x0.size() != gm.n || xhat0.size() != gm.n || what0.size() != gm.n)
        throw validation_error("simulate: initial condition dimension mismatch");
    if (d.kind != DisturbanceSignal::Kind::Zero && d.size() != gm.n)
        throw validation_error("simulate: disturbance dimension mismatch");

    const long long steps = static_cast<long long>(std::ceil(T / h - 1e-9));
    LoopState s{x0, xhat0, what0};
    Trajectory traj;
    auto record = [&](long long k, const LoopState& st) {
        const double t = static_cast<double>(k) * h;
        traj.times.push_back(t);
        traj.x.push_back(st.x);
        traj.xhat.push_back(st.xhat);
        traj.what.push_back(st.what);
        traj.u.push_back(control_input(cfg, gm, st));
        traj.w_true.push_back(d.evaluate(t, gm.n));
    };
    record(0, s);
    for (long long k = 0; k < steps; ++k) {
        try {
            s = rk4_step(cfg, gm, s, d, static_cast<double>(k) * h, h);
        } catch (const numeric_error&) {
            throw numeric_error("simulate: non-finite state at t = " +
                                std::to_string(static_cast<double>(k + 1) * h));
        }
        if ((k + 1) % sample_every == 0 || k + 1 == steps) record(k + 1, s);
    }
    return traj;
}

} // namespace drc
