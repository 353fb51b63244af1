#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "drc/analysis.hpp"
#include "drc/controller.hpp"
#include "drc/csv.hpp"
#include "drc/graph.hpp"
#include "drc/matrices.hpp"
#include "drc/scenario.hpp"
#include "drc/sim.hpp"
#include "drc/spectral.hpp"

namespace drc {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;
};

namespace selfcheck {

struct Harness {
    CheckResult res;
    double worst = 0.0;

    explicit Harness(std::string name) { res.name = std::move(name); }

    void expect(bool cond, const std::string& what) {
        if (!cond && res.ok) {
            res.ok = false;
            res.detail = what;
        }
    }
    void expect_le(double value, double bound, const std::string& what) {
        worst = std::max(worst, value);
        if (value > bound && res.ok) {
            res.ok = false;
            std::ostringstream ss;
            ss << what << ": " << value << " > " << bound;
            res.detail = ss.str();
        }
    }
    CheckResult done() {
        if (res.ok && res.detail.empty()) {
            std::ostringstream ss;
            ss << "worst residual " << worst;
            res.detail = ss.str();
        }
        return res;
    }
};

inline ControllerConfig random_config(Rng& rng, int n, Mode mode, bool with_zeta) {
    ControllerConfig cfg;
    cfg.mode = mode;
    cfg.k_diag = Vector::NullaryExpr(n, [&](Eigen::Index) { return rng.uniform(0.1, 100.0); });
    cfg.m = rng.uniform(0.5, 10.0);
    if (mode == Mode::ConstantPoint) cfg.q = rng.uniform(1e-3, 1.0);
    if (mode == Mode::Damped) cfg.kappa = rng.uniform(1e-3, 2.0);
    if (with_zeta)
        cfg.zeta = Vector::NullaryExpr(n, [&](Eigen::Index) { return rng.uniform(-1.0, 1.0); });
    return cfg;
}

inline Vector random_vector(Rng& rng, int n, double lo = -5.0, double hi = 5.0) {
    return Vector::NullaryExpr(n, [&](Eigen::Index) { return rng.uniform(lo, hi); });
}

// --- graph_core properties -------------------------------------------------

inline CheckResult graph_invariants(std::uint64_t seed) {
    Harness h("graph: L/S/Q identities and projectors on random connected graphs");
    Rng rng(seed);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const Matrix I = Matrix::Identity(n, n);
        h.expect_le((gm.adjacency - gm.adjacency.transpose()).cwiseAbs().maxCoeff(), 0.0,
                    "A symmetric");
        h.expect_le(gm.adjacency.diagonal().cwiseAbs().maxCoeff(), 0.0, "A zero diagonal");
        h.expect_le((gm.laplacian - (gm.degree - gm.adjacency)).cwiseAbs().maxCoeff(), 0.0,
                    "L = D - A");
        h.expect_le((gm.laplacian * Vector::Ones(n)).cwiseAbs().maxCoeff(), 0.0, "L 1 = 0");
        h.expect_le((gm.localized_projection * Vector::Ones(n)).cwiseAbs().maxCoeff(), 1e-12,
                    "Q 1 = 0");
        h.expect_le(
            (gm.localized_projection - gm.scaling * gm.laplacian).cwiseAbs().maxCoeff(), 1e-12,
            "Q = S L");
        const Matrix s_inv = (gm.degree.diagonal().array() + 1.0).matrix().asDiagonal();
        h.expect_le(((I + gm.adjacency) - (s_inv - gm.laplacian)).cwiseAbs().maxCoeff(), 1e-12,
                    "I + A = S^{-1} - L");
        h.expect_le((gm.proj_col + gm.proj_null - I).cwiseAbs().maxCoeff(), 1e-10,
                    "P + Pperp = I");
        h.expect_le((gm.proj_col * gm.proj_col - gm.proj_col).cwiseAbs().maxCoeff(), 1e-10,
                    "P idempotent");
        h.expect_le((gm.proj_null * gm.proj_null - gm.proj_null).cwiseAbs().maxCoeff(), 1e-10,
                    "Pperp idempotent");
        h.expect_le((gm.proj_col * gm.proj_null).cwiseAbs().maxCoeff(), 1e-10, "P Pperp = 0");
        h.expect_le((gm.proj_col * gm.laplacian - gm.laplacian).cwiseAbs().maxCoeff(), 1e-10,
                    "P L = L");
        h.expect_le((gm.laplacian * gm.proj_col - gm.laplacian).cwiseAbs().maxCoeff(), 1e-10,
                    "L P = L");
        h.expect_le(
            (gm.proj_null - Matrix::Constant(n, n, 1.0 / n)).cwiseAbs().maxCoeff(), 1e-12,
            "Pperp = 1 1^T / n (connected)");
        h.expect_le((gm.proj_col * Vector::Ones(n)).cwiseAbs().maxCoeff(), 1e-12, "P 1 = 0");
    }
    return h.done();
}

// --- spectral properties ---------------------------------------------------

inline CheckResult kq_inertia_signature(std::uint64_t seed) {
    Harness h("spectral: inertia of K Q is (n-1, 0, 1) on random graphs");
    Rng rng(seed + 1);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const Vector k = random_vector(rng, n, 0.1, 100.0);
        const InertiaReport rep = inertia_of_kq(k, gm);
        h.expect(rep.n_positive == n - 1 && rep.n_negative == 0 && rep.n_zero == 1,
                 "inertia mismatch at n = " + std::to_string(n));
    }
    return h.done();
}

inline CheckResult congruence_route_agreement(std::uint64_t seed) {
    Harness h("spectral: symmetric C L C route matches direct spectrum of K Q");
    Rng rng(seed + 2);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const Vector k = random_vector(rng, n, 0.1, 100.0);
        const InertiaReport via_clc = inertia_of_kq(k, gm);
        const Matrix kq = k.asDiagonal() * gm.localized_projection;
        Eigen::EigenSolver<Matrix> es(kq, /*computeEigenvectors=*/false);
        h.expect(es.info() == Eigen::Success, "direct eigensolver failed");
        std::vector<double> direct_re(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            direct_re[static_cast<std::size_t>(i)] = es.eigenvalues()(i).real();
            h.expect_le(std::abs(es.eigenvalues()(i).imag()), 1e-8,
                        "direct spectrum not real");
        }
        std::sort(direct_re.begin(), direct_re.end());
        for (int i = 0; i < n; ++i)
            h.expect_le(std::abs(direct_re[static_cast<std::size_t>(i)] -
                                 via_clc.eigenvalues[static_cast<std::size_t>(i)].real()),
                        1e-8, "spectrum mismatch between routes");
    }
    return h.done();
}

inline CheckResult error_system_inertia(std::uint64_t seed) {
    Harness h("spectral: error matrix has pi_0 = 1, pi_- = 2n-1 (q = 0) and null vector [1, -m 1]");
    Rng rng(seed + 3);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const Vector k = random_vector(rng, n, 0.1, 100.0);
        const double m = rng.uniform(0.5, 10.0);
        const Matrix a0 = error_system_matrix(gm, k, m, 0.0);
        const InertiaReport rep = classify_error_system(a0);
        h.expect(rep.n_zero == 1 && rep.n_negative == 2 * n - 1 && rep.n_positive == 0,
                 "inertia mismatch (q = 0) at n = " + std::to_string(n));
        Vector null_vec(2 * n);
        null_vec.head(n).setOnes();
        null_vec.tail(n).setConstant(-m);
        h.expect_le((a0 * null_vec).cwiseAbs().maxCoeff(), 1e-10, "null vector residual");
    }
    return h.done();
}

inline CheckResult constpoint_inertia(std::uint64_t seed) {
    Harness h("spectral: error matrix with q > 0 is Hurwitz (pi_- = 2n)");
    Rng rng(seed + 4);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const Vector k = random_vector(rng, n, 0.1, 100.0);
        const double m = rng.uniform(0.5, 10.0);
        const double q = rng.uniform(1e-3, 1.0);
        const InertiaReport rep = classify_error_system(error_system_matrix(gm, k, m, q));
        h.expect(rep.n_negative == 2 * n && rep.n_zero == 0,
                 "expected Hurwitz at n = " + std::to_string(n));
    }
    return h.done();
}

inline CheckResult shifted_laplacian_hurwitz(std::uint64_t seed) {
    Harness h("spectral: A~ = -L - mI has all eigenvalues <= -m");
    Rng rng(seed + 5);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const double m = rng.uniform(0.5, 10.0);
        const InertiaReport rep = check_hurwitz_atilde(gm, m);
        for (const auto& z : rep.eigenvalues)
            h.expect_le(z.real(), -m + 1e-10, "eigenvalue above -m");
        h.expect(rep.n_negative == n, "A~ not Hurwitz");
    }
    return h.done();
}

// --- controller properties -------------------------------------------------

inline CheckResult locality_equivalence(std::uint64_t seed) {
    Harness h("controller: per-agent law equals matrix law within 1e-12 (100 triples)");
    Rng rng(seed + 6);
    const Mode modes[] = {Mode::Baseline, Mode::Reject, Mode::ConstantPoint, Mode::Damped};
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const Mode mode = modes[trial % 4];
        const ControllerConfig cfg = random_config(rng, n, mode, trial % 3 == 0);
        const LoopState s{random_vector(rng, n), random_vector(rng, n), random_vector(rng, n)};
        const Vector u = control_input(cfg, gm, s);
        const LoopDerivative d = loop_derivative(cfg, gm, s, Vector::Zero(n));
        for (int i = 0; i < n; ++i) {
            const AgentOutput loc = control_input_local(cfg, make_agent_view(g, cfg, s, i));
            h.expect_le(std::abs(loc.u - u(i)), 1e-12, "u mismatch");
            h.expect_le(std::abs(loc.xhat_dot - d.dxhat(i)), 1e-12, "xhat_dot mismatch");
            h.expect_le(std::abs(loc.what_dot - d.dwhat(i)), 1e-12, "what_dot mismatch");
        }
    }
    return h.done();
}

inline CheckResult estimator_invariance(std::uint64_t seed) {
    Harness h("controller: Reject estimator satisfies 1^T (K S)^{-1} what_dot = 0");
    Rng rng(seed + 7);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const ControllerConfig cfg = random_config(rng, n, Mode::Reject, false);
        const LoopState s{random_vector(rng, n), random_vector(rng, n), random_vector(rng, n)};
        const LoopDerivative d = loop_derivative(cfg, gm, s, Vector::Zero(n));
        const Vector ks_inv_dwhat =
            (d.dwhat.array() / (cfg.k_diag.array() * gm.scaling.diagonal().array())).matrix();
        const double scale = std::max(1.0, ks_inv_dwhat.cwiseAbs().maxCoeff());
        h.expect_le(std::abs(ks_inv_dwhat.sum()) / scale, 1e-12, "projection residual");
    }
    return h.done();
}

inline CheckResult baseline_mean_invariance(std::uint64_t seed) {
    Harness h("controller: Baseline with w = 0 conserves the state mean derivative");
    Rng rng(seed + 8);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const ControllerConfig cfg = random_config(rng, n, Mode::Baseline, false);
        const LoopState s{random_vector(rng, n), random_vector(rng, n), random_vector(rng, n)};
        const LoopDerivative d = loop_derivative(cfg, gm, s, Vector::Zero(n));
        h.expect_le(std::abs(d.dx.sum()), 1e-12 * std::max(1.0, s.x.cwiseAbs().maxCoeff()),
                    "1^T dx != 0");
    }
    return h.done();
}

inline CheckResult formation_shift_equivariance(std::uint64_t seed) {
    Harness h("controller: control input invariant under x -> x + c 1");
    Rng rng(seed + 9);
    const Mode modes[] = {Mode::Baseline, Mode::Reject, Mode::ConstantPoint, Mode::Damped};
    for (int trial = 0; trial < 40; ++trial) {
        const int n = rng.uniform_int(2, 10);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        const ControllerConfig cfg = random_config(rng, n, modes[trial % 4], trial % 2 == 0);
        LoopState s{random_vector(rng, n), random_vector(rng, n), random_vector(rng, n)};
        const Vector u1 = control_input(cfg, gm, s);
        const double c = rng.uniform(-10.0, 10.0);
        s.x.array() += c;
        const Vector u2 = control_input(cfg, gm, s);
        h.expect_le((u1 - u2).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, std::abs(c) * 10.0),
                    "u changed under common shift");
    }
    return h.done();
}

// --- sim_engine properties -------------------------------------------------

inline CheckResult equilibrium_preservation(std::uint64_t seed) {
    Harness h("sim: Baseline, w = 0, consensus state is a bitwise fixed point over 1e4 steps");
    Rng rng(seed + 10);
    const Graph g = cycle_graph(6);
    const GraphMatrices gm = build_matrices(g);
    ControllerConfig cfg;
    cfg.mode = Mode::Baseline;
    cfg.k_diag = Vector::Constant(6, 1.0);
    cfg.m = 1.0;
    const double c = rng.uniform(-3.0, 3.0);
    LoopState s{Vector::Constant(6, c), Vector::Constant(6, c), Vector::Zero(6)};
    const DisturbanceSignal d = DisturbanceSignal::zero();
    for (int k = 0; k < 10000; ++k) {
        const LoopState next = rk4_step(cfg, gm, s, d, k * 1e-3, 1e-3);
        h.expect((next.x.array() == s.x.array()).all() &&
                     (next.xhat.array() == s.xhat.array()).all() &&
                     (next.what.array() == s.what.array()).all(),
                 "state moved at step " + std::to_string(k));
        s = next;
        if (!h.res.ok) break;
    }
    return h.done();
}

inline CheckResult mean_conservation(std::uint64_t seed) {
    Harness h("sim: Baseline, w = 0 keeps |mean x(t) - mean x0| < 1e-9");
    Rng rng(seed + 11);
    const Graph g = random_connected_graph(6, rng);
    const GraphMatrices gm = build_matrices(g);
    ControllerConfig cfg;
    cfg.mode = Mode::Baseline;
    cfg.k_diag = Vector::Constant(6, 1.0);
    cfg.m = 1.0;
    const Vector x0 = random_vector(rng, 6);
    const Trajectory traj = simulate(cfg, gm, DisturbanceSignal::zero(), x0, Vector::Zero(6),
                                     Vector::Zero(6), 10.0, 1e-3, 10);
    for (const auto& x : traj.x)
        h.expect_le(std::abs(x.mean() - x0.mean()), 1e-9, "mean drifted");
    return h.done();
}

inline CheckResult determinism(std::uint64_t seed) {
    Harness h("sim: identical inputs give bitwise-identical trajectories");
    Rng rng(seed + 12);
    const Graph g = random_connected_graph(5, rng);
    const GraphMatrices gm = build_matrices(g);
    const ControllerConfig cfg = random_config(rng, 5, Mode::Reject, false);
    const Vector x0 = random_vector(rng, 5);
    const DisturbanceSignal d = DisturbanceSignal::constant(random_vector(rng, 5));
    auto run = [&] {
        return simulate(cfg, gm, d, x0, Vector::Zero(5), Vector::Zero(5), 5.0, 1e-3, 7);
    };
    const Trajectory a = run(), b = run();
    h.expect(a.samples() == b.samples(), "sample counts differ");
    for (std::size_t i = 0; i < a.samples() && h.res.ok; ++i)
        h.expect(a.times[i] == b.times[i] && (a.x[i].array() == b.x[i].array()).all() &&
                     (a.xhat[i].array() == b.xhat[i].array()).all() &&
                     (a.what[i].array() == b.what[i].array()).all() &&
                     (a.u[i].array() == b.u[i].array()).all(),
                 "mismatch at sample " + std::to_string(i));
    return h.done();
}

// Pure decay through the closed loop: n = 1 graph, Damped mode with K = 1,
// kappa = 1 and x = xhat = 0 gives what_dot = -what exactly (Q of a single
// node is 0), so the what component integrates dy/dt = -y.
inline CheckResult rk4_scalar_oracle(std::uint64_t) {
    Harness h("sim: one RK4 step on dy/dt = -y matches e^{-0.1} to 1e-7");
    const Graph g = build_graph(1, {});
    const GraphMatrices gm = build_matrices(g);
    ControllerConfig cfg;
    cfg.mode = Mode::Damped;
    cfg.k_diag = Vector::Constant(1, 1.0);
    cfg.m = 1.0;
    cfg.kappa = 1.0;
    const LoopState s{Vector::Zero(1), Vector::Zero(1), Vector::Constant(1, 1.0)};
    const LoopState next = rk4_step(cfg, gm, s, DisturbanceSignal::zero(), 0.0, 0.1);
    h.expect_le(std::abs(next.what(0) - std::exp(-0.1)), 1e-7, "one-step error");
    return h.done();
}

inline CheckResult rk4_order_scalar(std::uint64_t) {
    Harness h("sim: global error at T = 1 for dy/dt = -y shrinks ~16x when h halves");
    const Graph g = build_graph(1, {});
    const GraphMatrices gm = build_matrices(g);
    ControllerConfig cfg;
    cfg.mode = Mode::Damped;
    cfg.k_diag = Vector::Constant(1, 1.0);
    cfg.m = 1.0;
    cfg.kappa = 1.0;
    auto err_at = [&](double h_step) {
        LoopState s{Vector::Zero(1), Vector::Zero(1), Vector::Constant(1, 1.0)};
        const long long steps = static_cast<long long>(std::llround(1.0 / h_step));
        for (long long k = 0; k < steps; ++k)
            s = rk4_step(cfg, gm, s, DisturbanceSignal::zero(), k * h_step, h_step);
        return std::abs(s.what(0) - std::exp(-1.0));
    };
    const double r = err_at(0.02) / err_at(0.01);
    h.expect(r > 12.0 && r < 20.0, "order ratio " + std::to_string(r) + " outside [12, 20]");
    return h.done();
}

inline CheckResult step_halving_example1(std::uint64_t) {
    Harness h("sim: Example 1 loop order-4 signature at T = 1 (h = 1e-2 vs 5e-3)");
    const Scenario s = builtin_example(1);
    const GraphMatrices gm = build_matrices(s.graph);
    auto x_at = [&](double h_step) {
        return simulate(s.cfg, gm, s.dist, s.x0, s.xhat0, s.what0, 1.0, h_step,
                        1 << 30)  // only the final sample matters
            .x.back();
    };
    const Vector x1 = x_at(1e-2), x2 = x_at(5e-3), x3 = x_at(2.5e-3);
    const double d1 = (x1 - x2).cwiseAbs().maxCoeff();
    const double d2 = (x2 - x3).cwiseAbs().maxCoeff();
    const double ratio = d1 / d2;
    h.expect(ratio >= 12.0 && ratio <= 20.0,
             "ratio " + std::to_string(ratio) + " outside [12, 20]");
    return h.done();
}

// --- scenario / csv properties ----------------------------------------------

inline CheckResult scenario_roundtrip(std::uint64_t) {
    Harness h("scenario: parse(render(s)) == s for the three builtins and variants");
    for (int id = 1; id <= 3; ++id) {
        const Scenario s = builtin_example(id);
        h.expect(parse_scenario(render_scenario(s)) == s,
                 "roundtrip failed for example " + std::to_string(id));
    }
    const Scenario v = apply_variant(builtin_example(1), "constant-point");
    h.expect(parse_scenario(render_scenario(v)) == v, "roundtrip failed for variant");
    return h.done();
}

inline CheckResult csv_roundtrip(std::uint64_t seed) {
    Harness h("csv: 17-digit text round-trips the trajectory bitwise");
    Rng rng(seed + 13);
    const Graph g = random_connected_graph(4, rng);
    const GraphMatrices gm = build_matrices(g);
    const ControllerConfig cfg = random_config(rng, 4, Mode::Reject, false);
    const DisturbanceSignal d = DisturbanceSignal::constant(random_vector(rng, 4));
    const Trajectory a = simulate(cfg, gm, d, random_vector(rng, 4), Vector::Zero(4),
                                  Vector::Zero(4), 2.0, 1e-3, 13);
    const Trajectory b = parse_trajectory_csv(trajectory_csv(a));
    h.expect(a.samples() == b.samples(), "sample counts differ");
    for (std::size_t i = 0; i < a.samples() && h.res.ok; ++i) {
        h.expect(a.times[i] == b.times[i], "time differs");
        h.expect((a.x[i].array() == b.x[i].array()).all() &&
                     (a.xhat[i].array() == b.xhat[i].array()).all() &&
                     (a.what[i].array() == b.what[i].array()).all() &&
                     (a.u[i].array() == b.u[i].array()).all() &&
                     (a.w_true[i].array() == b.w_true[i].array()).all(),
                 "row differs at sample " + std::to_string(i));
    }
    return h.done();
}

inline CheckResult projector_pinv_oracle(std::uint64_t seed) {
    Harness h("graph: spectral P_L equals the pseudoinverse construction L L^+");
    Rng rng(seed + 14);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = rng.uniform_int(2, 8);
        const Graph g = random_connected_graph(n, rng);
        const GraphMatrices gm = build_matrices(g);
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(gm.laplacian);
        const Matrix pinv = cod.pseudoInverse();
        h.expect_le((gm.proj_col - gm.laplacian * pinv).cwiseAbs().maxCoeff(), 1e-8,
                    "P_L != L L^+");
    }
    return h.done();
}

inline CheckResult config_invariants(std::uint64_t) {
    Harness h("controller: config invariants reject inconsistent mode/gain combinations");
    auto throws = [](auto&& fn) {
        try {
            fn();
        } catch (const validation_error&) {
            return true;
        }
        return false;
    };
    ControllerConfig cfg;
    cfg.k_diag = Vector::Constant(3, 1.0);
    cfg.m = 1.0;
    cfg.mode = Mode::Damped;  // kappa = 0
    h.expect(throws([&] { cfg.validate(3); }), "Damped with kappa = 0 accepted");
    cfg.mode = Mode::ConstantPoint;  // q = 0
    h.expect(throws([&] { cfg.validate(3); }), "ConstantPoint with q = 0 accepted");
    cfg.mode = Mode::Reject;
    cfg.q = 0.1;
    h.expect(throws([&] { cfg.validate(3); }), "Reject with q > 0 accepted");
    cfg.q = 0.0;
    cfg.kappa = 0.1;
    h.expect(throws([&] { cfg.validate(3); }), "Reject with kappa > 0 accepted");
    cfg.kappa = 0.0;
    cfg.k_diag(1) = -1.0;
    h.expect(throws([&] { cfg.validate(3); }), "negative gain accepted");
    cfg.k_diag(1) = 1.0;
    cfg.validate(3);  // must not throw now
    return h.done();
}

inline CheckResult disturbance_bounds(std::uint64_t seed) {
    Harness h("disturbance: sampled |w(t)|, |dw/dt| respect the declared 2-norm bounds");
    Rng rng(seed + 15);
    const int n = 5;
    const DisturbanceSignal d = DisturbanceSignal::sinusoid_bank(
        random_vector(rng, n, 0.1, 2.0), random_vector(rng, n, 0.1, 3.0),
        random_vector(rng, n, 0.0, 6.28));
    for (int i = 0; i <= 200; ++i) {
        const double t = 0.05 * i;
        h.expect_le(d.evaluate(t, n).norm(), d.w_star() + 1e-12, "w(t) above w*");
        const double dh = 1e-6;
        const Vector wdot = (d.evaluate(t + dh, n) - d.evaluate(t - dh, n)) / (2.0 * dh);
        h.expect_le(wdot.norm(), d.wdot_star() + 1e-6, "dw/dt above wdot*");
    }
    const DisturbanceSignal c = DisturbanceSignal::constant(random_vector(rng, n));
    h.expect(c.wdot_star() == 0.0, "constant disturbance with nonzero wdot*");
    h.expect_le(std::abs(c.w_star() - c.w.norm()), 0.0, "constant w* != ||w||");
    return h.done();
}

} // namespace selfcheck

// The property suite behind `verify`; also exercised by the unit tests.
inline std::vector<CheckResult> run_verify(std::uint64_t seed) {
    using namespace selfcheck;
    std::vector<CheckResult> out;
    out.push_back(graph_invariants(seed));
    out.push_back(projector_pinv_oracle(seed));
    out.push_back(kq_inertia_signature(seed));
    out.push_back(congruence_route_agreement(seed));
    out.push_back(error_system_inertia(seed));
    out.push_back(constpoint_inertia(seed));
    out.push_back(shifted_laplacian_hurwitz(seed));
    out.push_back(locality_equivalence(seed));
    out.push_back(estimator_invariance(seed));
    out.push_back(baseline_mean_invariance(seed));
    out.push_back(formation_shift_equivariance(seed));
    out.push_back(config_invariants(seed));
    out.push_back(disturbance_bounds(seed));
    out.push_back(equilibrium_preservation(seed));
    out.push_back(mean_conservation(seed));
    out.push_back(determinism(seed));
    out.push_back(rk4_scalar_oracle(seed));
    out.push_back(rk4_order_scalar(seed));
    out.push_back(step_halving_example1(seed));
    out.push_back(scenario_roundtrip(seed));
    out.push_back(csv_roundtrip(seed));
    return out;
}

} // namespace drc
