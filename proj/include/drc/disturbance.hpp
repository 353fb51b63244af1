#pragma once

#include <cmath>

#include "drc/errors.hpp"
#include "drc/matrices.hpp"

namespace drc {

// w(t): zero, a constant vector, or per-agent sinusoids
// w_i(t) = amplitude_i * sin(omega_i * t + phase_i)   (phase in radians).
struct DisturbanceSignal {
    enum class Kind { Zero, Constant, SinusoidBank };
    Kind kind = Kind::Zero;
    Vector w;          // Constant
    Vector amplitude;  // SinusoidBank
    Vector omega;
    Vector phase;

    static DisturbanceSignal zero() { return {}; }

    static DisturbanceSignal constant(Vector w) {
        DisturbanceSignal d;
        d.kind = Kind::Constant;
        d.w = std::move(w);
        return d;
    }

    static DisturbanceSignal sinusoid_bank(Vector amplitude, Vector omega, Vector phase) {
        if (amplitude.size() != omega.size() || omega.size() != phase.size())
            throw validation_error("disturbance: sinusoid bank vectors must share one length");
        DisturbanceSignal d;
        d.kind = Kind::SinusoidBank;
        d.amplitude = std::move(amplitude);
        d.omega = std::move(omega);
        d.phase = std::move(phase);
        return d;
    }

    int size() const {
        switch (kind) {
            case Kind::Constant: return static_cast<int>(w.size());
            case Kind::SinusoidBank: return static_cast<int>(amplitude.size());
            default: return 0;  // Zero adapts to any n
        }
    }

    Vector evaluate(double t, int n) const {
        switch (kind) {
            case Kind::Zero: return Vector::Zero(n);
            case Kind::Constant:
                if (w.size() != n) throw validation_error("disturbance: dimension mismatch");
                return w;
            case Kind::SinusoidBank: {
                if (amplitude.size() != n) throw validation_error("disturbance: dimension mismatch");
                return (amplitude.array() * (omega.array() * t + phase.array()).sin()).matrix();
            }
        }
        return Vector::Zero(n);
    }

    // Conservative 2-norm bounds used by the ultimate-bound calculus.
    double w_star() const {
        switch (kind) {
            case Kind::Zero: return 0.0;
            case Kind::Constant: return w.norm();
            case Kind::SinusoidBank: return amplitude.norm();
        }
        return 0.0;
    }
    double wdot_star() const {
        return kind == Kind::SinusoidBank ? (amplitude.array() * omega.array()).matrix().norm()
                                          : 0.0;
    }
};

} // namespace drc
