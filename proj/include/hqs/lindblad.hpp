#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hqs/hilbert.hpp"

namespace hqs {

/// Lindblad collapse channel: rate * (L rho L^dag - 1/2 {L^dag L, rho}).
struct CollapseOp {
    Matrix op;
    double rate = 0.0;  // 1/s, >= 0
};

enum class Frame { lab, rotating };

/// Coherent drive on `op + op^dag`. In the rotating frame the carrier is
/// absorbed and the generator is time-independent (RWA); in the lab frame
/// the full 2*amplitude*cos(carrier*t + phase) modulation is kept.
struct Drive {
    Matrix op;
    double amplitude = 0.0;  // rad/s
    double carrier = 0.0;    // rad/s, lab frame only
    double phase = 0.0;      // rad
};

struct TimeSegment {
    double duration = 0.0;  // s, > 0
    Matrix hamiltonian;     // static part, rad/s
    std::optional<Drive> drive;
    Frame frame = Frame::rotating;
};

struct EvolveSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.0;  // 0 = unlimited
    // Step time-independent segments with the exact superoperator exponential
    // instead of RK45. Cross-check path; small dimensions only.
    bool exact_expm = false;
};

/// Integrates d rho/dt = -i[H, rho] + sum_k rate_k D[L_k] rho through the
/// segments in order. Adaptive Dormand-Prince RK45 on the vectorized density
/// matrix. Throws IntegrationError on step-size underflow.
QuantumState evolve(const QuantumState& state, std::span<const TimeSegment> segments,
                    std::span<const CollapseOp> collapses, const EvolveSettings& settings = {});

/// Steady-state occupation 4 drive^2 / decay^2 of the resonantly driven,
/// zero-temperature-damped oscillator.
double steady_occupation_analytic(double drive, double decay);

/// Numeric steady-state occupation: integrates the rotating-frame driven
/// oscillator from vacuum until <n> changes by less than 1e-6 relative over
/// one decay time. Throws ConvergenceError after 50 decay times.
double evolve_to_steady(double drive, double decay, const HilbertLayout& layout,
                        const EvolveSettings& settings = {});

}  // namespace hqs
