#include "hqs/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "hqs/constants.hpp"
#include "hqs/errors.hpp"

namespace hqs {

namespace {

// Bose-Einstein mean occupation of a mode at freq (rad/s) in a bath at temp.
double bath_occupation(double freq, double temp) {
    if (temp <= 0.0) return 0.0;
    const double x = std::exp(-constants::hbar * freq / (constants::k_boltzmann * temp));
    return x / (1.0 - x);
}

Matrix pi_unitary(Transition transition, const HilbertLayout& layout) {
    Matrix u = Matrix::Zero(3, 3);
    if (transition == Transition::ge) {
        u(0, 1) = u(1, 0) = 1.0;
        u(2, 2) = 1.0;
    } else {
        u(1, 2) = u(2, 1) = 1.0;
        u(0, 0) = 1.0;
    }
    return embed(u, Slot::qubit, layout);
}

}  // namespace

void DeviceParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw InvalidParameterError(std::string(name) + " must be > 0");
    };
    positive(phonon_freq, "phonon_freq");
    positive(qubit_freq, "qubit_freq");
    positive(coupling, "coupling");
    positive(fsr, "fsr");
    positive(t1_phonon, "t1_phonon");
    positive(t2_phonon, "t2_phonon");
    positive(t1_ge, "t1_ge");
    positive(t1_ef, "t1_ef");
    positive(t_phi, "t_phi");
    positive(length, "length");
    positive(waist, "waist");
    positive(density, "density");
    positive(stiffness_c33, "stiffness_c33");
    positive(piezo_e33, "piezo_e33");
    positive(rel_permittivity, "rel_permittivity");
    if (mode_number <= 0) throw InvalidParameterError("mode_number must be > 0");
    if (t_qubit_init < 0.0 || t_qubit_bath < 0.0 || t_env < 0.0)
        throw InvalidParameterError("temperatures must be >= 0");
    if (t2_phonon > 2.0 * t1_phonon)
        throw InvalidParameterError("t2_phonon exceeds 2 * t1_phonon");
}

DeviceParams DeviceParams::table1() {
    DeviceParams d;
    d.phonon_freq = constants::two_pi * 5.048630e9;
    d.qubit_freq = constants::two_pi * 5.06881e9;
    d.anharmonicity = constants::two_pi * -185.12e6;
    d.coupling = constants::two_pi * 280e3;
    d.fsr = constants::two_pi * 12.5e6;
    d.mode_number = 404;
    d.t1_phonon = 112e-6;
    d.t2_phonon = 200e-6;
    d.t1_ge = 28e-6;
    d.t1_ef = 20e-6;
    d.t_phi = 20e-6;
    d.t_qubit_init = 30e-3;
    d.t_qubit_bath = 40e-3;
    d.t_env = 10e-3;
    d.length = 435e-6;
    d.waist = 27e-6;
    d.density = 3980.0;
    d.stiffness_c33 = 500e9;
    d.piezo_e33 = 0.4;
    d.rel_permittivity = 10.0;
    return d;
}

DeviceParams DeviceParams::ideal() {
    DeviceParams d = table1();
    d.t1_phonon = 1e3;
    d.t2_phonon = 2e3;
    d.t1_ge = 1e3;
    d.t1_ef = 1e3;
    d.t_phi = 1e3;
    d.t_qubit_init = 0.0;
    d.t_qubit_bath = 0.0;
    d.t_env = 0.0;
    return d;
}

void ProtocolSettings::validate() const {
    if (iswap_amplitude < 0.0 || iswap_amplitude > 1.2)
        throw InvalidParameterError("iswap_amplitude must be in [0, 1.2]");
    if (!(readout_fidelity > 0.5 && readout_fidelity <= 1.0))
        throw InvalidParameterError("readout_fidelity must be in (0.5, 1]");
    if (pi_duration <= 0.0) throw InvalidParameterError("pi_duration must be > 0");
    if (iswap_duration_override && *iswap_duration_override <= 0.0)
        throw InvalidParameterError("iswap_duration_override must be > 0");
}

SystemModel build_system(const DeviceParams& device, const HilbertLayout& layout) {
    if (layout.qubit_levels != 3)
        throw InvalidParameterError("build_system requires a three-level qubit");
    device.validate();

    const auto q = qutrit_ops();
    const Matrix a = annihilation(layout.fock_cutoff);
    const double g = device.coupling;

    SystemModel model;
    // Qubit Stark-tuned onto the phonon; both transitions taken at exact
    // resonance in the rotating frame.
    model.hamiltonian = g * (kron(q.sigma_ge, a.adjoint()) + kron(q.sigma_ge.adjoint(), a)) +
                        std::numbers::sqrt2 * g *
                            (kron(q.sigma_ef, a.adjoint()) + kron(q.sigma_ef.adjoint(), a));
    model.full_swap_duration = std::numbers::pi / (2.0 * g);

    const double n_q = bath_occupation(device.qubit_freq, device.t_qubit_bath);
    const double n_p = bath_occupation(device.phonon_freq, device.t_env);
    const double phonon_deph = 1.0 / device.t2_phonon - 0.5 / device.t1_phonon;
    if (phonon_deph < 0.0) throw InvalidParameterError("negative phonon pure dephasing rate");

    const Matrix n_qubit = q.proj_e + 2.0 * q.proj_f;
    auto& c = model.collapses;
    c.push_back({embed(q.sigma_ge, Slot::qubit, layout), (1.0 + n_q) / device.t1_ge});
    c.push_back({embed(q.sigma_ge.adjoint(), Slot::qubit, layout), n_q / device.t1_ge});
    c.push_back({embed(q.sigma_ef, Slot::qubit, layout), 1.0 / device.t1_ef});
    // L = qubit excitation number at rate 2/T_phi: the g-e coherence then
    // decays at exactly 1/T_phi.
    c.push_back({embed(n_qubit, Slot::qubit, layout), 2.0 / device.t_phi});
    c.push_back({embed(a, Slot::phonon, layout), (1.0 + n_p) / device.t1_phonon});
    c.push_back({embed(a.adjoint(), Slot::phonon, layout), n_p / device.t1_phonon});
    c.push_back({embed(number_operator(layout.fock_cutoff), Slot::phonon, layout),
                 2.0 * phonon_deph});
    return model;
}

QuantumState protocol_initial_state(const DeviceParams& device, double true_population,
                                    const HilbertLayout& layout) {
    if (true_population < 0.0 || true_population >= 0.5)
        throw InvalidParameterError("true phonon population must be in [0, 0.5)");
    const QuantumState qubit = thermal_state(device.qubit_freq, device.t_qubit_init, 3);
    Matrix phonon = Matrix::Zero(layout.fock_cutoff, layout.fock_cutoff);
    phonon(0, 0) = 1.0 - true_population;
    phonon(1, 1) = true_population;

    QuantumState state;
    state.density = kron(qubit.density, phonon);
    state.dims = {layout.qubit_levels, layout.fock_cutoff};
    return state;
}

QuantumState gate_iswap(const QuantumState& state, const DeviceParams& device,
                        const ProtocolSettings& settings, const HilbertLayout& layout,
                        const EvolveSettings& evolve_settings) {
    settings.validate();
    const SystemModel model = build_system(device, layout);
    const double full = settings.iswap_duration_override.value_or(model.full_swap_duration);
    const double duration = settings.iswap_amplitude * full;
    if (duration == 0.0) return state;

    TimeSegment seg;
    seg.duration = duration;
    seg.hamiltonian = model.hamiltonian;
    seg.frame = Frame::rotating;
    return evolve(state, std::span(&seg, 1), model.collapses, evolve_settings);
}

QuantumState apply_pi(const QuantumState& state, Transition transition,
                      const HilbertLayout& layout) {
    const Matrix u = pi_unitary(transition, layout);
    QuantumState out = state;
    out.density = u * state.density * u.adjoint();
    return out;
}

namespace {

// Finite-duration pi pulse: resonant Rabi drive with dissipation active, the
// qubit detuned away from the phonon (coupling off).
QuantumState apply_pi_finite(const QuantumState& state, Transition transition,
                             const DeviceParams& device, const ProtocolSettings& settings,
                             const HilbertLayout& layout, const EvolveSettings& evolve_settings) {
    const SystemModel model = build_system(device, layout);
    const auto q = qutrit_ops();
    const Matrix lower = (transition == Transition::ge) ? q.sigma_ge : q.sigma_ef;
    TimeSegment seg;
    seg.duration = settings.pi_duration;
    seg.hamiltonian = Matrix::Zero(layout.dim(), layout.dim());
    // Half Rabi period = pulse duration.
    seg.drive = Drive{embed(lower, Slot::qubit, layout),
                      0.5 * std::numbers::pi / settings.pi_duration, 0.0, 0.0};
    seg.frame = Frame::rotating;
    return evolve(state, std::span(&seg, 1), model.collapses, evolve_settings);
}

}  // namespace

double readout_contrast(const QuantumState& drive_on, const QuantumState& drive_off,
                        double readout_fidelity, const HilbertLayout& layout) {
    if (!(readout_fidelity > 0.5 && readout_fidelity <= 1.0))
        throw InvalidParameterError("readout_fidelity must be in (0.5, 1]");
    const Matrix proj_g = embed(qutrit_ops().proj_g, Slot::qubit, layout);
    auto outcome = [&](const QuantumState& s) {
        const double p_g = expectation(proj_g, s);
        return readout_fidelity * p_g + (1.0 - readout_fidelity) * (1.0 - p_g);
    };
    return std::abs(outcome(drive_on) - outcome(drive_off));
}

double extract_population(double a_sig, double a_ref) {
    if (a_sig < 0.0 || a_ref < 0.0) throw InvalidParameterError("contrasts must be >= 0");
    if (a_sig + a_ref <= 0.0)
        throw DegenerateContrastError("both contrasts are zero");
    return a_sig / (a_sig + a_ref);
}

ContrastResult run_protocol(const DeviceParams& device, double true_population,
                            const ProtocolSettings& settings, const HilbertLayout& layout,
                            const EvolveSettings& evolve_settings) {
    settings.validate();
    const QuantumState init = protocol_initial_state(device, true_population, layout);
    const QuantumState after_swap = gate_iswap(init, device, settings, layout, evolve_settings);

    auto pulse = [&](const QuantumState& s, Transition t) {
        if (settings.gate_model == GateModel::finite_duration)
            return apply_pi_finite(s, t, device, settings, layout, evolve_settings);
        return apply_pi(s, t, layout);
    };
    auto branch_contrast = [&](const QuantumState& base) {
        const QuantumState off = pulse(base, Transition::ge);
        const QuantumState on = pulse(pulse(base, Transition::ef), Transition::ge);
        return readout_contrast(on, off, settings.readout_fidelity, layout);
    };

    ContrastResult result;
    result.a_sig = branch_contrast(after_swap);
    if (settings.include_reference) {
        result.a_ref = branch_contrast(pulse(after_swap, Transition::ge));
        result.population = extract_population(result.a_sig, result.a_ref);
    } else {
        result.a_ref = 0.0;
        result.population = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

std::vector<SweepPoint> sweep(const DeviceParams& device, const SweepSpec& spec,
                              const ProtocolSettings& settings, const HilbertLayout& layout,
                              const EvolveSettings& evolve_settings, int jobs) {
    if (spec.values.empty()) throw InvalidParameterError("sweep values must be non-empty");
    if (jobs < 1) throw InvalidParameterError("jobs must be >= 1");

    auto run_one = [&](double value) {
        DeviceParams d = device;
        ProtocolSettings s = settings;
        switch (spec.parameter) {
            case SweepParameter::T1_ge: d.t1_ge = value; break;
            case SweepParameter::T_qb_bath: d.t_qubit_bath = value; break;
            case SweepParameter::T1_ef: d.t1_ef = value; break;
            case SweepParameter::A_iSWAP: s.iswap_amplitude = value; break;
            case SweepParameter::T_phi: d.t_phi = value; break;
            case SweepParameter::F_ro: s.readout_fidelity = value; break;
        }
        return run_protocol(d, spec.true_population, s, layout, evolve_settings);
    };

    std::vector<SweepPoint> points(spec.values.size());
    const int n = static_cast<int>(spec.values.size());
    const int workers = std::min(jobs, n);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) points[i] = {spec.values[i], run_one(spec.values[i])};
        return points;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < n; i += workers)
                    points[i] = {spec.values[i], run_one(spec.values[i])};
            } catch (...) {
                std::scoped_lock lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return points;
}

namespace {

// Measured-vs-true curve on {0} + a 25-points-per-decade log grid over
// [1e-7, 1e-2].
std::vector<double> inversion_grid() {
    std::vector<double> grid{0.0};
    for (int i = 0; i <= 125; ++i) grid.push_back(1e-7 * std::pow(10.0, i / 25.0));
    return grid;
}

// Monotone piecewise interpolation of the inverse curve, log-log on the grid
// interior, linear on the [0, grid[1]] edge. nullopt when measured sits below
// the curve floor.
std::optional<double> invert_curve(const std::vector<double>& grid,
                                   const std::vector<double>& measured_curve, double measured) {
    for (std::size_t i = 0; i + 1 < measured_curve.size(); ++i)
        if (measured_curve[i + 1] <= measured_curve[i])
            throw InversionError("measured-vs-true curve is not strictly increasing");
    if (measured < measured_curve.front()) return std::nullopt;
    if (measured > measured_curve.back())
        throw InvalidParameterError("measured population above the simulated output range");

    const auto it = std::lower_bound(measured_curve.begin(), measured_curve.end(), measured);
    std::size_t j = static_cast<std::size_t>(it - measured_curve.begin());
    if (j == 0) return 0.0;
    --j;
    const double c0 = measured_curve[j], c1 = measured_curve[j + 1];
    if (j == 0)  // edge segment anchored at true population 0
        return grid[1] * (measured - c0) / (c1 - c0);
    const double t = (std::log(measured) - std::log(c0)) / (std::log(c1) - std::log(c0));
    return std::exp(std::log(grid[j]) + t * (std::log(grid[j + 1]) - std::log(grid[j])));
}

}  // namespace

double infer_population(double measured, const DeviceParams& device,
                        std::pair<double, double> bath_range_kelvin,
                        const ProtocolSettings& settings, const HilbertLayout& layout,
                        const EvolveSettings& evolve_settings) {
    if (measured < 0.0) throw InvalidParameterError("measured population must be >= 0");
    const std::vector<double> grid = inversion_grid();

    std::optional<double> best;
    double lowest_floor = std::numeric_limits<double>::infinity();
    for (double bath : {bath_range_kelvin.first, bath_range_kelvin.second}) {
        DeviceParams d = device;
        d.t_qubit_bath = bath;
        std::vector<double> curve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            curve[i] = run_protocol(d, grid[i], settings, layout, evolve_settings).population;
        lowest_floor = std::min(lowest_floor, curve.front());
        if (auto inferred = invert_curve(grid, curve, measured))
            best = std::max(best.value_or(0.0), *inferred);
    }
    if (!best)
        throw FloorDominatedError("measured population below the simulated protocol floor",
                                  lowest_floor);
    return *best;
}

}  // namespace hqs
