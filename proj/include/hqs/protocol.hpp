#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hqs/lindblad.hpp"

namespace hqs {

/// Physical device constants. Frequencies in rad/s, times in s, temperatures
/// in K, lengths in m; see table1() for the bundled reference values.
struct DeviceParams {
    double phonon_freq = 0.0;      // omega_p
    double qubit_freq = 0.0;       // omega_q, without Stark drive
    double anharmonicity = 0.0;    // alpha (negative for a transmon)
    double coupling = 0.0;         // g
    double fsr = 0.0;              // omega_FSR
    int mode_number = 0;           // n
    double t1_phonon = 0.0;
    double t2_phonon = 0.0;
    double t1_ge = 0.0;
    double t1_ef = 0.0;
    double t_phi = 0.0;
    double t_qubit_init = 0.0;     // after cooling gate C
    double t_qubit_bath = 0.0;
    double t_env = 0.0;            // phonon bath
    double length = 0.0;           // L
    double waist = 0.0;            // mu
    double density = 0.0;          // rho, kg/m^3
    double stiffness_c33 = 0.0;    // Pa
    double piezo_e33 = 0.0;        // C/m^2
    double rel_permittivity = 0.0;

    void validate() const;

    /// Reference parameter set of the measured device.
    static DeviceParams table1();
    /// All decay channels pushed to 1e3 s, baths at 0 K: lossless protocol.
    static DeviceParams ideal();
};

enum class GateModel { instantaneous, finite_duration };

struct ProtocolSettings {
    double iswap_amplitude = 1.0;   // in [0, 1.2]
    double readout_fidelity = 1.0;  // in (0.5, 1]
    GateModel gate_model = GateModel::instantaneous;
    bool include_reference = true;
    double pi_duration = 25e-9;  // finite-duration mode only
    std::optional<double> iswap_duration_override;  // full-swap time, default pi/(2g)

    void validate() const;
};

struct ContrastResult {
    double a_sig = 0.0;
    double a_ref = 0.0;
    double population = 0.0;
};

enum class SweepParameter { T1_ge, T_qb_bath, T1_ef, A_iSWAP, T_phi, F_ro };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::T1_ge;
    std::vector<double> values;
    double true_population = 0.0;
};

struct SweepPoint {
    double value = 0.0;
    ContrastResult result;
};

/// Resonant Jaynes-Cummings generator and collapse set of the device, in the
/// frame rotating at the phonon frequency with the qubit Stark-tuned onto it.
struct SystemModel {
    Matrix hamiltonian;  // g coupling on g-e, sqrt(2) g on e-f, alpha on |f>
    std::vector<CollapseOp> collapses;
    double full_swap_duration = 0.0;  // pi/(2g) unless overridden
};

SystemModel build_system(const DeviceParams& device, const HilbertLayout& layout);

QuantumState protocol_initial_state(const DeviceParams& device, double true_population,
                                    const HilbertLayout& layout);

QuantumState gate_iswap(const QuantumState& state, const DeviceParams& device,
                        const ProtocolSettings& settings, const HilbertLayout& layout,
                        const EvolveSettings& evolve_settings = {});

enum class Transition { ge, ef };

QuantumState apply_pi(const QuantumState& state, Transition transition,
                      const HilbertLayout& layout);

/// |difference| of the two states' ground-level probabilities after the
/// symmetric readout confusion matrix [F, 1-F; 1-F, F].
double readout_contrast(const QuantumState& drive_on, const QuantumState& drive_off,
                        double readout_fidelity, const HilbertLayout& layout);

double extract_population(double a_sig, double a_ref);

ContrastResult run_protocol(const DeviceParams& device, double true_population,
                            const ProtocolSettings& settings, const HilbertLayout& layout,
                            const EvolveSettings& evolve_settings = {});

/// One run_protocol per value, all else fixed; `jobs` > 1 fans the runs out
/// across threads, output order matches input order either way.
std::vector<SweepPoint> sweep(const DeviceParams& device, const SweepSpec& spec,
                              const ProtocolSettings& settings, const HilbertLayout& layout,
                              const EvolveSettings& evolve_settings = {}, int jobs = 1);

/// Inverts measured-vs-true curves built at the two bath extremes; returns the
/// inferred true-population upper bound (largest inversion over the extremes).
double infer_population(double measured, const DeviceParams& device,
                        std::pair<double, double> bath_range_kelvin,
                        const ProtocolSettings& settings, const HilbertLayout& layout,
                        const EvolveSettings& evolve_settings = {});

}  // namespace hqs
