#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hqs/protocol.hpp"

namespace hqs {

struct GWResult {
    double h0 = 0.0;          // strain amplitude
    double drive = 0.0;       // Omega_GW magnitude, rad/s
    double xi33 = 0.0;        // m^(5/2)
    double population = 0.0;
    double decay = 0.0;       // Gamma = 1/T1_phonon
    std::vector<std::string> assumptions;
};

struct DPResult {
    double kappa = 0.0;
    double drive = 0.0;       // Omega_DP magnitude, rad/s
    double e33_used = 0.0;    // C/m^2
    double rho_v = 0.0;       // dark matter energy density, J/m^3
    double population = 0.0;
    double decay = 0.0;
    std::vector<std::string> assumptions;
};

struct CSLResult {
    double tau_e = 0.0;       // s
    double lambda_csl = 0.0;  // 1/s
    double r_csl = 3.0e-7;    // m, carried as a constant
    double population = 0.0;
    double t1_phonon = 0.0;
};

enum class ScenarioLabel { current, next_generation, mhz_device };

/// Device assumption set for a bound projection. Frequencies in rad/s.
struct DeviceScenario {
    ScenarioLabel label = ScenarioLabel::current;
    double frequency = 0.0;
    int mode_number = 0;
    double t1_phonon = 0.0;
    double length = 0.0;
    double waist = 0.0;
    double density = 0.0;
    double stiffness_c33 = 0.0;
    double piezo_e33 = 0.0;
    double rel_permittivity = 0.0;
    double integration_time = 0.0;  // s
    double population = 0.0;
    bool dark_photon_applicable = true;
    std::vector<std::string> assumptions;

    static DeviceScenario current(const DeviceParams& device, double population,
                                  double integration_time = 7.0 * 86400.0);
    static DeviceScenario next_generation();
    static DeviceScenario mhz_device();
    static DeviceScenario from_label(ScenarioLabel label);
};

struct ProjectionResult {
    DeviceScenario scenario;
    GWResult gw;
    std::optional<DPResult> dp;  // skipped for the MHz device
    CSLResult csl;
};

/// Mode-overlap coupling 4 L^(3/2) mu / (pi^(3/2) n^2); exactly 0 for even n.
double xi_33(double length, double waist, int mode_number);

/// Brute-force volume integral of the mode profile times z; oracle for xi_33.
double xi_33_numeric(double length, double waist, int mode_number);

double gw_drive(double h0, const DeviceParams& device);
GWResult h0_bound(double population, const DeviceParams& device);

/// value in GeV/cm^3 -> J/m^3.
double convert_energy_density(double value);

/// Local dark matter energy density, 0.4 GeV/cm^3 in SI.
double dark_matter_energy_density();

double dp_drive(double kappa, const DeviceParams& device, double e33);
DPResult kappa_bound(double population, const DeviceParams& device, double e33);

CSLResult csl_bound(double population, double t1_phonon);

ProjectionResult project(const DeviceScenario& scenario);

}  // namespace hqs
