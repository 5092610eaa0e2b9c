#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hqs/bounds.hpp"
#include "hqs/protocol.hpp"
#include "hqs/stats.hpp"

namespace hqs {

using json = nlohmann::json;

struct SimulateSpec {
    double true_population = 0.0;
};

struct RunConfig {
    DeviceParams device;
    ProtocolSettings protocol;
    HilbertLayout layout;
    EvolveSettings engine;
    std::optional<SimulateSpec> simulate;
    std::optional<SweepSpec> sweep;
    std::optional<ScenarioLabel> scenario;
    json raw;  // parsed source, canonical input for hashing
};

/// Strict parse: unknown keys are rejected with the offending key named.
RunConfig parse_config(const json& source);

/// Loads a config file; a relative path that does not exist is also searched
/// under $HQS_CONFIG_DIR.
RunConfig load_config(const std::filesystem::path& path);

/// FNV-1a 64 over the canonical (key-sorted) serialization.
std::string config_hash(const json& source);

/// 9 significant digits, scientific notation.
std::string format_sci(double value);

json device_to_json(const DeviceParams& device);
DeviceParams device_from_json(const json& j);

json contrast_to_json(const ContrastResult& result);
json gw_to_json(const GWResult& result);
json dp_to_json(const DPResult& result);
json csl_to_json(const CSLResult& result);
json scenario_to_json(const DeviceScenario& scenario);
json projection_to_json(const ProjectionResult& result);

std::string scenario_label_name(ScenarioLabel label);
ScenarioLabel scenario_label_from_name(const std::string& name);
std::string sweep_parameter_name(SweepParameter parameter);
SweepParameter sweep_parameter_from_name(const std::string& name);

/// CSV with columns label, mean, variance, n_shots[, timestamp]. Malformed
/// rows raise InvalidParameterError naming the row number.
std::vector<PopulationRecord> read_population_records(const std::filesystem::path& path);

/// CSV with columns temperature, population, sigma.
std::vector<ThermometryPoint> read_thermometry(const std::filesystem::path& path);

/// Sweep CSV: parameter, a_sig, a_ref, population.
std::string sweep_to_csv(const std::vector<SweepPoint>& points, const std::string& config_hash);

}  // namespace hqs
