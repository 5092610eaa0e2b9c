#include "hqs/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hqs/constants.hpp"
#include "hqs/errors.hpp"

namespace hqs {

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw InvalidParameterError(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (key == k) { known = true; break; }
        if (!known) throw InvalidParameterError("unknown key '" + key + "' in " + where);
    }
}

double require_number(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key))
        throw InvalidParameterError("missing key '" + std::string(key) + "' in " + where);
    if (!obj[key].is_number())
        throw InvalidParameterError("key '" + std::string(key) + "' in " + where +
                                    " must be a number");
    return obj[key].get<double>();
}

double optional_number(const json& obj, const char* key, double fallback) {
    return obj.contains(key) ? obj[key].get<double>() : fallback;
}

}  // namespace

json device_to_json(const DeviceParams& d) {
    const double rad = constants::two_pi;
    return json{
        {"phonon_freq_hz", d.phonon_freq / rad},
        {"qubit_freq_hz", d.qubit_freq / rad},
        {"anharmonicity_hz", d.anharmonicity / rad},
        {"coupling_hz", d.coupling / rad},
        {"fsr_hz", d.fsr / rad},
        {"mode_number", d.mode_number},
        {"t1_phonon_s", d.t1_phonon},
        {"t2_phonon_s", d.t2_phonon},
        {"t1_ge_s", d.t1_ge},
        {"t1_ef_s", d.t1_ef},
        {"t_phi_s", d.t_phi},
        {"t_qubit_init_k", d.t_qubit_init},
        {"t_qubit_bath_k", d.t_qubit_bath},
        {"t_env_k", d.t_env},
        {"length_m", d.length},
        {"waist_m", d.waist},
        {"density_kg_m3", d.density},
        {"stiffness_c33_pa", d.stiffness_c33},
        {"piezo_e33_c_m2", d.piezo_e33},
        {"rel_permittivity", d.rel_permittivity},
    };
}

DeviceParams device_from_json(const json& j) {
    check_keys(j, "device",
               {"phonon_freq_hz", "qubit_freq_hz", "anharmonicity_hz", "coupling_hz", "fsr_hz",
                "mode_number", "t1_phonon_s", "t2_phonon_s", "t1_ge_s", "t1_ef_s", "t_phi_s",
                "t_qubit_init_k", "t_qubit_bath_k", "t_env_k", "length_m", "waist_m",
                "density_kg_m3", "stiffness_c33_pa", "piezo_e33_c_m2", "rel_permittivity"});
    const double rad = constants::two_pi;
    DeviceParams d;
    d.phonon_freq = rad * require_number(j, "device", "phonon_freq_hz");
    d.qubit_freq = rad * require_number(j, "device", "qubit_freq_hz");
    d.anharmonicity = rad * require_number(j, "device", "anharmonicity_hz");
    d.coupling = rad * require_number(j, "device", "coupling_hz");
    d.fsr = rad * require_number(j, "device", "fsr_hz");
    d.mode_number = static_cast<int>(require_number(j, "device", "mode_number"));
    d.t1_phonon = require_number(j, "device", "t1_phonon_s");
    d.t2_phonon = require_number(j, "device", "t2_phonon_s");
    d.t1_ge = require_number(j, "device", "t1_ge_s");
    d.t1_ef = require_number(j, "device", "t1_ef_s");
    d.t_phi = require_number(j, "device", "t_phi_s");
    d.t_qubit_init = require_number(j, "device", "t_qubit_init_k");
    d.t_qubit_bath = require_number(j, "device", "t_qubit_bath_k");
    d.t_env = require_number(j, "device", "t_env_k");
    d.length = require_number(j, "device", "length_m");
    d.waist = require_number(j, "device", "waist_m");
    d.density = require_number(j, "device", "density_kg_m3");
    d.stiffness_c33 = require_number(j, "device", "stiffness_c33_pa");
    d.piezo_e33 = require_number(j, "device", "piezo_e33_c_m2");
    d.rel_permittivity = require_number(j, "device", "rel_permittivity");
    d.validate();
    return d;
}

std::string scenario_label_name(ScenarioLabel label) {
    switch (label) {
        case ScenarioLabel::current: return "current";
        case ScenarioLabel::next_generation: return "next_generation";
        case ScenarioLabel::mhz_device: return "mhz_device";
    }
    throw InvalidParameterError("unknown scenario label");
}

ScenarioLabel scenario_label_from_name(const std::string& name) {
    if (name == "current") return ScenarioLabel::current;
    if (name == "next_generation") return ScenarioLabel::next_generation;
    if (name == "mhz_device") return ScenarioLabel::mhz_device;
    throw InvalidParameterError("unknown scenario label '" + name + "'");
}

std::string sweep_parameter_name(SweepParameter parameter) {
    switch (parameter) {
        case SweepParameter::T1_ge: return "T1_ge";
        case SweepParameter::T_qb_bath: return "T_qb_bath";
        case SweepParameter::T1_ef: return "T1_ef";
        case SweepParameter::A_iSWAP: return "A_iSWAP";
        case SweepParameter::T_phi: return "T_phi";
        case SweepParameter::F_ro: return "F_ro";
    }
    throw InvalidParameterError("unknown sweep parameter");
}

SweepParameter sweep_parameter_from_name(const std::string& name) {
    if (name == "T1_ge") return SweepParameter::T1_ge;
    if (name == "T_qb_bath") return SweepParameter::T_qb_bath;
    if (name == "T1_ef") return SweepParameter::T1_ef;
    if (name == "A_iSWAP") return SweepParameter::A_iSWAP;
    if (name == "T_phi") return SweepParameter::T_phi;
    if (name == "F_ro") return SweepParameter::F_ro;
    throw InvalidParameterError("unknown sweep parameter '" + name + "'");
}

RunConfig parse_config(const json& source) {
    check_keys(source, "config",
               {"device", "protocol", "layout", "engine", "simulate", "sweep", "scenario"});
    if (!source.contains("device"))
        throw InvalidParameterError("missing key 'device' in config");

    RunConfig config;
    config.raw = source;
    config.device = device_from_json(source["device"]);

    if (source.contains("protocol")) {
        const json& p = source["protocol"];
        check_keys(p, "protocol",
                   {"iswap_amplitude", "readout_fidelity", "gate_model", "include_reference",
                    "pi_duration_s", "iswap_duration_s"});
        config.protocol.iswap_amplitude = optional_number(p, "iswap_amplitude", 1.0);
        config.protocol.readout_fidelity = optional_number(p, "readout_fidelity", 1.0);
        if (p.contains("gate_model")) {
            const std::string model = p["gate_model"].get<std::string>();
            if (model == "instantaneous")
                config.protocol.gate_model = GateModel::instantaneous;
            else if (model == "finite_duration")
                config.protocol.gate_model = GateModel::finite_duration;
            else
                throw InvalidParameterError("unknown gate_model '" + model + "'");
        }
        if (p.contains("include_reference"))
            config.protocol.include_reference = p["include_reference"].get<bool>();
        config.protocol.pi_duration = optional_number(p, "pi_duration_s", 25e-9);
        if (p.contains("iswap_duration_s"))
            config.protocol.iswap_duration_override = p["iswap_duration_s"].get<double>();
        config.protocol.validate();
    }
    if (source.contains("layout")) {
        const json& l = source["layout"];
        check_keys(l, "layout", {"qubit_levels", "fock_cutoff"});
        config.layout.qubit_levels =
            static_cast<int>(optional_number(l, "qubit_levels", 3));
        config.layout.fock_cutoff = static_cast<int>(optional_number(l, "fock_cutoff", 5));
        if (config.layout.fock_cutoff < 3)
            throw InvalidParameterError("fock_cutoff must be >= 3");
    }
    if (source.contains("engine")) {
        const json& e = source["engine"];
        check_keys(e, "engine", {"rel_tol", "abs_tol", "max_step_s"});
        config.engine.rel_tol = optional_number(e, "rel_tol", 1e-9);
        config.engine.abs_tol = optional_number(e, "abs_tol", 1e-12);
        config.engine.max_step = optional_number(e, "max_step_s", 0.0);
    }
    if (source.contains("simulate")) {
        const json& s = source["simulate"];
        check_keys(s, "simulate", {"true_population"});
        config.simulate = SimulateSpec{require_number(s, "simulate", "true_population")};
    }
    if (source.contains("sweep")) {
        const json& s = source["sweep"];
        check_keys(s, "sweep", {"parameter", "values", "true_population"});
        if (!s.contains("parameter") || !s.contains("values"))
            throw InvalidParameterError("sweep requires 'parameter' and 'values'");
        SweepSpec spec;
        spec.parameter = sweep_parameter_from_name(s["parameter"].get<std::string>());
        spec.values = s["values"].get<std::vector<double>>();
        spec.true_population = optional_number(s, "true_population", 0.0);
        config.sweep = spec;
    }
    if (source.contains("scenario")) {
        const json& s = source["scenario"];
        check_keys(s, "scenario", {"label"});
        if (!s.contains("label"))
            throw InvalidParameterError("scenario requires 'label'");
        config.scenario = scenario_label_from_name(s["label"].get<std::string>());
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::filesystem::path resolved = path;
    if (!std::filesystem::exists(resolved) && path.is_relative()) {
        if (const char* dir = std::getenv("HQS_CONFIG_DIR")) {
            const auto candidate = std::filesystem::path(dir) / path;
            if (std::filesystem::exists(candidate)) resolved = candidate;
        }
    }
    std::ifstream in(resolved);
    if (!in) throw InvalidParameterError("cannot open config file '" + path.string() + "'");
    json source;
    try {
        source = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidParameterError("config parse error in '" + resolved.string() +
                                    "': " + e.what());
    }
    return parse_config(source);
}

std::string config_hash(const json& source) {
    const std::string canonical = source.dump();
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string format_sci(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.8e", value);
    return buf;
}

json contrast_to_json(const ContrastResult& r) {
    return json{{"a_sig", r.a_sig}, {"a_ref", r.a_ref}, {"population", r.population}};
}

json gw_to_json(const GWResult& r) {
    return json{{"h0", r.h0},
                {"omega_gw_rad_s", r.drive},
                {"xi33_m_5_2", r.xi33},
                {"population", r.population},
                {"decay_rate_1_s", r.decay},
                {"assumptions", r.assumptions}};
}

json dp_to_json(const DPResult& r) {
    return json{{"kappa", r.kappa},
                {"omega_dp_rad_s", r.drive},
                {"e33_c_m2", r.e33_used},
                {"rho_v_j_m3", r.rho_v},
                {"population", r.population},
                {"decay_rate_1_s", r.decay},
                {"assumptions", r.assumptions}};
}

json csl_to_json(const CSLResult& r) {
    return json{{"tau_e_s", r.tau_e},
                {"lambda_csl_1_s", r.lambda_csl},
                {"r_csl_m", r.r_csl},
                {"population", r.population},
                {"t1_phonon_s", r.t1_phonon}};
}

json scenario_to_json(const DeviceScenario& s) {
    return json{{"label", scenario_label_name(s.label)},
                {"frequency_hz", s.frequency / constants::two_pi},
                {"mode_number", s.mode_number},
                {"t1_phonon_s", s.t1_phonon},
                {"length_m", s.length},
                {"waist_m", s.waist},
                {"density_kg_m3", s.density},
                {"stiffness_c33_pa", s.stiffness_c33},
                {"piezo_e33_c_m2", s.piezo_e33},
                {"rel_permittivity", s.rel_permittivity},
                {"integration_time_s", s.integration_time},
                {"population", s.population},
                {"dark_photon_applicable", s.dark_photon_applicable},
                {"assumptions", s.assumptions}};
}

json projection_to_json(const ProjectionResult& r) {
    json out{{"scenario", scenario_to_json(r.scenario)},
             {"gw", gw_to_json(r.gw)},
             {"csl", csl_to_json(r.csl)}};
    if (r.dp)
        out["dp"] = dp_to_json(*r.dp);
    else
        out["dp_skipped"] = "kinetic mixing suppressed by electromagnetic shielding";
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        // trim
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return fields;
}

double parse_field(const std::string& field, int row, const char* name) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(field, &pos);
        if (pos != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw InvalidParameterError("malformed " + std::string(name) + " '" + field +
                                    "' in CSV row " + std::to_string(row));
    }
}

}  // namespace

std::vector<PopulationRecord> read_population_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameterError("cannot open CSV file '" + path.string() + "'");
    std::vector<PopulationRecord> records;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (row == 1 && !fields.empty() && fields[0] == "label") continue;  // header
        if (fields.size() < 4)
            throw InvalidParameterError("CSV row " + std::to_string(row) +
                                        " has fewer than 4 columns");
        PopulationRecord r;
        r.label = fields[0];
        r.mean = parse_field(fields[1], row, "mean");
        r.variance = parse_field(fields[2], row, "variance");
        r.n_shots = static_cast<std::int64_t>(parse_field(fields[3], row, "n_shots"));
        if (fields.size() > 4 && !fields[4].empty()) r.timestamp = fields[4];
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<ThermometryPoint> read_thermometry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameterError("cannot open CSV file '" + path.string() + "'");
    std::vector<ThermometryPoint> points;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (row == 1 && !fields.empty() && fields[0] == "temperature") continue;
        if (fields.size() < 3)
            throw InvalidParameterError("CSV row " + std::to_string(row) +
                                        " has fewer than 3 columns");
        ThermometryPoint p;
        p.temperature = parse_field(fields[0], row, "temperature");
        p.population = parse_field(fields[1], row, "population");
        p.sigma = parse_field(fields[2], row, "sigma");
        points.push_back(p);
    }
    return points;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points, const std::string& hash) {
    std::ostringstream out;
    out << "# config_hash=" << hash << "\n";
    out << "parameter,a_sig,a_ref,population\n";
    for (const auto& p : points)
        out << format_sci(p.value) << ',' << format_sci(p.result.a_sig) << ','
            << format_sci(p.result.a_ref) << ',' << format_sci(p.result.population) << '\n';
    return out.str();
}

}  // namespace hqs
