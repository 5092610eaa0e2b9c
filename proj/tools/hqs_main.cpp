#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <sstream>

#include "hqs/bounds.hpp"
#include "hqs/config.hpp"
#include "hqs/constants.hpp"
#include "hqs/errors.hpp"
#include "hqs/lindblad.hpp"
#include "hqs/protocol.hpp"
#include "hqs/stats.hpp"

namespace {

using hqs::json;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool verify = false;
};

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw hqs::InvalidParameterError("cannot write output file '" + out_path + "'");
    out << content;
}

json protocol_to_json(const hqs::ProtocolSettings& p) {
    json out{{"iswap_amplitude", p.iswap_amplitude},
             {"readout_fidelity", p.readout_fidelity},
             {"gate_model",
              p.gate_model == hqs::GateModel::instantaneous ? "instantaneous" : "finite_duration"},
             {"include_reference", p.include_reference},
             {"pi_duration_s", p.pi_duration}};
    if (p.iswap_duration_override) out["iswap_duration_s"] = *p.iswap_duration_override;
    return out;
}

json engine_to_json(const hqs::EvolveSettings& e) {
    return json{{"rel_tol", e.rel_tol}, {"abs_tol", e.abs_tol}, {"max_step_s", e.max_step}};
}

json run_header(const char* command, const hqs::RunConfig& config, std::uint64_t seed) {
    return json{{"command", command},
                {"config_hash", hqs::config_hash(config.raw)},
                {"seed", seed},
                {"device", hqs::device_to_json(config.device)},
                {"protocol", protocol_to_json(config.protocol)},
                {"engine", engine_to_json(config.engine)},
                {"layout",
                 {{"qubit_levels", config.layout.qubit_levels},
                  {"fock_cutoff", config.layout.fock_cutoff}}}};
}

// --verify: compare the hash embedded in an existing output against the hash
// re-derived from the config. Returns the process exit code.
int verify_output(const hqs::RunConfig& config, const std::string& out_path) {
    if (out_path.empty())
        throw hqs::InvalidParameterError("--verify requires --out pointing at an existing output");
    std::ifstream in(out_path);
    if (!in)
        throw hqs::InvalidParameterError("cannot open output file '" + out_path + "'");
    const std::string expected = hqs::config_hash(config.raw);
    std::string embedded;
    char first = 0;
    in.get(first);
    in.seekg(0);
    if (first == '{') {
        const json parsed = json::parse(in);
        if (!parsed.contains("config_hash"))
            throw hqs::InvalidParameterError("output file carries no config_hash");
        embedded = parsed["config_hash"].get<std::string>();
    } else {
        std::string line;
        std::getline(in, line);
        const std::string prefix = "# config_hash=";
        if (line.rfind(prefix, 0) != 0)
            throw hqs::InvalidParameterError("output file carries no config_hash");
        embedded = line.substr(prefix.size());
    }
    if (embedded == expected) {
        std::cout << "verify: ok (" << expected << ")\n";
        return 0;
    }
    std::cerr << "verify: mismatch (output " << embedded << ", config " << expected << ")\n";
    return 2;
}

int cmd_simulate(const CommonOptions& opts, double population_override, bool has_override) {
    const hqs::RunConfig config = hqs::load_config(opts.config_path);
    if (opts.verify) return verify_output(config, opts.out_path);

    double population;
    if (has_override)
        population = population_override;
    else if (config.simulate)
        population = config.simulate->true_population;
    else
        throw hqs::InvalidParameterError(
            "simulate requires a 'simulate.true_population' config block or --population");

    const auto result = hqs::run_protocol(config.device, population, config.protocol,
                                          config.layout, config.engine);
    json out = run_header("simulate", config, opts.seed);
    out["true_population"] = population;
    out["result"] = hqs::contrast_to_json(result);
    write_output(opts.out_path, out.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const CommonOptions& opts) {
    const hqs::RunConfig config = hqs::load_config(opts.config_path);
    if (opts.verify) return verify_output(config, opts.out_path);
    if (!config.sweep)
        throw hqs::InvalidParameterError("sweep requires a 'sweep' config block");
    const auto points = hqs::sweep(config.device, *config.sweep, config.protocol, config.layout,
                                   config.engine, opts.jobs);
    write_output(opts.out_path, hqs::sweep_to_csv(points, hqs::config_hash(config.raw)));
    return 0;
}

int cmd_bound(const CommonOptions& opts, const std::string& channel, double population) {
    const hqs::RunConfig config = hqs::load_config(opts.config_path);
    if (opts.verify) return verify_output(config, opts.out_path);
    if (!(population > 0.0))
        throw hqs::InvalidParameterError("bound requires --population > 0");

    json out = run_header("bound", config, opts.seed);
    out["channel"] = channel;
    out["population"] = population;
    if (channel == "gw") {
        out["result"] = hqs::gw_to_json(hqs::h0_bound(population, config.device));
    } else if (channel == "dp") {
        out["result"] =
            hqs::dp_to_json(hqs::kappa_bound(population, config.device, config.device.piezo_e33));
    } else if (channel == "csl") {
        out["result"] = hqs::csl_to_json(hqs::csl_bound(population, config.device.t1_phonon));
    } else {
        throw hqs::InvalidParameterError("--channel must be gw, dp, or csl");
    }
    write_output(opts.out_path, out.dump(2) + "\n");
    return 0;
}

int cmd_project(const CommonOptions& opts) {
    const hqs::RunConfig config = hqs::load_config(opts.config_path);
    if (opts.verify) return verify_output(config, opts.out_path);
    if (!config.scenario)
        throw hqs::InvalidParameterError("project requires a 'scenario' config block");

    hqs::DeviceScenario scenario = hqs::DeviceScenario::from_label(*config.scenario);
    if (*config.scenario == hqs::ScenarioLabel::current)
        scenario = hqs::DeviceScenario::current(config.device, scenario.population);
    const auto result = hqs::project(scenario);

    const json strain_row = {{"frequency_hz", scenario.frequency / hqs::constants::two_pi},
                             {"h0", result.gw.h0}};
    if (!opts.out_path.empty() && opts.out_path.ends_with(".csv")) {
        std::ostringstream csv;
        csv << "# config_hash=" << hqs::config_hash(config.raw) << "\n";
        csv << "frequency_hz,h0\n";
        csv << hqs::format_sci(scenario.frequency / hqs::constants::two_pi) << ','
            << hqs::format_sci(result.gw.h0) << '\n';
        write_output(opts.out_path, csv.str());
        return 0;
    }
    json out{{"command", "project"},
             {"config_hash", hqs::config_hash(config.raw)},
             {"seed", opts.seed},
             {"projection", hqs::projection_to_json(result)},
             {"strain_export", json::array({strain_row})}};
    write_output(opts.out_path, out.dump(2) + "\n");
    return 0;
}

int cmd_stats(const CommonOptions& opts, const std::string& input, const std::string& mode,
              double freq_hz) {
    json out{{"command", "stats"}, {"mode", mode}, {"seed", opts.seed}};
    json meta{{"input", input}};
    if (mode == "weighted-mean") {
        const auto records = hqs::read_population_records(input);
        if (records.empty()) throw hqs::InvalidParameterError("no records in '" + input + "'");
        const auto merged = hqs::weighted_mean(records);
        out["result"] = json{{"mean", merged.mean},
                             {"variance", merged.variance},
                             {"n_shots", merged.n_shots},
                             {"n_records", records.size()}};
    } else if (mode == "blocks") {
        const auto records = hqs::read_population_records(input);
        std::vector<double> means;
        means.reserve(records.size());
        for (const auto& r : records) means.push_back(r.mean);
        const auto stats = hqs::block_statistics(means);
        out["result"] = json{{"mean", stats.mean},
                             {"sigma_total", stats.sigma_total},
                             {"sem", stats.sem},
                             {"reference", stats.reference}};
    } else if (mode == "fit-bose") {
        if (!(freq_hz > 0.0))
            throw hqs::InvalidParameterError("fit-bose requires --freq in Hz");
        const auto points = hqs::read_thermometry(input);
        const auto fit = hqs::fit_bose(points, freq_hz);
        out["result"] = json{{"offset", fit.offset},
                             {"offset_sigma", fit.offset_sigma},
                             {"reduced_chi_square", fit.reduced_chi_square},
                             {"iterations", fit.iterations},
                             {"freq_hz", freq_hz}};
    } else {
        throw hqs::InvalidParameterError("--mode must be weighted-mean, blocks, or fit-bose");
    }
    out["meta"] = meta;
    write_output(opts.out_path, out.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hqs: HBAR quantum sensor protocol simulation and physics bounds"};
    app.require_subcommand(1);

    CommonOptions opts;
    double population = 0.0;
    std::string channel, stats_input, stats_mode;
    double freq_hz = 0.0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opts.config_path, "JSON run configuration");
        if (needs_config) c->required();
        sub->add_option("--out", opts.out_path, "output file (stdout when omitted)");
        sub->add_option("--seed", opts.seed, "seed recorded in the output");
        sub->add_flag("--verify", opts.verify, "check the config hash embedded in --out");
    };

    auto* simulate = app.add_subcommand("simulate", "run the population-measurement protocol");
    add_common(simulate, true);
    auto* pop_opt = simulate->add_option("--population", population, "true phonon population");

    auto* sweep = app.add_subcommand("sweep", "parameter sweep of the protocol");
    add_common(sweep, true);
    sweep->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* bound = app.add_subcommand("bound", "invert a population into a physics bound");
    add_common(bound, true);
    bound->add_option("--channel", channel, "gw | dp | csl")->required();
    bound->add_option("--population", population, "measured population")->required();

    auto* project = app.add_subcommand("project", "future-device bound projection");
    add_common(project, true);

    auto* stats = app.add_subcommand("stats", "measurement statistics pipeline");
    add_common(stats, false);
    stats->add_option("--input", stats_input, "input CSV")->required();
    stats->add_option("--mode", stats_mode, "weighted-mean | blocks | fit-bose")->required();
    stats->add_option("--freq", freq_hz, "mode frequency in Hz (fit-bose)");

    try {
        app.parse(argc, argv);
        if (simulate->parsed()) return cmd_simulate(opts, population, pop_opt->count() > 0);
        if (sweep->parsed()) return cmd_sweep(opts);
        if (bound->parsed()) return cmd_bound(opts, channel, population);
        if (project->parsed()) return cmd_project(opts);
        if (stats->parsed()) return cmd_stats(opts, stats_input, stats_mode, freq_hz);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const hqs::InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const hqs::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
