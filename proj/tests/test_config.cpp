#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "hqs/config.hpp"
#include "hqs/errors.hpp"

using namespace hqs;
namespace fs = std::filesystem;

namespace {

json minimal_config() {
    json j;
    j["device"] = device_to_json(DeviceParams::table1());
    return j;
}

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("device snapshot round-trips through JSON") {
    const DeviceParams d = DeviceParams::table1();
    const DeviceParams back = device_from_json(device_to_json(d));
    CHECK(back.phonon_freq == doctest::Approx(d.phonon_freq).epsilon(1e-14));
    CHECK(back.mode_number == d.mode_number);
    CHECK(back.t1_ge == d.t1_ge);
    CHECK(back.piezo_e33 == d.piezo_e33);
}

TEST_CASE("unknown keys are rejected with the key named") {
    json j = minimal_config();
    j["device"]["bogus_key"] = 1.0;
    CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("bogus_key"),
                         InvalidParameterError);

    json top = minimal_config();
    top["unexpected"] = 1;
    CHECK_THROWS_WITH_AS(parse_config(top), doctest::Contains("unexpected"),
                         InvalidParameterError);
}

TEST_CASE("missing device key is reported by name") {
    json j = minimal_config();
    j["device"].erase("t1_ge_s");
    CHECK_THROWS_WITH_AS(parse_config(j), doctest::Contains("t1_ge_s"), InvalidParameterError);
}

TEST_CASE("config sections parse into settings") {
    json j = minimal_config();
    j["protocol"] = {{"iswap_amplitude", 0.9},
                     {"readout_fidelity", 0.95},
                     {"gate_model", "finite_duration"},
                     {"include_reference", false}};
    j["layout"] = {{"qubit_levels", 3}, {"fock_cutoff", 6}};
    j["engine"] = {{"rel_tol", 1e-8}, {"abs_tol", 1e-11}};
    j["simulate"] = {{"true_population", 1.9e-5}};
    j["sweep"] = {{"parameter", "T1_ge"}, {"values", {1e-5, 2e-5}}, {"true_population", 1e-4}};
    j["scenario"] = {{"label", "next_generation"}};

    const RunConfig c = parse_config(j);
    CHECK(c.protocol.iswap_amplitude == 0.9);
    CHECK(c.protocol.gate_model == GateModel::finite_duration);
    CHECK_FALSE(c.protocol.include_reference);
    CHECK(c.layout.fock_cutoff == 6);
    CHECK(c.engine.rel_tol == 1e-8);
    REQUIRE(c.simulate.has_value());
    CHECK(c.simulate->true_population == 1.9e-5);
    REQUIRE(c.sweep.has_value());
    CHECK(c.sweep->parameter == SweepParameter::T1_ge);
    CHECK(c.sweep->values.size() == 2);
    REQUIRE(c.scenario.has_value());
    CHECK(*c.scenario == ScenarioLabel::next_generation);

    json bad = j;
    bad["protocol"]["gate_model"] = "imaginary";
    CHECK_THROWS_AS(parse_config(bad), InvalidParameterError);
    bad = j;
    bad["layout"]["fock_cutoff"] = 2;
    CHECK_THROWS_AS(parse_config(bad), InvalidParameterError);
}

TEST_CASE("config hash is stable and content-sensitive") {
    const json a = minimal_config();
    json b = minimal_config();
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    b["device"]["t1_ge_s"] = 29e-6;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("scientific formatting carries 9 significant digits") {
    CHECK(format_sci(6.7e-5) == "6.70000000e-05");
    CHECK(format_sci(-1.234567891e-3) == "-1.23456789e-03");
    CHECK(format_sci(0.0) == "0.00000000e+00");
}

TEST_CASE("name round trips for enums") {
    for (const auto label :
         {ScenarioLabel::current, ScenarioLabel::next_generation, ScenarioLabel::mhz_device})
        CHECK(scenario_label_from_name(scenario_label_name(label)) == label);
    for (const auto p : {SweepParameter::T1_ge, SweepParameter::T_qb_bath, SweepParameter::T1_ef,
                         SweepParameter::A_iSWAP, SweepParameter::T_phi, SweepParameter::F_ro})
        CHECK(sweep_parameter_from_name(sweep_parameter_name(p)) == p);
    CHECK_THROWS_AS(scenario_label_from_name("other"), InvalidParameterError);
    CHECK_THROWS_AS(sweep_parameter_from_name("other"), InvalidParameterError);
}

TEST_CASE("population record CSV parsing") {
    const auto path = write_temp("hqs_records.csv",
                                 "label,mean,variance,n_shots,timestamp\n"
                                 "m404,6.7e-5,1e-9,120000,2024-01-01T00:00:00\n"
                                 "m404,-1.0e-5,2e-9,120000,\n");
    const auto records = read_population_records(path);
    REQUIRE(records.size() == 2);
    CHECK(records[0].label == "m404");
    CHECK(records[0].mean == doctest::Approx(6.7e-5));
    CHECK(records[0].n_shots == 120000);
    REQUIRE(records[0].timestamp.has_value());
    CHECK(records[1].mean < 0.0);  // negative means retained
    CHECK_FALSE(records[1].timestamp.has_value());

    const auto bad = write_temp("hqs_bad.csv", "label,mean,variance,n_shots\nm,oops,1e-9,10\n");
    CHECK_THROWS_WITH_AS(read_population_records(bad), doctest::Contains("row 2"),
                         InvalidParameterError);
    fs::remove(path);
    fs::remove(bad);
}

TEST_CASE("thermometry CSV parsing") {
    const auto path = write_temp("hqs_thermo.csv",
                                 "temperature,population,sigma\n"
                                 "0.040,2.3e-3,1e-4\n0.120,4.4e-2,1e-3\n");
    const auto points = read_thermometry(path);
    REQUIRE(points.size() == 2);
    CHECK(points[1].temperature == doctest::Approx(0.120));
    fs::remove(path);
}

TEST_CASE("sweep CSV layout") {
    std::vector<SweepPoint> points(1);
    points[0].value = 28e-6;
    points[0].result = {5.8e-5, 0.9999, 5.8e-5};
    const std::string csv = sweep_to_csv(points, "deadbeefdeadbeef");
    CHECK(csv.find("# config_hash=deadbeefdeadbeef\n") == 0);
    CHECK(csv.find("parameter,a_sig,a_ref,population\n") != std::string::npos);
    CHECK(csv.find("2.80000000e-05,5.80000000e-05") != std::string::npos);
}

TEST_CASE("config search path honors HQS_CONFIG_DIR") {
    const fs::path dir = fs::temp_directory_path() / "hqs_cfg_dir";
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "probe.json");
        out << minimal_config().dump();
    }
    setenv("HQS_CONFIG_DIR", dir.c_str(), 1);
    const RunConfig c = load_config("probe.json");
    CHECK(c.device.mode_number == 404);
    unsetenv("HQS_CONFIG_DIR");
    CHECK_THROWS_AS(load_config("probe.json"), InvalidParameterError);
    fs::remove_all(dir);
}
