#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "specfp/config.hpp"
#include "specfp/errors.hpp"
#include "specfp/report.hpp"
#include "specfp/sampling.hpp"
#include "specfp/transforms.hpp"

#ifndef SPECFP_CLI_PATH
#define SPECFP_CLI_PATH "specfp"
#endif
#ifndef SPECFP_CONFIG_DIR
#define SPECFP_CONFIG_DIR "configs"
#endif

using namespace specfp;
namespace fs = std::filesystem;

namespace {

std::string config(const std::string& name) {
    return std::string(SPECFP_CONFIG_DIR) + "/" + name;
}

int run(const std::string& args) {
    const std::string cmd = std::string(SPECFP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("demo config loads and validates") {
        RunConfig run = load_config(config("interval_demo.json"));
        CHECK(run.system.n_total() == 3);
        CHECK(run.system.n_plus == 2);
        CHECK(run.solver.tol == 1e-10);
        CHECK(run.admissibility_tolerance == 1e-8);
    }
    SUBCASE("unknown keys are rejected") {
        nlohmann::json j;
        j["geometry"] = {{"kind", "interval"}, {"modes", 8}};
        j["system"] = nlohmann::json::parse(R"json({"n_plus":1,"components":[
            {"case":"III","a":0.0,"kernel":{"expression":"cos(x)"}},
            {"case":"IV","a":1.0,"kernel":{"expression":"cos(x)"}}]})json");
        CHECK_NOTHROW(parse_config(j));
        j["extra"] = 1;
        CHECK_THROWS_AS(parse_config(j), ConfigError);
        j.erase("extra");
        j["system"]["components"][0]["typo"] = true;
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
    SUBCASE("minus block must be declared case IV") {
        nlohmann::json j;
        j["geometry"] = {{"kind", "interval"}, {"modes", 8}};
        j["system"] = nlohmann::json::parse(R"json({"n_plus":1,"components":[
            {"case":"III","a":0.0,"kernel":{"expression":"cos(x)"}},
            {"case":"I","a":0.5,"kernel":{"expression":"cos(x)"}}]})json");
        CHECK_THROWS_AS(parse_config(j), ConfigError);
    }
}

TEST_CASE("solution csv round trips through write and read") {
    GeometryConfig cfg;
    cfg.kind = DomainKind::Layer;
    cfg.dim = 1;
    cfg.mode_cutoff = 4;
    cfg.box_half_width = 3.0;
    cfg.grid_points = 8;
    Geometry geo = build_geometry(cfg);
    StateVector v = random_state(geo.lattice, 2, 13);
    const fs::path path = fs::temp_directory_path() / "specfp_roundtrip.csv";
    write_solution_csv(path.string(), v);
    auto grids = read_solution_csv(path.string(), geo, 2);
    for (int k = 0; k < 2; ++k) {
        GridField expected = inverse_transform(v.components[static_cast<std::size_t>(k)]);
        for (std::size_t i = 0; i < expected.values.size(); ++i)
            CHECK(grids[static_cast<std::size_t>(k)].values[i] ==
                  doctest::Approx(expected.values[i]).epsilon(1e-15));
    }
}

TEST_CASE("cli exit codes") {
    SUBCASE("check passes on the certified demo") {
        CHECK(run("check " + config("interval_demo.json")) == 0);
    }
    SUBCASE("check fails on the uncertified variant") {
        CHECK(run("check " + config("interval_uncertified.json")) == 2);
    }
    SUBCASE("norms always reports") {
        CHECK(run("norms " + config("interval_uncertified.json")) == 0);
    }
    SUBCASE("inadmissible kernels fail the check") {
        const fs::path dir = fs::temp_directory_path() / "specfp_cli_inadm";
        fs::create_directories(dir);
        {
            std::ofstream cfg(dir / "inadmissible.json");
            cfg << R"json({"geometry": {"kind": "interval", "modes": 16},
                       "system": {"n_plus": 1, "components": [
                         {"case": "II", "a": 2.0, "kernel": {"expression": "cos(2*x)"}},
                         {"case": "IV", "a": 1.0, "kernel": {"expression": "cos(x)"}}]}})json";
        }
        CHECK(run("check " + (dir / "inadmissible.json").string()) == 2);
    }
    SUBCASE("configuration errors exit 1") {
        const fs::path dir = fs::temp_directory_path() / "specfp_cli_bad";
        fs::create_directories(dir);
        {
            std::ofstream bad(dir / "bad.json");
            bad << R"json({"geometry": {"kind": "interval", "modes": 8},
                       "system": {"n_plus": 1, "components": [
                         {"case": "III", "a": 0.0, "kernel": {"expression": "cos(2*x"}},
                         {"case": "IV", "a": 1.0, "kernel": {"expression": "cos(x)"}}]}})json";
        }
        CHECK(run("check " + (dir / "bad.json").string()) == 1);
        CHECK(run("check " + (dir / "missing.json").string()) == 1);
    }
}

TEST_CASE("solve writes artifacts that re-verify") {
    const fs::path dir = fs::temp_directory_path() / "specfp_cli_solve";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const std::string cfg = config("interval_constrained.json");
    REQUIRE(run("solve " + cfg + " --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "solution.csv"));
    CHECK(fs::exists(dir / "solution_spectrum.csv"));
    CHECK(fs::exists(dir / "trace.csv"));
    CHECK(fs::exists(dir / "cert.json"));

    auto cert = nlohmann::json::parse(slurp(dir / "cert.json"));
    CHECK(cert["certificate"]["certified"].get<bool>());
    CHECK(cert["certificate"]["q"].get<double>() < 1.0);
    CHECK(cert["nontriviality"] == "guaranteed-nontrivial");

    // stored solution passes the residual re-check
    CHECK(run("residual " + cfg + " " + (dir / "solution.csv").string()) == 0);

    // trace csv has the documented header
    std::ifstream trace(dir / "trace.csv");
    std::string header;
    std::getline(trace, header);
    CHECK(header == "iter,increment,ratio");
}

TEST_CASE("reports are byte-identical across runs") {
    const fs::path a = fs::temp_directory_path() / "specfp_det_a";
    const fs::path b = fs::temp_directory_path() / "specfp_det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    REQUIRE(run("check " + config("interval_demo.json") + " --out " + a.string()) == 0);
    REQUIRE(run("check " + config("interval_demo.json") + " --out " + b.string()) == 0);
    CHECK(slurp(a / "cert.json") == slurp(b / "cert.json"));
    CHECK_FALSE(slurp(a / "cert.json").empty());
}

TEST_CASE("certificate q matches the demo arithmetic") {
    const fs::path dir = fs::temp_directory_path() / "specfp_cli_q";
    fs::remove_all(dir);
    REQUIRE(run("check " + config("interval_demo.json") + " --out " + dir.string()) == 0);
    auto cert = nlohmann::json::parse(slurp(dir / "cert.json"));
    CHECK(cert["certificate"]["q"].get<double>() == doctest::Approx(0.88857).epsilon(1e-4));
    CHECK(cert["multipliers"]["system_constant"].get<double>() ==
          doctest::Approx(5.01326).epsilon(1e-5));
    CHECK(cert["certificate"]["system_constant"].get<double>() ==
          cert["multipliers"]["system_constant"].get<double>());
    CHECK(cert["all_admissible"].get<bool>());
}

TEST_CASE("whole-space and layer demos certify") {
    CHECK(run("check " + config("whole_space_demo.json")) == 0);
    CHECK(run("check " + config("layer_demo.json")) == 0);
}
