#ifndef SPECFP_CONFIG_HPP
#define SPECFP_CONFIG_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "specfp/solver.hpp"

namespace specfp {

struct SolverOptions {
    double tol = 1e-10;
    int max_iter = 500;
    bool override_uncertified = false;
    std::string init = "zero";  // "zero" | "random"
    std::uint64_t seed = 0;
};

struct RunConfig {
    SystemSpec system;  // geometry included
    SolverOptions solver;
    double admissibility_tolerance = 1e-8;
    std::string out_dir;
};

/// Parses and validates the JSON configuration; unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace specfp

#endif
