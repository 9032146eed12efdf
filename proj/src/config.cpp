#include "specfp/config.hpp"

#include <fstream>
#include <set>

#include "specfp/errors.hpp"

namespace specfp {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

double get_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing '" + key + "' in " + where);
    if (!obj[key].is_number()) throw ConfigError("'" + key + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing '" + key + "' in " + where);
    if (!obj[key].is_number_integer())
        throw ConfigError("'" + key + "' in " + where + " must be an integer");
    return obj[key].get<int>();
}

GeometryConfig parse_geometry(const json& j) {
    GeometryConfig cfg;
    const std::string kind = j.is_object() ? j.value("kind", "") : "";
    if (kind == "interval") {
        require_keys(j, {"kind", "modes"}, "geometry");
        cfg.kind = DomainKind::Interval;
        cfg.mode_cutoff = get_int(j, "modes", "geometry");
    } else if (kind == "whole_space") {
        require_keys(j, {"kind", "dim", "box_half_width", "grid_points"}, "geometry");
        cfg.kind = DomainKind::WholeSpace;
        cfg.dim = get_int(j, "dim", "geometry");
        cfg.box_half_width = get_number(j, "box_half_width", "geometry");
        cfg.grid_points = get_int(j, "grid_points", "geometry");
    } else if (kind == "layer") {
        require_keys(j, {"kind", "dim", "box_half_width", "grid_points", "modes"}, "geometry");
        cfg.kind = DomainKind::Layer;
        cfg.dim = get_int(j, "dim", "geometry");
        cfg.box_half_width = get_number(j, "box_half_width", "geometry");
        cfg.grid_points = get_int(j, "grid_points", "geometry");
        cfg.mode_cutoff = get_int(j, "modes", "geometry");
    } else {
        throw ConfigError("geometry.kind must be interval, whole_space or layer");
    }
    return cfg;
}

RegimeCase parse_case(const std::string& s, const std::string& where) {
    if (s == "I") return RegimeCase::I;
    if (s == "II") return RegimeCase::II;
    if (s == "III") return RegimeCase::III;
    if (s == "IV") return RegimeCase::IV;
    throw ConfigError(where + ": case must be one of I, II, III, IV");
}

KernelSpec parse_kernel(const json& j, const GeometryConfig& geo, int component,
                        const std::string& where) {
    require_keys(j, {"expression", "spectral_table"}, where);
    KernelSpec kernel;
    kernel.component = component;
    const int naxes = geo.kind == DomainKind::Interval ? 1
                      : geo.kind == DomainKind::WholeSpace ? geo.dim
                                                           : geo.dim + 1;
    if (j.contains("expression")) {
        if (!j["expression"].is_string()) throw ConfigError(where + ": expression must be a string");
        kernel.expression = parse_expr(j["expression"].get<std::string>(), naxes);
    } else if (j.contains("spectral_table")) {
        const json& rows = j["spectral_table"];
        if (!rows.is_array()) throw ConfigError(where + ": spectral_table must be an array");
        SpectralTable table;
        for (const json& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != naxes + 2)
                throw ConfigError(where + ": each table row is [modes..., re, im]");
            std::vector<int> mode;
            for (int s = 0; s < naxes; ++s) mode.push_back(row[static_cast<std::size_t>(s)].get<int>());
            table.entries.emplace_back(std::move(mode),
                                       std::complex<double>(row[static_cast<std::size_t>(naxes)].get<double>(),
                                                            row[static_cast<std::size_t>(naxes) + 1].get<double>()));
        }
        kernel.table = std::move(table);
    } else {
        throw ConfigError(where + ": kernel needs an expression or a spectral_table");
    }
    return kernel;
}

NonlinearitySpec parse_nonlinearity(const json& j, const GeometryConfig& geo,
                                    const std::string& where) {
    require_keys(j, {"epsilon", "sigma", "coeffs", "forcing"}, where);
    NonlinearitySpec spec;
    const int naxes = geo.kind == DomainKind::Interval ? 1
                      : geo.kind == DomainKind::WholeSpace ? geo.dim
                                                           : geo.dim + 1;
    spec.epsilon = j.value("epsilon", 0.0);
    const std::string sigma = j.value("sigma", "tanh");
    if (sigma == "tanh")
        spec.sigma = SigmaKind::Tanh;
    else if (sigma == "sin")
        spec.sigma = SigmaKind::Sin;
    else
        throw ConfigError(where + ": sigma must be tanh or sin");
    if (j.contains("coeffs")) {
        if (!j["coeffs"].is_array()) throw ConfigError(where + ": coeffs must be an array");
        for (const json& c : j["coeffs"]) spec.coeffs.push_back(c.get<double>());
    }
    if (j.contains("forcing")) {
        if (!j["forcing"].is_string()) throw ConfigError(where + ": forcing must be a string");
        spec.forcing = parse_expr(j["forcing"].get<std::string>(), naxes);
    }
    return spec;
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
    require_keys(j, {"geometry", "system", "solver", "admissibility_tolerance", "output"},
                 "configuration");
    if (!j.contains("geometry") || !j.contains("system"))
        throw ConfigError("configuration needs 'geometry' and 'system'");

    RunConfig run;
    const GeometryConfig geo_cfg = parse_geometry(j["geometry"]);
    run.system.geometry = build_geometry(geo_cfg);

    const json& sys = j["system"];
    require_keys(sys, {"n_plus", "components"}, "system");
    run.system.n_plus = get_int(sys, "n_plus", "system");
    if (!sys.contains("components") || !sys["components"].is_array())
        throw ConfigError("system.components must be an array");

    const int n2 = static_cast<int>(sys["components"].size());
    int k = 0;
    for (const json& cj : sys["components"]) {
        ++k;
        const std::string where = "component " + std::to_string(k);
        require_keys(cj, {"case", "a", "kernel", "nonlinearity"}, where);
        SystemComponent comp;
        RegimeTag tag;
        tag.kind = geo_cfg.kind;
        tag.regime_case = parse_case(cj.value("case", ""), where);
        tag.sign = k <= run.system.n_plus ? SignBlock::Plus : SignBlock::Minus;
        tag.a = cj.contains("a") ? get_number(cj, "a", where) : 0.0;
        if (tag.regime_case == RegimeCase::II)
            tag.resonant_mode = static_cast<int>(std::llround(tag.a));

        if (!cj.contains("kernel")) throw ConfigError(where + " needs a kernel");
        comp.kernel = parse_kernel(cj["kernel"], geo_cfg, k, where + " kernel");
        comp.kernel.regime = tag;
        if (cj.contains("nonlinearity"))
            comp.nonlinearity = parse_nonlinearity(cj["nonlinearity"], geo_cfg, where + " nonlinearity");
        if (!comp.nonlinearity.coeffs.empty() &&
            static_cast<int>(comp.nonlinearity.coeffs.size()) != n2)
            throw ConfigError(where + ": coeffs must have one entry per component");
        run.system.components.push_back(std::move(comp));
    }

    if (j.contains("solver")) {
        const json& s = j["solver"];
        require_keys(s, {"tol", "max_iter", "init", "override_uncertified", "seed"}, "solver");
        run.solver.tol = s.value("tol", run.solver.tol);
        run.solver.max_iter = s.value("max_iter", run.solver.max_iter);
        run.solver.init = s.value("init", run.solver.init);
        run.solver.override_uncertified =
            s.value("override_uncertified", run.solver.override_uncertified);
        run.solver.seed = s.value("seed", run.solver.seed);
        if (run.solver.init != "zero" && run.solver.init != "random")
            throw ConfigError("solver.init must be 'zero' or 'random'");
    }
    if (j.contains("admissibility_tolerance")) {
        run.admissibility_tolerance = j["admissibility_tolerance"].get<double>();
        if (!(run.admissibility_tolerance > 0.0))
            throw ConfigError("admissibility_tolerance must be positive");
    }
    if (j.contains("output")) {
        require_keys(j["output"], {"dir"}, "output");
        run.out_dir = j["output"].value("dir", "");
    }

    run.system.validate();
    return run;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open configuration file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return parse_config(j);
}

}  // namespace specfp
