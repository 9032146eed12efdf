#include "specfp/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "specfp/errors.hpp"
#include "specfp/transforms.hpp"

namespace specfp {

using nlohmann::ordered_json;

ordered_json admissibility_to_json(const AdmissibilityReport& report) {
    ordered_json j;
    j["component"] = report.component;
    j["regime"] = report.regime;
    j["resonant_set"] = report.resonant_set;
    j["tolerance"] = report.tolerance;
    ordered_json conditions = ordered_json::array();
    for (const auto& c : report.conditions) {
        ordered_json cj;
        cj["id"] = c.id;
        cj["defect"] = c.defect;
        cj["pass"] = c.pass;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        conditions.push_back(cj);
    }
    j["conditions"] = conditions;
    ordered_json integrals = ordered_json::array();
    for (const auto& v : report.integrals) {
        ordered_json vj;
        vj["id"] = v.id;
        vj["value"] = v.value;
        vj["finite"] = v.finite;
        integrals.push_back(vj);
    }
    j["integrals"] = integrals;
    j["pass"] = report.pass;
    return j;
}

ordered_json multipliers_to_json(const MultiplierReport& report) {
    ordered_json j;
    ordered_json per = ordered_json::array();
    for (const auto& cm : report.per_component) {
        ordered_json cj;
        cj["component"] = cm.component;
        cj["value"] = cm.value;
        cj["arg_mode"] = cm.arg_mode;
        cj["blow_up"] = cm.blow_up;
        if (cm.blow_up) cj["blow_up_where"] = cm.blow_up_where;
        per.push_back(cj);
    }
    j["per_component"] = per;
    j["system_constant"] = report.system_constant;
    j["any_blow_up"] = report.any_blow_up;
    return j;
}

ordered_json make_cert_report(const RunConfig& config,
                              std::span<const AdmissibilityReport> admissibility,
                              const MultiplierReport& multipliers,
                              const ContractionCertificate& certificate,
                              const NontrivialityResult& nontriviality) {
    const GeometryConfig& geo = config.system.geometry.config;
    ordered_json j;
    j["tool_version"] = kToolVersion;
    ordered_json gj;
    gj["kind"] = domain_name(geo.kind);
    if (geo.kind != DomainKind::Interval) {
        gj["dim"] = geo.dim;
        gj["box_half_width"] = geo.box_half_width;
        gj["grid_points"] = geo.grid_points;
    }
    if (geo.kind != DomainKind::WholeSpace) gj["modes"] = geo.mode_cutoff;
    j["geometry"] = gj;
    j["admissibility_tolerance"] = config.admissibility_tolerance;
    ordered_json adm = ordered_json::array();
    bool all_admissible = true;
    for (const auto& r : admissibility) {
        adm.push_back(admissibility_to_json(r));
        all_admissible = all_admissible && r.pass;
    }
    j["admissibility"] = adm;
    j["all_admissible"] = all_admissible;
    j["multipliers"] = multipliers_to_json(multipliers);
    ordered_json cj;
    cj["system_constant"] = certificate.system_constant;
    cj["lipschitz"] = certificate.lipschitz;
    cj["q"] = certificate.factor;
    cj["certified"] = certificate.certified;
    cj["blow_up"] = certificate.blow_up;
    j["certificate"] = cj;
    j["nontriviality"] = nontriviality.guaranteed ? "guaranteed-nontrivial" : "inconclusive";
    return j;
}

namespace {

void write_double(std::ostream& os, double v) {
    os << std::setprecision(17) << v;
}

}  // namespace

void write_solution_csv(const std::string& path, const StateVector& state) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    const FrequencyLattice& lat = *state.lattice();
    const int naxes = lat.num_axes();
    const int n2 = state.num_components();

    std::vector<GridField> grids;
    for (const SpectralField& comp : state.components) grids.push_back(inverse_transform(comp));

    for (int s = 0; s < naxes; ++s) out << (s ? "," : "") << "x" << s + 1;
    for (int k = 0; k < n2; ++k) out << ",u_" << k + 1;
    out << "\n";

    double x[4];
    for (int i = 0; i < lat.size(); ++i) {
        lat.grid_point(i, x);
        for (int s = 0; s < naxes; ++s) {
            if (s) out << ",";
            write_double(out, x[s]);
        }
        for (int k = 0; k < n2; ++k) {
            out << ",";
            write_double(out, grids[static_cast<std::size_t>(k)].values[static_cast<std::size_t>(i)]);
        }
        out << "\n";
    }
}

std::vector<GridField> read_solution_csv(const std::string& path, const Geometry& geometry,
                                         int n_components) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    const FrequencyLattice& lat = *geometry.lattice;
    const int naxes = lat.num_axes();

    std::string header;
    if (!std::getline(in, header)) throw IoError(path + " is empty");
    std::ostringstream expected;
    for (int s = 0; s < naxes; ++s) expected << (s ? "," : "") << "x" << s + 1;
    for (int k = 0; k < n_components; ++k) expected << ",u_" << k + 1;
    if (header != expected.str())
        throw IoError(path + ": header mismatch, expected '" + expected.str() + "'");

    std::vector<GridField> grids(static_cast<std::size_t>(n_components), GridField(geometry.lattice));
    std::string line;
    for (int i = 0; i < lat.size(); ++i) {
        if (!std::getline(in, line)) throw IoError(path + ": too few rows");
        std::istringstream row(line);
        std::string cell;
        for (int s = 0; s < naxes; ++s) std::getline(row, cell, ',');  // coordinates are implied
        for (int k = 0; k < n_components; ++k) {
            if (!std::getline(row, cell, ',')) throw IoError(path + ": short row");
            grids[static_cast<std::size_t>(k)].values[static_cast<std::size_t>(i)] = std::stod(cell);
        }
    }
    return grids;
}

void write_spectral_csv(const std::string& path, const StateVector& state) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    const FrequencyLattice& lat = *state.lattice();
    out << "component";
    for (int s = 0; s < lat.num_axes(); ++s) out << ",n" << s + 1;
    out << ",re,im\n";
    for (int k = 0; k < state.num_components(); ++k) {
        for (int i = 0; i < lat.size(); ++i) {
            out << k + 1;
            for (int m : lat.mode(i)) out << "," << m;
            out << ",";
            write_double(out, state.components[static_cast<std::size_t>(k)].coef[static_cast<std::size_t>(i)].real());
            out << ",";
            write_double(out, state.components[static_cast<std::size_t>(k)].coef[static_cast<std::size_t>(i)].imag());
            out << "\n";
        }
    }
}

void write_trace_csv(const std::string& path, const IterationTrace& trace) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "iter,increment,ratio\n";
    for (std::size_t i = 0; i < trace.increments.size(); ++i) {
        out << i + 1 << ",";
        write_double(out, trace.increments[i]);
        out << ",";
        if (i > 0) write_double(out, trace.ratios[i - 1]);
        out << "\n";
    }
}

}  // namespace specfp
