#ifndef SPECFP_REPORT_HPP
#define SPECFP_REPORT_HPP

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "specfp/config.hpp"
#include "specfp/solver.hpp"

namespace specfp {

inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::ordered_json admissibility_to_json(const AdmissibilityReport& report);
nlohmann::ordered_json multipliers_to_json(const MultiplierReport& report);

/// Certification report with stable key names: admissibility, multipliers,
/// certificate.q, certificate.certified, nontriviality.
nlohmann::ordered_json make_cert_report(const RunConfig& config,
                                        std::span<const AdmissibilityReport> admissibility,
                                        const MultiplierReport& multipliers,
                                        const ContractionCertificate& certificate,
                                        const NontrivialityResult& nontriviality);

/// Grid CSV: header x1[,x2[,x3]],u_1,...,u_N2; one row per grid point in
/// lattice order.
void write_solution_csv(const std::string& path, const StateVector& state);
std::vector<GridField> read_solution_csv(const std::string& path, const Geometry& geometry,
                                         int n_components);

/// Spectral CSV: component,mode indices,re,im; rows grouped per component.
void write_spectral_csv(const std::string& path, const StateVector& state);

/// Trace CSV: iter,increment,ratio (ratio empty on the first row).
void write_trace_csv(const std::string& path, const IterationTrace& trace);

}  // namespace specfp

#endif
