#ifndef SDECERT_RUNNER_HPP
#define SDECERT_RUNNER_HPP

#include "sdecert/config.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace sdecert {

inline constexpr const char* kVersion = "0.1.0";

/// Everything `run` produced. `summary` is what summary.json holds; it is a
/// pure function of (config, seed). Phase timings are returned for console
/// display only and never serialized, so output bytes stay reproducible.
struct RunResult {
    nlohmann::json summary;
    bool expectations_ok = true;
    std::vector<std::string> failed_expectations;
    std::vector<std::string> files_written;
    std::vector<std::pair<std::string, double>> phase_seconds;
};

/// Executes the phases regularity -> certificates -> simulate -> estimators
/// -> exponent, then writes summary.json and the per-estimator CSVs under
/// cfg.out_dir (or out_dir_override when nonempty; the override changes
/// where files land, not the config echo). A phase error aborts with a
/// phase-tagged message after removing any partially written outputs.
RunResult run(const ExperimentConfig& cfg, int threads,
              const std::string& out_dir_override = "");

nlohmann::json regularity_to_json(const RegularityReport& r);
nlohmann::json certificate_to_json(const CertificateReport& r);
nlohmann::json estimate_to_json(const EstimateReport& r);
nlohmann::json exponent_to_json(const ExponentReport& r);

std::string estimate_csv(const EstimateReport& r);
std::string exponent_csv(const ExponentReport& r);

} // namespace sdecert

#endif
