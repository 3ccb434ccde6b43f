#pragma once

// Batch experiments: a JSON config names a map, a domain and a task; running it
// produces a JSON report whose "payload" section is byte-identical across runs
// and worker counts.

#include "holo/errors.hpp"
#include "holo/landau.hpp"
#include "holo/mapkit.hpp"
#include "holo/renorm.hpp"
#include "holo/sampling.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace holo {

inline constexpr std::string_view kConfigSchema = "holo.experiment/1";
inline constexpr std::string_view kReportSchema = "holo.report/1";
inline constexpr std::string_view kVersion = "0.1.0";

enum class Task { Eval, Jacobian, KappaSup, RefinedSup, BzRun, BzSequence, Landau, RescaledGrowth, Counterexample };

std::string_view task_name(Task t);
Task task_from_name(std::string_view name);

/// Invalid experiment config (exit code 2).
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct ExperimentConfig {
    std::string map_text;
    DomainShape shape = DomainShape::Ball;
    double radius = 1.0;
    Task task = Task::Eval;
    std::uint64_t seed = 0;
    std::string output;

    std::vector<CVector> points; ///< eval, jacobian
    CVector base_point;          ///< refined-sup; empty means the origin
    double C = 1.0;              ///< bz-run, bz-sequence
    std::string family;          ///< bz-sequence: map text with "{n}" placeholders
    std::vector<int> n_values;
    double diagnostic_radius = 0.0; ///< bz-sequence: 0 disables the convergence diagnostic
    int diagnostic_grid = 5;
    std::vector<double> R_values; ///< rescaled-growth
    int counterexample_centers = 100;
    double counterexample_center_radius = 1.0;

    SamplerConfig sampler;   ///< rng_seed is derived from seed
    double check_radius_factor = 0.9;
    double bound_tolerance = 1e-6;
    LandauConfig landau;     ///< newton.rng_seed is derived from seed

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Sub-configs with seeds derived from cfg.seed ("sampler", "newton", "centres").
SamplerConfig resolved_sampler(const ExperimentConfig& cfg);
RenormConfig resolved_renorm(const ExperimentConfig& cfg);
LandauConfig resolved_landau(const ExperimentConfig& cfg);
DomainSpec resolved_domain(const ExperimentConfig& cfg, std::size_t dim);

struct RunOutcome {
    nlohmann::json report;
    int exit_code = 0; ///< 0 ok, 2 invalid input, 3 numerical failure (partial payload)
};

/// Runs one experiment. Invalid input is reported with exit_code 2 and no payload.
RunOutcome run_experiment(const ExperimentConfig& cfg);

enum class EmitFormat { Rows, Structured };

/// Rows: CSV with a header line; supported for bz-sequence ("n,lambda"),
/// rescaled-growth ("R,r_times_rlo") and landau ("radius,all_certified").
/// Throws UnsupportedPayload otherwise. Structured: the payload as JSON.
std::string emit_series(const nlohmann::json& report, EmitFormat format);

/// Substitutes every "{n}" in a family template.
std::string instantiate_family(std::string_view templ, int n);

} // namespace holo
