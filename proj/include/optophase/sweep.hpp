#ifndef OPTOPHASE_SWEEP_HPP
#define OPTOPHASE_SWEEP_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "optophase/params.hpp"

namespace optophase {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr int kPointsPerPeriod = 512;
inline constexpr const char* kToolVersion = "1.0.0";

enum class OutputFormat { csv, json };
enum class PulsedAxis { n_photons, lambda, n_kicks };
enum class VisibilityPreset { none, fig2b, fig2c };

/// Everything a sweep command needs. Unset overrides fall back to the system
/// description or to the command's documented defaults.
struct RunConfig {
    SystemParams system = figure2_params();
    PhysicalConstants constants = PhysicalConstants::si();
    std::optional<std::string> config_path;

    std::optional<double> k;
    std::optional<double> lambda;
    std::optional<double> n_photons;
    std::optional<double> temperature;   // K
    std::optional<int> n_kicks;
    std::optional<double> delta_sq;

    std::optional<long> points;
    std::optional<double> periods;
    std::size_t samples = 0;   // Monte Carlo columns when > 0
    std::uint64_t seed = kDefaultSeed;

    PulsedAxis axis = PulsedAxis::n_photons;
    std::optional<double> axis_min;
    std::optional<double> axis_max;
    std::complex<double> gamma{};
    VisibilityPreset preset = VisibilityPreset::none;

    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> out_path;
};

/// Applies the k / lambda overrides to the configured system.
System build_system(const RunConfig& cfg);

struct SweepResult {
    nlohmann::ordered_json meta;
    std::vector<std::string> columns;
    Eigen::MatrixXd rows;   // one row per grid point, NaN where undefined

    Eigen::Index column_index(const std::string& name) const;
    Eigen::VectorXd column(const std::string& name) const { return rows.col(column_index(name)); }
};

/// Rows over one axis (Np, lambda or N) of the polygon loop.
SweepResult cmd_phase_pulsed(const RunConfig& cfg);
/// Rows over t of the four phase pictures for continuous interaction.
SweepResult cmd_phase_continuous(const RunConfig& cfg);
/// Rows over t (and temperature for the fig2b preset) of the visibilities.
SweepResult cmd_visibility(const RunConfig& cfg);

/// Runs f(i) for i in [0, n) on a fixed pool of worker threads.
template <typename F>
void parallel_for(std::size_t n, F&& f);

}  // namespace optophase

#include "optophase/detail/parallel.hpp"

#endif  // OPTOPHASE_SWEEP_HPP
