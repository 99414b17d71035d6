#include "optophase/sweep.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "optophase/continuous.hpp"
#include "optophase/oracles.hpp"
#include "optophase/pulsed.hpp"
#include "optophase/visibility.hpp"

namespace optophase {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

nlohmann::ordered_json system_meta(const System& s)
{
    const auto& p = s.params();
    const auto& d = s.couplings();
    const auto& c = s.constants();
    nlohmann::ordered_json j;
    j["omega_m"] = p.omega_m;
    j["mass"] = p.mass;
    j["length"] = p.length;
    j["omega_f"] = p.omega_f;
    j["kappa"] = d.kappa;
    j["n_roundtrips"] = d.n_roundtrips;
    j["x_zpf"] = d.x_zpf;
    j["g0"] = d.g0;
    j["k"] = d.k;
    j["lambda"] = d.lambda;
    j["chi"] = d.chi;
    j["tau"] = d.tau;
    j["hbar"] = c.hbar;
    j["k_boltzmann"] = c.k_boltzmann;
    j["c_light"] = c.c_light;
    return j;
}

nlohmann::ordered_json base_meta(const char* command, const RunConfig& cfg, const System& s)
{
    nlohmann::ordered_json meta;
    meta["tool"] = "optophase";
    meta["version"] = kToolVersion;
    meta["command"] = command;
    meta["seed"] = cfg.seed;
    meta["config_path"] = cfg.config_path ? nlohmann::ordered_json(*cfg.config_path) : nlohmann::ordered_json();
    meta["system"] = system_meta(s);
    for (const auto& w : s.warnings())
        meta["warnings"].push_back(w);
    return meta;
}

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

void require_non_negative(double v, const char* what)
{
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be non-negative and finite");
}

Eigen::VectorXd time_grid(const RunConfig& cfg, double tau, double default_periods)
{
    const double periods = cfg.periods.value_or(default_periods);
    require_positive(periods, "--periods");
    const long points =
        cfg.points.value_or(static_cast<long>(std::llround(kPointsPerPeriod * periods)) + 1);
    if (points < 1)
        throw std::invalid_argument("--points must be at least 1");
    if (points == 1)
        return Eigen::VectorXd::Zero(1);
    return Eigen::VectorXd::LinSpaced(points, 0.0, periods * tau);
}

SweepResult make_result(nlohmann::ordered_json meta, std::vector<std::string> columns, Eigen::Index n_rows)
{
    SweepResult r;
    r.meta = std::move(meta);
    r.columns = std::move(columns);
    r.rows = Eigen::MatrixXd::Constant(n_rows, static_cast<Eigen::Index>(r.columns.size()), kNaN);
    return r;
}

std::uint64_t row_seed(std::uint64_t seed, std::size_t row)
{
    return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(row);
}

struct VisibilityRow {
    double nu_q_cor, nu_q_kerr, nu_q, nu_c, nu_c_noisy;
};

VisibilityRow visibility_row(const System& s, double temperature, double n_bar, double n_photons, double delta_sq,
                             double t)
{
    const VisibilitySample q = quantum_visibility(s.k(), n_bar, n_photons, s.omega() * t);
    const VisibilitySample c = classical_visibility(s, temperature, t);
    const VisibilitySample cn = noisy_classical_visibility(s, temperature, n_photons, delta_sq, t);
    return {q.nu_cor, q.nu_kerr, q.nu_total, c.nu_total, cn.nu_total};
}

}  // namespace

Eigen::Index SweepResult::column_index(const std::string& name) const
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name)
            return static_cast<Eigen::Index>(i);
    throw std::out_of_range("no column named '" + name + "'");
}

System build_system(const RunConfig& cfg)
{
    if (cfg.k && cfg.lambda)
        throw std::invalid_argument("--k and --lambda both fix the optical frequency; give one");
    SystemParams p = cfg.system;
    if (cfg.k) {
        require_positive(*cfg.k, "--k");
        p = with_coupling_k(p, cfg.constants, *cfg.k);
    }
    if (cfg.lambda) {
        require_positive(*cfg.lambda, "--lambda");
        p = with_lambda(p, cfg.constants, *cfg.lambda);
    }
    return System(p, cfg.constants);
}

SweepResult cmd_phase_pulsed(const RunConfig& cfg)
{
    const System base = build_system(cfg);
    const double n_photons = cfg.n_photons.value_or(100.0);
    const int n_kicks = cfg.n_kicks.value_or(4);
    const double lambda = base.lambda();

    std::vector<double> np_values, lambda_values;
    std::vector<int> kick_values;
    const char* axis_name = "";
    switch (cfg.axis) {
    case PulsedAxis::n_photons: {
        axis_name = "np";
        if (cfg.n_photons)
            throw std::invalid_argument("--np conflicts with --axis np; use --min/--max");
        const double lo = cfg.axis_min.value_or(0.0);
        const double hi = cfg.axis_max.value_or(1000.0);
        require_non_negative(lo, "--min");
        if (!(hi >= lo) || !std::isfinite(hi))
            throw std::invalid_argument("--max must be finite and not below --min");
        const long points = cfg.points.value_or(101);
        if (points < 1 || (points == 1 && hi != lo))
            throw std::invalid_argument("--points must be >= 2 for a non-degenerate range");
        const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(points, lo, hi);
        np_values.assign(v.data(), v.data() + v.size());
        break;
    }
    case PulsedAxis::lambda: {
        axis_name = "lambda";
        if (cfg.lambda || cfg.k)
            throw std::invalid_argument("--lambda/--k conflict with --axis lambda; use --min/--max");
        const double lo = cfg.axis_min.value_or(1e-3);
        const double hi = cfg.axis_max.value_or(1e-1);
        require_positive(lo, "--min");
        if (!(hi >= lo) || !std::isfinite(hi))
            throw std::invalid_argument("--max must be finite and not below --min");
        const long points = cfg.points.value_or(101);
        if (points < 1 || (points == 1 && hi != lo))
            throw std::invalid_argument("--points must be >= 2 for a non-degenerate range");
        const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(points, lo, hi);
        lambda_values.assign(v.data(), v.data() + v.size());
        break;
    }
    case PulsedAxis::n_kicks: {
        axis_name = "nkicks";
        if (cfg.n_kicks)
            throw std::invalid_argument("--nkicks conflicts with --axis nkicks; use --min/--max");
        if (cfg.points)
            throw std::invalid_argument("--axis nkicks takes every integer in [--min, --max]; drop --points");
        const double lo = cfg.axis_min.value_or(3.0);
        const double hi = cfg.axis_max.value_or(64.0);
        if (lo != std::floor(lo) || hi != std::floor(hi) || lo < 3.0 || hi < lo || hi > 1e6)
            throw std::invalid_argument("--axis nkicks needs integers 3 <= --min <= --max");
        for (auto n = static_cast<int>(lo); n <= static_cast<int>(hi); ++n)
            kick_values.push_back(n);
        break;
    }
    }
    const std::size_t n_rows = std::max({np_values.size(), lambda_values.size(), kick_values.size()});
    if (np_values.empty()) np_values.assign(n_rows, n_photons);
    if (lambda_values.empty()) lambda_values.assign(n_rows, lambda);
    if (kick_values.empty()) kick_values.assign(n_rows, n_kicks);
    if (n_kicks < 3)
        throw std::invalid_argument("--nkicks must be at least 3");
    require_non_negative(n_photons, "--np");

    nlohmann::ordered_json meta = base_meta("phase pulsed", cfg, base);
    meta["axis"] = axis_name;
    meta["n_photons"] = n_photons;
    meta["lambda"] = lambda;
    meta["n_kicks"] = n_kicks;
    SweepResult r = make_result(std::move(meta),
                                {"n_photons", "lambda", "n_kicks", "phi_quantum", "phi_classical",
                                 "offset_small_coupling", "offset_exact", "modulus_factor"},
                                static_cast<Eigen::Index>(n_rows));

    parallel_for(n_rows, [&](std::size_t i) {
        const double np = np_values[i];
        const double lam = lambda_values[i];
        const int n = kick_values[i];
        const System s = lam == base.lambda()
                             ? base
                             : System(with_lambda(base.params(), base.constants(), lam), base.constants());
        const PhaseResult q = quantum_pulsed_mean_field(PolygonLoop{n, lam, np});
        const PhaseResult c = classical_pulsed_phase(s, MomentumKick::from_photons(s, np), n);
        const PhaseOffset off = quantum_classical_offset(lam, n, np);
        auto row = r.rows.row(static_cast<Eigen::Index>(i));
        row << np, lam, static_cast<double>(n), q.phase, c.phase, off.small_coupling, off.exact, q.modulus_factor;
    });
    return r;
}

SweepResult cmd_phase_continuous(const RunConfig& cfg)
{
    const System s = build_system(cfg);
    const double n_photons = cfg.n_photons.value_or(1e5);
    require_non_negative(n_photons, "--np");
    const double k = s.k();
    const double w = s.omega();
    const Eigen::VectorXd t = time_grid(cfg, s.tau(), 1.0);
    const ClassicalPoint initial = to_classical(QuantumCoherent{cfg.gamma}, s);
    const double drive = s.drive_force(n_photons);

    std::vector<std::string> columns = {"t", "omega_t", "phi_quantum", "phi_classical", "phi_semiclassical_qfield",
                                        "phi_semiclassical_qmirror"};
    double trotter_c = 0.0;
    if (cfg.n_kicks) {
        if (*cfg.n_kicks < 3)
            throw std::invalid_argument("--nkicks must be at least 3");
        columns.push_back("trotter_phi_at_N");
        trotter_c = polygon_area_coefficient(2.0 * std::numbers::pi * std::numbers::sqrt2 * k / *cfg.n_kicks,
                                             *cfg.n_kicks);
    }

    nlohmann::ordered_json meta = base_meta("phase continuous", cfg, s);
    meta["n_photons"] = n_photons;
    meta["gamma_re"] = cfg.gamma.real();
    meta["gamma_im"] = cfg.gamma.imag();
    meta["points"] = t.size();
    meta["t_end"] = t[t.size() - 1];
    if (cfg.n_kicks)
        meta["n_kicks"] = *cfg.n_kicks;
    SweepResult r = make_result(std::move(meta), std::move(columns), t.size());

    parallel_for(static_cast<std::size_t>(t.size()), [&](std::size_t i) {
        const auto row = static_cast<Eigen::Index>(i);
        const double ti = t[row];
        const double wt = w * ti;
        const PhaseResult q = quantum_continuous_phase(cfg.gamma, k, n_photons, wt);
        const PhaseResult c = classical_continuous_phase(initial, drive, s, ti);
        double qfield = 0.0;
        if (ti > 0.0) {
            const auto intervals =
                static_cast<Eigen::Index>(256 * std::max(1.0, std::ceil(ti / s.tau() - 1e-12)));
            qfield = semiclassical_phase_quantum_field(sample_classical_trajectory(initial, drive, s, ti, intervals),
                                                       s)
                         .phase;
        }
        const PhaseResult qm = semiclassical_phase_quantum_mirror(cfg.gamma, k * n_photons, s, ti);
        r.rows(row, 0) = ti;
        r.rows(row, 1) = wt;
        r.rows(row, 2) = q.phase;
        r.rows(row, 3) = c.phase;
        r.rows(row, 4) = qfield;
        r.rows(row, 5) = qm.phase;
        if (cfg.n_kicks) {
            const double loops = ti / s.tau();
            const double j = std::round(loops);
            if (std::abs(loops - j) <= 1e-9 * std::max(1.0, j)) {
                const double c_j = j * trotter_c;
                r.rows(row, 6) = c_j + n_photons * std::sin(2.0 * c_j);
            }
        }
    });
    return r;
}

SweepResult cmd_visibility(const RunConfig& cfg)
{
    RunConfig run = cfg;
    std::vector<double> temperatures;
    double default_periods = 1.0;
    const char* preset = "none";
    if (cfg.preset != VisibilityPreset::none) {
        if (cfg.config_path)
            throw std::invalid_argument("--fig2b/--fig2c fix the system; drop --config");
        if (cfg.temperature)
            throw std::invalid_argument("--fig2b/--fig2c fix the temperature; drop --temp-kelvin");
        if (cfg.lambda)
            throw std::invalid_argument("--fig2b/--fig2c take --k, not --lambda");
        run.system = figure2_params();
        run.constants = PhysicalConstants::si();
        if (!run.k)
            run.k = 1e-2;
        if (!run.n_photons)
            run.n_photons = 1e5;
        default_periods = 3.0;
        if (cfg.preset == VisibilityPreset::fig2b) {
            temperatures = {1e-5, 1e-2, 1.0};
            preset = "fig2b";
        } else {
            temperatures = {5e-2};
            preset = "fig2c";
        }
    } else {
        temperatures = {cfg.temperature.value_or(0.0)};
    }
    const System s = build_system(run);
    const double n_photons = run.n_photons.value_or(1e5);
    require_non_negative(n_photons, "--np");
    for (double T : temperatures)
        require_non_negative(T, "--temp-kelvin");
    const double delta_sq = cfg.delta_sq.value_or(n_photons > 0.0 ? 1.0 / n_photons : 0.0);
    require_non_negative(delta_sq, "--delta-sq");
    if (cfg.samples > 0 && cfg.samples < 1000)
        throw std::invalid_argument("--samples must be at least 1000");

    const Eigen::VectorXd t = time_grid(run, s.tau(), default_periods);
    const Eigen::Index n_t = t.size();
    const auto n_temps = static_cast<Eigen::Index>(temperatures.size());

    std::vector<std::string> columns = {"temp_kelvin", "t",    "omega_t", "nu_q_cor",
                                        "nu_q_kerr",   "nu_q", "nu_c",    "nu_c_noisy"};
    if (cfg.samples > 0)
        for (const char* c : {"nu_c_mc", "nu_c_mc_stderr", "nu_c_noisy_mc", "nu_c_noisy_mc_stderr"})
            columns.emplace_back(c);

    std::vector<double> n_bars;
    for (double T : temperatures)
        n_bars.push_back(thermal_occupation(T, s.omega(), s.constants()));

    nlohmann::ordered_json meta = base_meta("visibility", run, s);
    meta["preset"] = preset;
    meta["n_photons"] = n_photons;
    meta["delta_sq"] = delta_sq;
    meta["samples"] = cfg.samples;
    meta["points_per_temperature"] = n_t;
    meta["t_end"] = t[n_t - 1];
    meta["temperatures_kelvin"] = temperatures;
    meta["n_bar"] = n_bars;
    SweepResult r = make_result(std::move(meta), std::move(columns), n_t * n_temps);

    parallel_for(static_cast<std::size_t>(n_t * n_temps), [&](std::size_t i) {
        const auto row = static_cast<Eigen::Index>(i);
        const std::size_t ti_index = i % static_cast<std::size_t>(n_t);
        const std::size_t temp_index = i / static_cast<std::size_t>(n_t);
        const double T = temperatures[temp_index];
        const double ti = t[static_cast<Eigen::Index>(ti_index)];
        const VisibilityRow v = visibility_row(s, T, n_bars[temp_index], n_photons, delta_sq, ti);
        r.rows.row(row).head(8) << T, ti, s.omega() * ti, v.nu_q_cor, v.nu_q_kerr, v.nu_q, v.nu_c, v.nu_c_noisy;
        if (cfg.samples > 0) {
            const std::uint64_t seed = row_seed(cfg.seed, i);
            const auto mc = oracles::mc_classical_visibility(s, T, n_photons, ti, cfg.samples, seed);
            const auto mn = oracles::mc_noisy_visibility(s, T, n_photons, delta_sq, ti, cfg.samples, seed);
            r.rows.row(row).tail(4) << mc.mean, mc.std_error, mn.mean, mn.std_error;
        }
    });

    std::vector<double> gaps;
    for (Eigen::Index j = 0; j < n_temps; ++j) {
        double gap = 0.0;
        for (Eigen::Index i = 0; i < n_t && t[i] <= s.tau() * (1.0 + 1e-12); ++i) {
            const Eigen::Index row = j * n_t + i;
            gap = std::max(gap, std::abs(r.rows(row, 5) - r.rows(row, 6)));
        }
        gaps.push_back(gap);
    }
    r.meta["max_abs_gap_one_period"] = gaps;
    return r;
}

}  // namespace optophase
