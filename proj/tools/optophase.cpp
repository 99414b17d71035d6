// optophase: phase and visibility sweeps and oracle checks.
//
//   optophase phase pulsed|continuous [flags]
//   optophase visibility [--fig2b|--fig2c] [flags]
//   optophase check [--suite NAME] [--seed S] [--tolerance X] [--list]
//
// Exit codes: 0 success, 1 check failure, 2 usage or configuration error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "optophase/check.hpp"
#include "optophase/config.hpp"
#include "optophase/output.hpp"
#include "optophase/sweep.hpp"

using namespace optophase;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> out;
    std::string format = "csv";
    std::optional<long> points;
    std::optional<double> periods;
    std::optional<std::size_t> samples;
    std::optional<std::string> seed;
    std::optional<double> k, n_photons, temperature, lambda, delta_sq;
    std::optional<int> n_kicks;
    std::string axis = "np";
    std::optional<double> axis_min, axis_max;
    double gamma_re = 0.0;
    double gamma_im = 0.0;
    bool fig2b = false;
    bool fig2c = false;
};

std::uint64_t parse_seed(const std::string& text, const char* origin)
{
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used, 0);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || text.front() == '-')
        throw std::invalid_argument(std::string(origin) + " is not an unsigned integer: '" + text + "'");
    return v;
}

std::uint64_t resolve_seed(const Flags& f)
{
    if (f.seed)
        return parse_seed(*f.seed, "--seed");
    if (const char* env = std::getenv("OPTOPHASE_SEED"); env && *env)
        return parse_seed(env, "OPTOPHASE_SEED");
    return kDefaultSeed;
}

void add_output_flags(CLI::App* app, Flags& f)
{
    app->add_option("--out", f.out, "Output file (default: stdout)");
    app->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--seed", f.seed, "RNG seed (falls back to OPTOPHASE_SEED, then 0x5EED)");
}

void add_sweep_flags(CLI::App* app, Flags& f)
{
    add_output_flags(app, f);
    app->add_option("--config", f.config, "System description file (key = value)");
    app->add_option("--points", f.points, "Number of grid points");
    app->add_option("--periods", f.periods, "Time range in mechanical periods");
    app->add_option("--samples", f.samples, "Monte Carlo samples per row (visibility only)");
    app->add_option("--k", f.k, "Coupling k = g0 / (sqrt2 omega)");
    app->add_option("--lambda", f.lambda, "Per-kick coupling lambda = g0 / kappa");
    app->add_option("--np", f.n_photons, "Mean photon number");
    app->add_option("--temp-kelvin", f.temperature, "Mirror temperature [K]");
    app->add_option("--nkicks", f.n_kicks, "Kicks per loop (pulsed) or Trotter steps (continuous)");
}

RunConfig to_run_config(const Flags& f)
{
    RunConfig cfg;
    if (f.config) {
        const SystemConfig sc = load_system_config(*f.config);
        cfg.system = sc.params;
        cfg.constants = sc.constants;
        cfg.config_path = f.config;
    }
    cfg.k = f.k;
    cfg.lambda = f.lambda;
    cfg.n_photons = f.n_photons;
    cfg.temperature = f.temperature;
    cfg.n_kicks = f.n_kicks;
    cfg.delta_sq = f.delta_sq;
    cfg.points = f.points;
    cfg.periods = f.periods;
    cfg.samples = f.samples.value_or(0);
    cfg.seed = resolve_seed(f);
    cfg.axis_min = f.axis_min;
    cfg.axis_max = f.axis_max;
    cfg.gamma = {f.gamma_re, f.gamma_im};
    if (f.axis == "np")
        cfg.axis = PulsedAxis::n_photons;
    else if (f.axis == "lambda")
        cfg.axis = PulsedAxis::lambda;
    else
        cfg.axis = PulsedAxis::n_kicks;
    if (f.fig2b && f.fig2c)
        throw std::invalid_argument("--fig2b and --fig2c are exclusive");
    cfg.preset = f.fig2b ? VisibilityPreset::fig2b : f.fig2c ? VisibilityPreset::fig2c : VisibilityPreset::none;
    cfg.format = f.format == "json" ? OutputFormat::json : OutputFormat::csv;
    cfg.out_path = f.out;
    return cfg;
}

template <typename Write>
void emit(const std::optional<std::string>& path, Write write)
{
    if (!path) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file '" + *path + "'");
    write(out);
    if (!out)
        throw std::runtime_error("failed writing '" + *path + "'");
}

void emit_sweep(const SweepResult& r, const RunConfig& cfg)
{
    emit(cfg.out_path, [&](std::ostream& os) {
        if (cfg.format == OutputFormat::json)
            write_json(r, os);
        else
            write_csv(r, os);
    });
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Optomechanical phase and visibility simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Flags f;
    auto* phase = app.add_subcommand("phase", "Phase sweeps");
    phase->require_subcommand(1);
    auto* pulsed = phase->add_subcommand("pulsed", "Polygon-loop phases over one axis");
    add_sweep_flags(pulsed, f);
    pulsed->add_option("--axis", f.axis, "Sweep axis")->check(CLI::IsMember({"np", "lambda", "nkicks"}));
    pulsed->add_option("--min", f.axis_min, "Axis start");
    pulsed->add_option("--max", f.axis_max, "Axis end");
    auto* continuous = phase->add_subcommand("continuous", "Continuous-interaction phases over time");
    add_sweep_flags(continuous, f);
    continuous->add_option("--gamma-re", f.gamma_re, "Re of the coherent mirror label");
    continuous->add_option("--gamma-im", f.gamma_im, "Im of the coherent mirror label");

    auto* visibility = app.add_subcommand("visibility", "Visibility over time");
    add_sweep_flags(visibility, f);
    visibility->add_flag("--fig2b", f.fig2b, "T in {1e-5, 1e-2, 1} K, k = 1e-2, Np = 1e5, tau = 1e-5 s");
    visibility->add_flag("--fig2c", f.fig2c, "T = 5e-2 K, k = 1e-2, Np = 1e5, tau = 1e-5 s");
    visibility->add_option("--delta-sq", f.delta_sq, "Field-energy noise variance (default 1/Np)");

    CheckOptions check_opts;
    std::optional<std::string> suite;
    std::optional<double> tolerance;
    bool list = false;
    auto* check = app.add_subcommand("check", "Run oracle-vs-closed-form suites");
    add_output_flags(check, f);
    check->add_option("--suite", suite, "Run a single suite");
    check->add_option("--tolerance", tolerance, "Replace every suite tolerance");
    check->add_flag("--list", list, "List suites and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*check) {
            if (list) {
                for (const auto& s : check_suites())
                    std::cout << s.name << "  " << s.description << '\n';
                return kExitOk;
            }
            check_opts.seed = resolve_seed(f);
            check_opts.tolerance = tolerance;
            check_opts.only_suite = suite;
            const auto reports = run_checks(check_opts);
            const auto report = check_report_json(reports, check_opts);
            emit(f.out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
            bool ok = true;
            for (const auto& r : reports) {
                if (!r.passed) {
                    std::cerr << "FAILED " << r.name << ": deviation " << r.deviation << " > tolerance "
                              << r.tolerance << " (" << r.detail << ")\n";
                    ok = false;
                }
            }
            return ok ? kExitOk : kExitCheckFailed;
        }

        const RunConfig cfg = to_run_config(f);
        if (*pulsed) {
            emit_sweep(cmd_phase_pulsed(cfg), cfg);
        } else if (*continuous) {
            emit_sweep(cmd_phase_continuous(cfg), cfg);
        } else if (*visibility) {
            emit_sweep(cmd_visibility(cfg), cfg);
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "optophase: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "optophase: " << e.what() << '\n';
        return kExitUsage;
    }
}
