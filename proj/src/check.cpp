#include "optophase/check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "optophase/continuous.hpp"
#include "optophase/oracles.hpp"
#include "optophase/pulsed.hpp"
#include "optophase/rng.hpp"
#include "optophase/visibility.hpp"

namespace optophase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    double deviation = 0.0;
    std::string detail;
};

struct Suite {
    const char* name;
    const char* description;
    double tolerance;
    std::function<Outcome(const CheckOptions&)> run;
};

std::string describe(std::initializer_list<std::pair<const char*, double>> fields)
{
    std::ostringstream os;
    os.precision(10);
    bool first = true;
    for (const auto& [k, v] : fields) {
        os << (first ? "" : ", ") << k << "=" << v;
        first = false;
    }
    return os.str();
}

// Keeps the largest deviation and the parameters that produced it.
struct Worst {
    Outcome out;
    void update(double deviation, std::string detail)
    {
        if (std::isnan(deviation) || deviation > out.deviation || out.detail.empty()) {
            if (std::isnan(out.deviation))
                return;
            out.deviation = deviation;
            out.detail = std::move(detail);
        }
    }
};

System fig2_system(double k = 1e-2)
{
    return System(with_coupling_k(figure2_params(), PhysicalConstants::si(), k));
}

oracles::FockSumResult fock(const oracles::FockSumSpec& spec)
{
    return oracles::fock_sum_mean_field(spec, std::sqrt(spec.n_photons));
}

constexpr double kPulsedLambdas[] = {1e-3, 1e-2, 1e-1};
constexpr double kPulsedPhotons[] = {0.0, 1.0, 10.0, 100.0};

struct ContinuousCase {
    std::complex<double> gamma;
    double k, n_photons, omega_t;
};

const std::vector<ContinuousCase>& continuous_cases()
{
    static const std::vector<ContinuousCase> cases = {
        {{0.0, 0.0}, 1e-2, 1e5, 2.0 * kPi},
        {{0.0, 0.0}, 1e-2, 1e5, kPi},
        {{0.3, -0.2}, 0.05, 50.0, 0.7},
        {{0.3, -0.2}, 0.05, 50.0, 2.5},
        {{-1.1, 0.4}, 0.05, 50.0, 2.0 * kPi},
        {{0.8, 0.9}, 0.02, 400.0, 9.0},
    };
    return cases;
}

Outcome pulsed_fock_oracle(const CheckOptions&)
{
    Worst w;
    auto probe = [&](double lambda, double np, int n) {
        const PhaseResult closed = quantum_pulsed_mean_field(PolygonLoop{n, lambda, np});
        const auto o = fock(oracles::polygon_fock_spec(lambda, n, np, default_fock_cutoff(np)));
        const double dev = std::max(std::abs(closed.phase - o.phase), std::abs(closed.modulus_factor - o.modulus_factor));
        w.update(dev, describe({{"lambda", lambda}, {"Np", np}, {"N", n}}));
    };
    for (double lambda : kPulsedLambdas)
        for (double np : kPulsedPhotons)
            probe(lambda, np, 4);
    for (int n : {3, 5, 6, 10, 17})
        probe(0.1, 10.0, n);
    return w.out;
}

Outcome polygon_recurrence(const CheckOptions&)
{
    Worst w;
    for (double zeta : {1e-3, 1.0, 1e3}) {
        for (int n = 3; n <= 64; ++n) {
            const KickTrajectory traj = classical_kick_trajectory(zeta, n);
            const double expected = 0.5 * zeta * n * std::cos(kPi / n) / std::sin(kPi / n);
            const double rel = std::abs(traj.position_sum() - expected) / std::abs(expected);
            const double closure = traj.closure_radius() / zeta;
            w.update(std::max(rel, closure), describe({{"zeta", zeta}, {"N", n}}));
        }
    }
    return w.out;
}

struct TrotterFit {
    double slope;
    double error_at_max;
};

TrotterFit trotter_fit()
{
    const double k = 1e-2;
    const double np = 1e5;
    const double exact = quantum_continuous_phase(0.0, k, np, 2.0 * kPi).phase;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double last = 0.0;
    const int ns[] = {100, 1000, 10000};
    for (int n : ns) {
        const double err = std::abs(trotter_pulsed_approximation(k, np, n).phase - exact);
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        last = err;
    }
    const double m = 3.0;
    return {(m * sxy - sx * sy) / (m * sxx - sx * sx), last};
}

Outcome trotter_slope(const CheckOptions&)
{
    const TrotterFit f = trotter_fit();
    return {std::abs(f.slope + 2.0), describe({{"slope", f.slope}})};
}

Outcome trotter_error(const CheckOptions&)
{
    const TrotterFit f = trotter_fit();
    return {f.error_at_max, describe({{"N", 10000}, {"k", 1e-2}, {"Np", 1e5}})};
}

Outcome continuous_fock_oracle(const CheckOptions&)
{
    Worst w;
    for (const auto& c : continuous_cases()) {
        const PhaseResult closed = quantum_continuous_phase(c.gamma, c.k, c.n_photons, c.omega_t);
        const auto o = fock(oracles::coherent_mirror_fock_spec(c.gamma, c.k, c.n_photons, c.omega_t,
                                                               default_fock_cutoff(c.n_photons)));
        const double dev = std::max(std::abs(closed.phase - o.phase), std::abs(closed.modulus_factor - o.modulus_factor));
        w.update(dev, describe({{"gamma_re", c.gamma.real()}, {"gamma_im", c.gamma.imag()}, {"k", c.k},
                                {"Np", c.n_photons}, {"omega_t", c.omega_t}}));
    }
    return w.out;
}

Outcome continuous_quadrature_oracle(const CheckOptions&)
{
    Worst w;
    const System s = fig2_system();
    const double np = 1e5;
    const double drive = s.drive_force(np);
    const ClassicalPoint starts[] = {{}, to_classical(QuantumCoherent{{2.0, -1.0}}, s),
                                     to_classical(QuantumCoherent{{-0.5, 3.0}}, s)};
    for (const auto& start : starts) {
        for (double periods : {0.25, 0.5, 1.0, 1.7, 2.0}) {
            const double t = periods * s.tau();
            const auto intervals = static_cast<Eigen::Index>(2048 * std::ceil(periods));
            const auto q = oracles::quadrature_phase(sample_classical_trajectory(start, drive, s, t, intervals), s);
            const double closed = classical_continuous_phase(start, drive, s, t).phase;
            w.update(std::abs(q.value - closed),
                     describe({{"x0", start.x0}, {"p0", start.p0}, {"t_over_tau", periods}}));
        }
    }
    return w.out;
}

Outcome semiclassical_collapse(const CheckOptions& opt)
{
    Worst w;
    const System s = fig2_system();
    const double np = 1e5;
    const double drive = s.drive_force(np);
    CounterRng rng(opt.seed, 7);
    const Eigen::VectorXd times = Eigen::VectorXd::LinSpaced(64, 0.0, 2.0 * s.tau());
    for (int trial = 0; trial < 3; ++trial) {
        const std::complex<double> gamma(6.0 * rng.uniform() - 3.0, 6.0 * rng.uniform() - 3.0);
        const ClassicalPoint start = to_classical(QuantumCoherent{gamma}, s);
        for (Eigen::Index i = 0; i < times.size(); ++i) {
            const double t = times[i];
            const double classical = classical_continuous_phase(start, drive, s, t).phase;
            const double qmirror = semiclassical_phase_quantum_mirror(gamma, s.k() * np, s, t).phase;
            double qfield = 0.0;
            if (t > 0.0) {
                const auto intervals = static_cast<Eigen::Index>(512 * std::max(1.0, std::ceil(t / s.tau() - 1e-12)));
                qfield = semiclassical_phase_quantum_field(sample_classical_trajectory(start, drive, s, t, intervals), s)
                             .phase;
            }
            w.update(std::max(std::abs(qfield - classical), std::abs(qmirror - classical)),
                     describe({{"gamma_re", gamma.real()}, {"gamma_im", gamma.imag()}, {"t_over_tau", t / s.tau()}}));
        }
    }
    return w.out;
}

Outcome visibility_revivals(const CheckOptions&)
{
    Worst w;
    const System s = fig2_system();
    const double np = 1e5;
    for (double T : {1e-5, 1e-2, 5e-2, 1.0}) {
        const double n_bar = thermal_occupation(T, s.omega(), s.constants());
        for (int j = 1; j <= 3; ++j) {
            const double t = j * s.tau();
            const VisibilitySample q = quantum_visibility(s.k(), n_bar, np, s.omega() * t);
            const VisibilitySample c = classical_visibility(s, T, t);
            w.update(std::max(std::abs(q.nu_total - q.nu_kerr), std::abs(c.nu_total - 1.0)),
                     describe({{"T", T}, {"j", j}}));
        }
    }
    return w.out;
}

Outcome thermal_fock_oracle(const CheckOptions&)
{
    Worst w;
    const double k = 0.05;
    for (double n_bar : {0.0, 5.0, 40.0}) {
        for (double np : {10.0, 200.0}) {
            for (double wt : {0.4, 2.0, kPi, 5.5, 2.0 * kPi}) {
                const VisibilitySample v = quantum_visibility(k, n_bar, np, wt);
                const double phase = quantum_continuous_phase(0.0, k, np, wt).phase;
                const auto o = fock(oracles::thermal_mirror_fock_spec(k, n_bar, np, wt, default_fock_cutoff(np)));
                w.update(std::max(std::abs(v.nu_total - o.modulus_factor), std::abs(phase - o.phase)),
                         describe({{"n_bar", n_bar}, {"Np", np}, {"omega_t", wt}}));
            }
        }
    }
    return w.out;
}

Outcome reduced_matrix_oracle(const CheckOptions&)
{
    Worst w;
    const double np = 10.0;
    const double k = 0.05;
    const double n_bar = 5.0;
    const std::complex<double> alpha(std::sqrt(np), 0.0);
    for (double wt : {0.5, 1.7, kPi, 4.0, 2.0 * kPi}) {
        const double closed = quantum_visibility(k, n_bar, np, wt).nu_total;
        const ReducedFieldMatrix rho = reduced_field_density_matrix(alpha, k, n_bar, wt);
        const double from_mean = std::abs(rho.mean_field()) / std::abs(alpha);
        const double from_scan =
            visibility_from_intensities([&](double phi) { return intensities_from_matrix(rho, phi); });
        w.update(std::max(std::abs(closed - from_mean), std::abs(closed - from_scan)), describe({{"omega_t", wt}}));
    }
    return w.out;
}

double z_score(const oracles::McEstimate& est, double expected)
{
    const double diff = std::abs(est.mean - expected);
    if (est.std_error > 0.0)
        return diff / est.std_error;
    return diff <= 1e-12 ? 0.0 : kInf;
}

constexpr double kMcTemperatures[] = {1e-4, 1e-3, 1e-2, 5e-2};
constexpr double kMcClassicalFractions[] = {0.125, 0.25, 0.5, 0.75};
constexpr double kMcNoisyFractions[] = {0.25, 0.5, 0.75, 1.0};
constexpr std::size_t kMcSamples = 100000;
constexpr std::size_t kSeedSweepSamples = 20000;
constexpr int kSeedSweepSeeds = 100;

// Each grid point draws from its own seed so that points are independent trials.
std::uint64_t point_seed(std::uint64_t seed, std::size_t index)
{
    return seed + 0x9E3779B97F4A7C15ULL * (index + 1);
}

Outcome mc_classical(const CheckOptions& opt)
{
    Worst w;
    const System s = fig2_system();
    const double np = 1e5;
    std::size_t index = 0;
    for (double T : kMcTemperatures) {
        for (double f : kMcClassicalFractions) {
            const double t = f * s.tau();
            const auto est = oracles::mc_classical_visibility(s, T, np, t, kMcSamples, point_seed(opt.seed, index++));
            w.update(z_score(est, classical_visibility(s, T, t).nu_total), describe({{"T", T}, {"t_over_tau", f}}));
        }
    }
    return w.out;
}

Outcome mc_noisy(const CheckOptions& opt)
{
    Worst w;
    const System s = fig2_system();
    const double np = 1e5;
    const double delta_sq = 1.0 / np;
    std::size_t index = 0;
    for (double T : kMcTemperatures) {
        for (double f : kMcNoisyFractions) {
            const double t = f * s.tau();
            const auto est =
                oracles::mc_noisy_visibility(s, T, np, delta_sq, t, kMcSamples, point_seed(opt.seed, index++));
            w.update(z_score(est, noisy_classical_visibility(s, T, np, delta_sq, t).nu_total),
                     describe({{"T", T}, {"t_over_tau", f}}));
        }
    }
    return w.out;
}

Outcome mc_seed_sweep(const CheckOptions& opt)
{
    const System s = fig2_system();
    const double np = 1e5;
    std::vector<int> passes(kSeedSweepSeeds, 0);
    parallel_for(kSeedSweepSeeds, [&](std::size_t i) {
        const std::uint64_t seed = opt.seed + 1 + i;
        std::size_t index = 0;
        for (double T : kMcTemperatures) {
            for (double f : kMcClassicalFractions) {
                const double t = f * s.tau();
                const auto est =
                    oracles::mc_classical_visibility(s, T, np, t, kSeedSweepSamples, point_seed(seed, index++));
                if (z_score(est, classical_visibility(s, T, t).nu_total) <= 3.0)
                    ++passes[i];
            }
        }
    });
    int total = 0;
    int clean_seeds = 0;
    const int per_seed = static_cast<int>(std::size(kMcTemperatures) * std::size(kMcClassicalFractions));
    for (int p : passes) {
        total += p;
        clean_seeds += p == per_seed ? 1 : 0;
    }
    const double rate = static_cast<double>(total) / (kSeedSweepSeeds * per_seed);
    return {1.0 - rate, describe({{"point_pass_rate", rate}, {"seeds_all_points_pass", clean_seeds}})};
}

Outcome thermal_correspondence(const CheckOptions&)
{
    Worst w;
    const System s = fig2_system();
    const double hbar_w = s.constants().hbar * s.omega();
    const double k = s.k();
    for (int e = 0; e <= 12; ++e) {
        const double x = std::pow(10.0, -5.0 + 3.0 * e / 12.0);
        const double T = hbar_w / (s.constants().k_boltzmann * x);
        const double n_bar = thermal_occupation(T, s.omega(), s.constants());
        for (double f : {0.1, 0.25, 0.5, 0.8}) {
            const double wt = 2.0 * kPi * f;
            const double t = wt / s.omega();
            const double ln_q = std::log(quantum_visibility(k, n_bar, 0.0, wt).nu_cor);
            const double ln_c = std::log(classical_visibility(s, T, t).nu_total);
            const double bound = k * k * (1.0 - std::cos(wt)) * x / 3.0;
            w.update(std::abs(ln_q - ln_c) / bound, describe({{"beta_hbar_omega", x}, {"t_over_tau", f}}));
        }
    }
    const System cold = fig2_system(0.1);
    const double T = 1e-6;
    const double n_bar = thermal_occupation(T, cold.omega(), cold.constants());
    const double bound = std::abs(std::exp(-2.0 * 0.1 * 0.1) - 1.0);
    for (int i = 0; i <= 256; ++i) {
        const double t = cold.tau() * i / 256.0;
        const double q = quantum_visibility(cold.k(), n_bar, 0.0, cold.omega() * t).nu_cor;
        const double c = classical_visibility(cold, T, t).nu_total;
        w.update(std::abs(q - c) / bound, describe({{"T", T}, {"k", 0.1}, {"t_over_tau", i / 256.0}}));
    }
    return w.out;
}

Outcome fock_cutoff_robustness(const CheckOptions&)
{
    Worst w;
    auto compare = [&](const std::function<oracles::FockSumSpec(std::size_t)>& make, double np, std::string detail) {
        const std::size_t n_max = default_fock_cutoff(np);
        const auto a = fock(make(n_max));
        const auto b = fock(make(2 * n_max));
        w.update(std::max(std::abs(a.modulus_factor - b.modulus_factor), std::abs(a.phase - b.phase)),
                 std::move(detail));
    };
    for (double lambda : kPulsedLambdas)
        for (double np : kPulsedPhotons)
            compare([=](std::size_t c) { return oracles::polygon_fock_spec(lambda, 4, np, c); }, np,
                    describe({{"lambda", lambda}, {"Np", np}}));
    for (const auto& cs : continuous_cases())
        compare(
            [=](std::size_t c) {
                return oracles::coherent_mirror_fock_spec(cs.gamma, cs.k, cs.n_photons, cs.omega_t, c);
            },
            cs.n_photons, describe({{"k", cs.k}, {"Np", cs.n_photons}, {"omega_t", cs.omega_t}}));
    return w.out;
}

Outcome mc_determinism(const CheckOptions& opt)
{
    const System s = fig2_system();
    const double t = 0.3 * s.tau();
    const auto a = oracles::mc_noisy_visibility(s, 5e-2, 1e5, 1e-5, t, 50000, opt.seed);
    const auto b = oracles::mc_noisy_visibility(s, 5e-2, 1e5, 1e-5, t, 50000, opt.seed);
    return {std::abs(a.mean - b.mean) + std::abs(a.std_error - b.std_error),
            describe({{"mean", a.mean}, {"std_error", a.std_error}})};
}

const std::vector<Suite>& suites()
{
    static const std::vector<Suite> all = {
        {"pulsed_fock_oracle", "polygon-loop phase and modulus vs Fock sum [rad]", 1e-10, pulsed_fock_oracle},
        {"polygon_recurrence", "kick recurrence position sum (relative) and closure (/zeta)", 1e-10,
         polygon_recurrence},
        {"trotter_slope", "|slope + 2| of log-log Trotter error over N = 1e2..1e4", 0.2, trotter_slope},
        {"trotter_error", "|phi_N - phi_continuous| at N = 1e4 [rad]", 1e-4, trotter_error},
        {"continuous_fock_oracle", "continuous quantum phase and modulus vs Fock sum [rad]", 1e-9,
         continuous_fock_oracle},
        {"continuous_quadrature_oracle", "classical continuous phase vs trajectory quadrature [rad]", 1e-9,
         continuous_quadrature_oracle},
        {"semiclassical_collapse", "both semiclassical phases vs classical phase over [0, 2 tau] [rad]", 1e-8,
         semiclassical_collapse},
        {"visibility_revivals", "nu_q = nu_kerr and nu_c = 1 at t = j tau", 1e-12, visibility_revivals},
        {"thermal_fock_oracle", "thermal-mirror visibility and phase vs Fock sum", 1e-9, thermal_fock_oracle},
        {"reduced_matrix_oracle", "visibility vs reduced density matrix (mean field and fringe scan)", 1e-9,
         reduced_matrix_oracle},
        {"mc_classical", "max |MC - closed form| / std_error, thermal classical visibility", 3.0, mc_classical},
        {"mc_noisy", "max |MC - closed form| / std_error, noisy classical visibility", 3.0, mc_noisy},
        {"mc_seed_sweep", "1 - per-point 3-sigma pass rate over 100 seeds", 0.01, mc_seed_sweep},
        {"thermal_correspondence", "max ratio of quantum-classical thermal gap to its bound", 1.0,
         thermal_correspondence},
        {"fock_cutoff_robustness", "Fock sum change when the cutoff is doubled", 1e-10, fock_cutoff_robustness},
        {"mc_determinism", "difference between two runs with the same seed", 0.0, mc_determinism},
    };
    return all;
}

}  // namespace

std::vector<SuiteInfo> check_suites()
{
    std::vector<SuiteInfo> out;
    for (const auto& s : suites())
        out.push_back({s.name, s.description});
    return out;
}

std::vector<SuiteReport> run_checks(const CheckOptions& options)
{
    if (options.tolerance && !(*options.tolerance >= 0.0))
        throw std::invalid_argument("--tolerance must be non-negative");
    std::vector<const Suite*> selected;
    for (const auto& s : suites())
        if (!options.only_suite || *options.only_suite == s.name)
            selected.push_back(&s);
    if (selected.empty())
        throw std::invalid_argument("unknown suite '" + options.only_suite.value_or("") + "'");

    std::vector<SuiteReport> reports;
    for (const Suite* s : selected) {
        SuiteReport r;
        r.name = s->name;
        r.description = s->description;
        r.tolerance = options.tolerance.value_or(s->tolerance);
        try {
            Outcome o = s->run(options);
            r.deviation = o.deviation;
            r.detail = std::move(o.detail);
        } catch (const std::exception& e) {
            r.deviation = std::numeric_limits<double>::quiet_NaN();
            r.detail = std::string("error: ") + e.what();
        }
        r.passed = !std::isnan(r.deviation) && r.deviation <= r.tolerance;
        reports.push_back(std::move(r));
    }
    return reports;
}

nlohmann::ordered_json check_report_json(const std::vector<SuiteReport>& reports, const CheckOptions& options)
{
    nlohmann::ordered_json j;
    j["tool"] = "optophase";
    j["version"] = kToolVersion;
    j["seed"] = options.seed;
    j["tolerance_override"] = options.tolerance ? nlohmann::ordered_json(*options.tolerance) : nlohmann::ordered_json();
    bool all = true;
    j["suites"] = nlohmann::ordered_json::array();
    j["failed"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json s;
        s["name"] = r.name;
        s["description"] = r.description;
        s["tolerance"] = r.tolerance;
        s["deviation"] = std::isfinite(r.deviation) ? nlohmann::ordered_json(r.deviation) : nlohmann::ordered_json();
        s["passed"] = r.passed;
        s["detail"] = r.detail;
        j["suites"].push_back(std::move(s));
        if (!r.passed)
            j["failed"].push_back(r.name);
        all = all && r.passed;
    }
    j["passed"] = all;
    return j;
}

}  // namespace optophase
