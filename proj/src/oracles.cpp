#include "optophase/oracles.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "optophase/rng.hpp"
#include "optophase/visibility.hpp"

namespace optophase::oracles {

namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

double log_poisson(double n_photons, std::size_t n)
{
    if (n_photons == 0.0)
        return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    const double dn = static_cast<double>(n);
    return -n_photons + dn * std::log(n_photons) - std::lgamma(dn + 1.0);
}

}  // namespace

FockSumResult fock_sum_mean_field(const FockSumSpec& spec, std::complex<double> alpha)
{
    if (!spec.per_n_phase || !spec.per_pair_weight)
        throw std::invalid_argument("Fock sum needs phase and pair-weight functions");
    const double np = spec.n_photons;

    FockSumResult r;
    for (std::size_t n = 0; n <= spec.cutoff; ++n)
        r.truncated_mass += std::exp(log_poisson(np, n));
    if (r.truncated_mass < 1.0 - 1e-10) {
        const std::size_t need = required_fock_cutoff(np);
        std::ostringstream os;
        os << "Fock cutoff " << spec.cutoff << " keeps only " << r.truncated_mass
           << " of the Poisson mass; need cutoff >= " << need;
        throw CutoffError(os.str(), need);
    }

    std::complex<long double> sum = 0.0L;
    long double tracked = 0.0L;
    bool started = false;
    long double prev_phase = spec.per_n_phase(0);
    for (std::size_t n = 0; n < std::max<std::size_t>(spec.cutoff, 1); ++n) {
        const long double next_phase = spec.per_n_phase(n + 1);
        const long double delta = next_phase - prev_phase;
        prev_phase = next_phase;

        const double log_w = log_poisson(np, n);
        if (log_w < -740.0)
            continue;
        const std::complex<double> pair = spec.per_pair_weight(n + 1, n);
        const auto reduced = static_cast<double>(std::fmod(delta, kTwoPiL));
        const std::complex<long double> term =
            std::complex<long double>(std::polar(std::exp(log_w), reduced) * pair);

        const std::complex<long double> updated = sum + term;
        if (!started) {
            tracked = delta + static_cast<long double>(std::arg(pair));
            started = true;
        } else if (std::abs(sum) > 0.0L) {
            tracked += std::arg(updated / sum);
        }
        sum = updated;
    }

    r.normalized = std::complex<double>(sum);
    r.mean_field = alpha * r.normalized;
    r.modulus_factor = std::abs(r.normalized);
    r.principal_phase = std::arg(r.normalized);
    r.winding = std::lround((static_cast<double>(tracked) - r.principal_phase) / (2.0 * std::numbers::pi));
    r.phase = r.principal_phase + 2.0 * std::numbers::pi * static_cast<double>(r.winding);
    return r;
}

double bch_polygon_phase(int n_kicks)
{
    if (n_kicks < 3)
        throw std::invalid_argument("a closed polygon needs at least 3 kicks");
    // sum_{j<l} sin(theta (l - j)) grouped by separation d = l - j.
    long double acc = 0.0L;
    for (int d = 1; d < n_kicks; ++d)
        acc += static_cast<long double>(n_kicks - d) * std::sin(kTwoPiL * d / n_kicks);
    return static_cast<double>(0.5L * acc);
}

FockSumSpec polygon_fock_spec(double lambda, int n_kicks, double n_photons, std::size_t cutoff)
{
    const long double per_eta2 = bch_polygon_phase(n_kicks);
    const long double l2 = static_cast<long double>(lambda) * lambda;
    FockSumSpec spec;
    spec.n_photons = n_photons;
    spec.cutoff = cutoff;
    spec.per_n_phase = [=](std::size_t n) {
        const auto nl = static_cast<long double>(n);
        return l2 * nl * nl * per_eta2;
    };
    spec.per_pair_weight = [](std::size_t, std::size_t) { return std::complex<double>(1.0, 0.0); };
    return spec;
}

FockSumSpec coherent_mirror_fock_spec(std::complex<double> gamma, double k, double n_photons, double omega_t,
                                      std::size_t cutoff)
{
    const long double wt = omega_t;
    const long double area = wt - std::sin(wt);
    const long double drift =
        static_cast<long double>(gamma.real()) * std::sin(wt) + static_cast<long double>(gamma.imag()) * (1.0L - std::cos(wt));
    const long double kl = k;
    const std::complex<double> rot = std::polar(1.0, -omega_t);
    const std::complex<double> shift = k * (1.0 - rot);
    const std::complex<double> start = gamma * rot;

    FockSumSpec spec;
    spec.n_photons = n_photons;
    spec.cutoff = cutoff;
    spec.per_n_phase = [=](std::size_t n) {
        const auto nl = static_cast<long double>(n);
        return kl * kl * nl * nl * area + kl * nl * drift;
    };
    spec.per_pair_weight = [=](std::size_t n_plus, std::size_t n) {
        // Tr_m |Gamma_{n+1}><Gamma_n| = <Gamma_n|Gamma_{n+1}>.
        const std::complex<double> ket = start + static_cast<double>(n_plus) * shift;
        const std::complex<double> bra = start + static_cast<double>(n) * shift;
        return coherent_overlap(bra, ket);
    };
    return spec;
}

FockSumSpec thermal_mirror_fock_spec(double k, double n_bar, double n_photons, double omega_t, std::size_t cutoff)
{
    const long double wt = omega_t;
    const long double area = wt - std::sin(wt);
    const long double kl = k;
    const double damping = std::exp(-k * k * (1.0 - std::cos(omega_t)) * (2.0 * n_bar + 1.0));

    FockSumSpec spec;
    spec.n_photons = n_photons;
    spec.cutoff = cutoff;
    spec.per_n_phase = [=](std::size_t n) {
        const auto nl = static_cast<long double>(n);
        return kl * kl * nl * nl * area;
    };
    spec.per_pair_weight = [=](std::size_t, std::size_t) { return std::complex<double>(damping, 0.0); };
    return spec;
}

std::complex<double> coherent_overlap(std::complex<double> beta, std::complex<double> gamma)
{
    return std::exp(-0.5 * std::norm(beta) - 0.5 * std::norm(gamma) + std::conj(beta) * gamma);
}

namespace {

struct BatchSum {
    double re = 0.0;
    double im = 0.0;
    std::size_t count = 0;
};

// Runs `sample_phase(rng)` n_samples times split over kMcBatches streams and
// estimates |<exp(i phase)>| with a batch-means standard error.
template <typename SamplePhase>
McEstimate estimate_visibility(std::size_t n_samples, std::uint64_t seed, SamplePhase sample_phase)
{
    if (n_samples < 1000)
        throw std::invalid_argument("Monte Carlo visibility needs at least 1000 samples");

    std::vector<std::future<BatchSum>> jobs;
    jobs.reserve(kMcBatches);
    const std::size_t base = n_samples / kMcBatches;
    const std::size_t extra = n_samples % kMcBatches;
    for (int b = 0; b < kMcBatches; ++b) {
        const std::size_t count = base + (static_cast<std::size_t>(b) < extra ? 1 : 0);
        jobs.push_back(std::async(std::launch::async, [=] {
            CounterRng rng(seed, static_cast<std::uint64_t>(b));
            BatchSum sum;
            sum.count = count;
            for (std::size_t i = 0; i < count; ++i) {
                const double phase = sample_phase(rng);
                sum.re += std::cos(phase);
                sum.im += std::sin(phase);
            }
            return sum;
        }));
    }
    std::vector<BatchSum> batches;
    batches.reserve(kMcBatches);
    for (auto& job : jobs)
        batches.push_back(job.get());

    double re = 0.0;
    double im = 0.0;
    for (const auto& b : batches) {
        re += b.re;
        im += b.im;
    }
    const double n = static_cast<double>(n_samples);
    re /= n;
    im /= n;
    const double modulus = std::hypot(re, im);
    // Project each batch mean onto the direction of the overall mean.
    const double ux = modulus > 0.0 ? re / modulus : 1.0;
    const double uy = modulus > 0.0 ? im / modulus : 0.0;
    std::vector<double> projected;
    projected.reserve(batches.size());
    double mean_proj = 0.0;
    for (const auto& b : batches) {
        const double c = static_cast<double>(b.count);
        projected.push_back((b.re * ux + b.im * uy) / c);
        mean_proj += projected.back();
    }
    mean_proj /= kMcBatches;
    double var = 0.0;
    for (double v : projected)
        var += (v - mean_proj) * (v - mean_proj);
    var /= (kMcBatches - 1);

    McEstimate est;
    est.mean = modulus;
    est.std_error = std::sqrt(var / kMcBatches);
    est.n_samples = n_samples;
    est.seed = seed;
    return est;
}

struct ThermalSampler {
    double amplitude_cos;   // coefficient of rho cos(theta)
    double amplitude_sin;   // coefficient of rho sin(theta)
    double kT;

    double sample(CounterRng& rng) const
    {
        const double rho = std::sqrt(kT * rng.exponential());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        return rho * (amplitude_cos * std::cos(theta) + amplitude_sin * std::sin(theta));
    }
};

ThermalSampler make_thermal_sampler(const System& s, double temperature, double t)
{
    if (!(temperature >= 0.0))
        throw std::invalid_argument("temperature must be non-negative");
    if (!(t >= 0.0))
        throw std::invalid_argument("time must be non-negative");
    // Initial state (x0, p0) = (sqrt(2/(m w^2)) rho cos th, sqrt(2m) rho sin th)
    // fed through the phase (w_f / L w)[x0 sin wt + p0/(m w) (1 - cos wt)].
    const auto& p = s.params();
    const double w = p.omega_m;
    const double wt = w * t;
    const double pre = p.omega_f / (p.length * w);
    const double x_per_rho = std::sqrt(2.0 / (p.mass * w * w));
    const double p_per_rho = std::sqrt(2.0 * p.mass);
    return {pre * x_per_rho * std::sin(wt), pre * p_per_rho / (p.mass * w) * (1.0 - std::cos(wt)),
            s.constants().k_boltzmann * temperature};
}

}  // namespace

McEstimate mc_classical_visibility(const System& s, double temperature, double /*n_photons*/, double t,
                                   std::size_t n_samples, std::uint64_t seed)
{
    // The intensity-dependent drive phase is common to every sample and is
    // absorbed by the phase shifter, so only the initial-condition part is drawn.
    const ThermalSampler thermal = make_thermal_sampler(s, temperature, t);
    return estimate_visibility(n_samples, seed, [thermal](CounterRng& rng) { return thermal.sample(rng); });
}

McEstimate mc_noisy_visibility(const System& s, double temperature, double n_photons, double delta_sq, double t,
                               std::size_t n_samples, std::uint64_t seed)
{
    if (!(delta_sq >= 0.0))
        throw std::invalid_argument("noise variance must be non-negative");
    const ThermalSampler thermal = make_thermal_sampler(s, temperature, t);
    // Drive phase (w_f / (w^3 m L^2)) E0 (wt - sin wt); a noisy field shifts it by -eps times itself.
    const auto& p = s.params();
    const double w = p.omega_m;
    const double wt = w * t;
    const double drive = p.omega_f / (w * w * w * p.mass * p.length * p.length) * s.field_energy(n_photons) *
                         (wt - std::sin(wt));
    const double sigma = std::sqrt(delta_sq);
    return estimate_visibility(n_samples, seed, [thermal, drive, sigma](CounterRng& rng) {
        const double thermal_phase = thermal.sample(rng);
        if (sigma == 0.0)
            return thermal_phase;   // same draws as the noiseless estimator
        return thermal_phase - drive * sigma * rng.normal();
    });
}

QuadratureResult quadrature_phase(const ClassicalTrajectory& trajectory, const System& s, int refinement)
{
    const auto& d = s.couplings();
    const double scale = 2.0 * d.k_f / d.roundtrip_time;
    QuadratureResult q = integrate_samples(trajectory.t, trajectory.x, refinement);
    q.value *= scale;
    q.error *= scale;
    return q;
}

}  // namespace optophase::oracles
