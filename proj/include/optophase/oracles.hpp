#ifndef OPTOPHASE_ORACLES_HPP
#define OPTOPHASE_ORACLES_HPP

// Brute-force evaluators used to check the closed forms. Nothing here calls
// the closed-form phase or visibility functions.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "optophase/continuous.hpp"
#include "optophase/params.hpp"
#include "optophase/quadrature.hpp"

namespace optophase::oracles {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// Number of batches (and RNG streams) a Monte Carlo estimate is split into.
inline constexpr int kMcBatches = 32;

/// Photon-number-resolved description of a field state after the interaction:
/// component n carries phase per_n_phase(n) and the (n+1, n) coherence picks
/// up per_pair_weight(n+1, n) from the traced-out mirror.
struct FockSumSpec {
    double n_photons = 0.0;
    std::size_t cutoff = 0;
    std::function<long double(std::size_t)> per_n_phase;
    std::function<std::complex<double>(std::size_t, std::size_t)> per_pair_weight;
};

struct FockSumResult {
    std::complex<double> mean_field;   // <a>; zero for the vacuum
    std::complex<double> normalized;   // <a> / alpha, the alpha -> 0 limit for the vacuum
    double modulus_factor = 0.0;       // |normalized|
    double phase = 0.0;                // unwrapped
    double principal_phase = 0.0;      // arg(normalized)
    long winding = 0;                  // (phase - principal_phase) / 2 pi
    double truncated_mass = 0.0;       // Poisson mass kept by the cutoff
};

/// Direct summation of e^{-Np} sum_n alpha Np^n/n! e^{i dphi(n)} w(n+1, n).
/// The phase is unwrapped by following arg of the partial sums as terms are
/// added. Throws CutoffError if the cutoff keeps less than 1 - 1e-10 of the
/// Poisson mass.
FockSumResult fock_sum_mean_field(const FockSumSpec& spec, std::complex<double> alpha);

/// Per-eta^2 phase of the ordered product of N displacements with directions
/// 2 pi j / N, from the pairwise Baker-Campbell-Hausdorff commutators:
/// (1/2) sum_{j<l} sin(2 pi (l - j) / N).
double bch_polygon_phase(int n_kicks);

/// FockSumSpec for the N-kick polygon loop: per_n_phase(n) = lambda^2 n^2 bch_polygon_phase(N).
FockSumSpec polygon_fock_spec(double lambda, int n_kicks, double n_photons, std::size_t cutoff);

/// FockSumSpec for the continuous joint state with a coherent mirror |gamma>; pair
/// weights are overlaps of the displaced mirror states.
FockSumSpec coherent_mirror_fock_spec(std::complex<double> gamma, double k, double n_photons, double omega_t,
                                      std::size_t cutoff);

/// FockSumSpec for a thermal mirror: pair weight exp(-k^2 (1 - cos wt)(2 n_bar + 1)).
FockSumSpec thermal_mirror_fock_spec(double k, double n_bar, double n_photons, double omega_t, std::size_t cutoff);

/// <beta|gamma> = exp(-|beta|^2/2 - |gamma|^2/2 + conj(beta) gamma).
std::complex<double> coherent_overlap(std::complex<double> beta, std::complex<double> gamma);

/// |<exp(i phi_c)>| over a Maxwell-Boltzmann ensemble of initial mirror
/// states: rho^2 ~ Exponential(mean k_B T), theta ~ U[0, 2 pi).
McEstimate mc_classical_visibility(const System& s, double temperature, double n_photons, double t,
                                   std::size_t n_samples, std::uint64_t seed);

/// As mc_classical_visibility with the field energy scaled by (1 - eps),
/// eps ~ Normal(0, delta_sq).
McEstimate mc_noisy_visibility(const System& s, double temperature, double n_photons, double delta_sq, double t,
                               std::size_t n_samples, std::uint64_t seed);

/// 2 (k_f / round-trip time) * integral of x dt over the sampled trajectory,
/// Richardson-extrapolated with up to `refinement` levels.
QuadratureResult quadrature_phase(const ClassicalTrajectory& trajectory, const System& s, int refinement = 8);

}  // namespace optophase::oracles

#endif  // OPTOPHASE_ORACLES_HPP
