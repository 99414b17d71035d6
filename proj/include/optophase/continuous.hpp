#ifndef OPTOPHASE_CONTINUOUS_HPP
#define OPTOPHASE_CONTINUOUS_HPP

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "optophase/params.hpp"
#include "optophase/phase.hpp"

namespace optophase {

// Coupling-form functions take the mechanical angle omega_t = omega * t and
// the dimensionless coupling k = g0 / (sqrt(2) omega). Physical-form
// functions take a System and time in seconds.

/// omega_t - sin(omega_t); vanishes to third order at t = 0.
double loop_area_angle(double omega_t);

/// Phase of <a> for a coherent mirror |gamma> after continuous interaction.
/// The modulus factor includes the mirror overlap exp(-k^2 (1 - cos omega_t)).
PhaseResult quantum_continuous_phase(std::complex<double> gamma, double k, double n_photons, double omega_t);

struct Quadratures {
    double x = 0.0;
    double p = 0.0;
};

/// <x> and <p> in units of the zero-point quadrature (x = (b + b^dag)/sqrt 2).
Quadratures quantum_mean_motion(std::complex<double> gamma, double k, double n_photons, double omega_t);

struct PhaseSpacePoint {
    double x = 0.0;   // m
    double p = 0.0;   // kg m/s
};

/// Harmonic mirror under a constant force `drive` = E0 / L.
PhaseSpacePoint classical_motion(const ClassicalPoint& initial, double drive, const System& s, double t);

/// (omega_f / L) * integral of x(t') over [0, t], in closed form.
PhaseResult classical_continuous_phase(const ClassicalPoint& initial, double drive, const System& s, double t);

struct ClassicalTrajectory {
    ClassicalPoint initial;
    double drive = 0.0;
    Eigen::VectorXd t;
    Eigen::VectorXd x;
    Eigen::VectorXd p;
};

/// Samples classical_motion uniformly on [0, t_end] with `intervals` steps.
ClassicalTrajectory sample_classical_trajectory(const ClassicalPoint& initial, double drive, const System& s,
                                                double t_end, Eigen::Index intervals);

/// Minimum sampling density accepted for quadrature of a trajectory.
inline constexpr double kMinSamplesPerPeriod = 32.0;

/// Quantum field, classical mirror: phase (epsilon / hbar) * integral x dt with
/// epsilon = hbar omega_f / L, integrated numerically from the samples.
/// Throws if the sampling is coarser than kMinSamplesPerPeriod.
PhaseResult semiclassical_phase_quantum_field(const ClassicalTrajectory& trajectory, const System& s);

/// Classical field, quantum mirror: the coherent label evolves to
/// gamma e^{-i omega t} + k Np (1 - e^{-i omega t}); the phase is
/// 2 (k_f / round-trip time) * integral of the mean position.
PhaseResult semiclassical_phase_quantum_mirror(std::complex<double> gamma, double k_np, const System& s, double t);

/// N-kick polygon over one period with per-step coupling 2 pi sqrt(2) k / N.
/// Converges to quantum_continuous_phase(0, k, Np, 2 pi) as O(1/N^2).
PhaseResult trotter_pulsed_approximation(double k, double n_photons, int n_steps);

/// Single Fock component of the joint field-mirror state for a coherent
/// field |alpha> and coherent mirror |gamma>.
struct FockComponent {
    std::complex<double> poisson_amplitude;   // e^{-|alpha|^2/2} alpha^n / sqrt(n!)
    double phase_exponent = 0.0;              // k^2 n^2 s + k n [gR sin + gI (1 - cos)]
    std::complex<double> mirror_label;        // Gamma_n(t)
};

/// Joint state at one instant. Components are generated on demand, so the
/// cutoff can be large without storing every label.
class JointStateSnapshot {
public:
    JointStateSnapshot(std::complex<double> alpha, std::complex<double> gamma, double k, double omega_t,
                       std::size_t cutoff);

    FockComponent component(std::size_t n) const;
    std::size_t cutoff() const { return cutoff_; }
    double omega_t() const { return omega_t_; }
    /// Sum of |amplitude|^2 for n <= cutoff.
    double truncated_norm() const;

private:
    std::complex<double> alpha_;
    std::complex<double> gamma_;
    double k_;
    double omega_t_;
    std::size_t cutoff_;
};

}  // namespace optophase

#endif  // OPTOPHASE_CONTINUOUS_HPP
