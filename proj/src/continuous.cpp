#include "optophase/continuous.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "optophase/pulsed.hpp"
#include "optophase/quadrature.hpp"

namespace optophase {

namespace {

void require_time(double t)
{
    if (!(t >= 0.0))
        throw std::invalid_argument("interaction time must be non-negative");
}

// 1 - cos(a) without cancellation near a = 0.
double one_minus_cos(double a)
{
    const double h = std::sin(0.5 * a);
    return 2.0 * h * h;
}

}  // namespace

double loop_area_angle(double omega_t)
{
    if (std::abs(omega_t) < 1e-3) {
        const double a2 = omega_t * omega_t;
        return omega_t * a2 / 6.0 * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0));
    }
    return omega_t - std::sin(omega_t);
}

PhaseResult quantum_continuous_phase(std::complex<double> gamma, double k, double n_photons, double omega_t)
{
    require_time(omega_t);
    const double s = loop_area_angle(omega_t);
    const double oc = one_minus_cos(omega_t);
    const double kerr = 2.0 * k * k * s;
    PhaseResult r;
    r.picture = Picture::quantum;
    r.phase = 2.0 * k * (gamma.real() * std::sin(omega_t) + gamma.imag() * oc) + k * k * s +
              n_photons * std::sin(kerr);
    r.modulus_factor = std::exp(-k * k * oc - n_photons * one_minus_cos(kerr));
    return r;
}

Quadratures quantum_mean_motion(std::complex<double> gamma, double k, double n_photons, double omega_t)
{
    require_time(omega_t);
    const double c = std::cos(omega_t);
    const double sn = std::sin(omega_t);
    const double r2 = std::numbers::sqrt2;
    return {r2 * gamma.real() * c + r2 * gamma.imag() * sn + r2 * n_photons * k * one_minus_cos(omega_t),
            r2 * gamma.imag() * c - r2 * gamma.real() * sn + r2 * n_photons * k * sn};
}

PhaseSpacePoint classical_motion(const ClassicalPoint& initial, double drive, const System& s, double t)
{
    require_time(t);
    const double w = s.omega();
    const double m = s.params().mass;
    const double wt = w * t;
    const double shift = drive / (m * w * w);
    const double x = initial.x0 * std::cos(wt) + initial.p0 / (m * w) * std::sin(wt) + shift * one_minus_cos(wt);
    const double v = -initial.x0 * w * std::sin(wt) + initial.p0 / m * std::cos(wt) + shift * w * std::sin(wt);
    return {x, m * v};
}

PhaseResult classical_continuous_phase(const ClassicalPoint& initial, double drive, const System& s, double t)
{
    require_time(t);
    const auto& p = s.params();
    const double w = p.omega_m;
    const double wt = w * t;
    const double free = p.omega_f / (p.length * w) *
                        (initial.x0 * std::sin(wt) + initial.p0 / (p.mass * w) * one_minus_cos(wt));
    // drive * L = E0
    const double driven = p.omega_f / (w * w * w * p.mass * p.length * p.length) * (drive * p.length) *
                          loop_area_angle(wt);
    return {free + driven, 1.0, Picture::classical};
}

ClassicalTrajectory sample_classical_trajectory(const ClassicalPoint& initial, double drive, const System& s,
                                                double t_end, Eigen::Index intervals)
{
    require_time(t_end);
    if (intervals < 1)
        throw std::invalid_argument("trajectory needs at least one interval");
    ClassicalTrajectory traj;
    traj.initial = initial;
    traj.drive = drive;
    traj.t = Eigen::VectorXd::LinSpaced(intervals + 1, 0.0, t_end);
    traj.x.resize(intervals + 1);
    traj.p.resize(intervals + 1);
    for (Eigen::Index i = 0; i <= intervals; ++i) {
        const PhaseSpacePoint pt = classical_motion(initial, drive, s, traj.t[i]);
        traj.x[i] = pt.x;
        traj.p[i] = pt.p;
    }
    return traj;
}

PhaseResult semiclassical_phase_quantum_field(const ClassicalTrajectory& trajectory, const System& s)
{
    const Eigen::Index n = trajectory.t.size();
    if (n == 0 || trajectory.x.size() != n)
        throw std::invalid_argument("trajectory has no samples or mismatched columns");
    if (n == 1)
        return {0.0, 1.0, Picture::semiclassical_qfield};

    const double max_step = s.tau() / kMinSamplesPerPeriod;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (trajectory.t[i + 1] - trajectory.t[i] > max_step * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "trajectory undersampled: step " << trajectory.t[i + 1] - trajectory.t[i] << " s exceeds tau/"
               << kMinSamplesPerPeriod << " = " << max_step << " s";
            throw std::invalid_argument(os.str());
        }
    }
    const double hbar = s.constants().hbar;
    const double epsilon = hbar * s.params().omega_f / s.params().length;
    const QuadratureResult q = integrate_samples(trajectory.t, trajectory.x);
    return {epsilon / hbar * q.value, 1.0, Picture::semiclassical_qfield};
}

PhaseResult semiclassical_phase_quantum_mirror(std::complex<double> gamma, double k_np, const System& s, double t)
{
    require_time(t);
    const double w = s.omega();
    const std::complex<double> rot = std::polar(1.0, -w * t);
    const std::complex<double> i_w(0.0, w);
    // Integral over [0, t] of Gamma(t') = gamma e^{-i w t'} + k Np (1 - e^{-i w t'}).
    const std::complex<double> ring = (1.0 - rot) / i_w;
    const std::complex<double> label_integral = gamma * ring + k_np * (t - ring);
    const double mean_x_integral = std::numbers::sqrt2 * label_integral.real();
    const auto& d = s.couplings();
    const double phase = 2.0 * d.k_f / d.roundtrip_time * d.x_zpf * mean_x_integral;
    return {phase, 1.0, Picture::semiclassical_qmirror};
}

PhaseResult trotter_pulsed_approximation(double k, double n_photons, int n_steps)
{
    if (n_steps < 3)
        throw std::invalid_argument("Trotter approximation needs at least 3 steps");
    if (!(k >= 0.0))
        throw std::invalid_argument("coupling k must be non-negative");
    const double lambda_n = 2.0 * std::numbers::pi * std::numbers::sqrt2 * k / n_steps;
    return quantum_pulsed_mean_field(PolygonLoop{n_steps, lambda_n, n_photons});
}

JointStateSnapshot::JointStateSnapshot(std::complex<double> alpha, std::complex<double> gamma, double k,
                                       double omega_t, std::size_t cutoff)
    : alpha_(alpha), gamma_(gamma), k_(k), omega_t_(omega_t), cutoff_(cutoff)
{
    require_time(omega_t);
}

FockComponent JointStateSnapshot::component(std::size_t n) const
{
    const double nd = static_cast<double>(n);
    const double np = std::norm(alpha_);
    FockComponent c;
    if (np == 0.0) {
        c.poisson_amplitude = n == 0 ? 1.0 : 0.0;
    } else {
        const double log_mod = -0.5 * np + 0.5 * nd * std::log(np) - 0.5 * std::lgamma(nd + 1.0);
        c.poisson_amplitude = std::polar(std::exp(log_mod), nd * std::arg(alpha_));
    }
    c.phase_exponent = k_ * k_ * nd * nd * loop_area_angle(omega_t_) +
                       k_ * nd * (gamma_.real() * std::sin(omega_t_) + gamma_.imag() * one_minus_cos(omega_t_));
    const std::complex<double> rot = std::polar(1.0, -omega_t_);
    c.mirror_label = gamma_ * rot + k_ * nd * (1.0 - rot);
    return c;
}

double JointStateSnapshot::truncated_norm() const
{
    double sum = 0.0;
    for (std::size_t n = 0; n <= cutoff_; ++n)
        sum += std::norm(component(n).poisson_amplitude);
    return sum;
}

}  // namespace optophase
