#include "optophase/pulsed.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace optophase {

std::string_view to_string(Picture p)
{
    switch (p) {
    case Picture::quantum: return "quantum";
    case Picture::classical: return "classical";
    case Picture::semiclassical_qfield: return "semiclassical_qfield";
    case Picture::semiclassical_qmirror: return "semiclassical_qmirror";
    }
    return "unknown";
}

double principal_value(double phase)
{
    double r = std::remainder(phase, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi)
        r += 2.0 * std::numbers::pi;
    return r;
}

double PhaseResult::principal() const { return principal_value(phase); }

namespace {

void require_polygon(int n_kicks)
{
    if (n_kicks < 3)
        throw std::invalid_argument("a closed polygon needs at least 3 kicks (got " +
                                    std::to_string(n_kicks) + ")");
}

double n_cot(int n_kicks)
{
    const double a = std::numbers::pi / n_kicks;
    return n_kicks * std::cos(a) / std::sin(a);
}

}  // namespace

void PolygonLoop::validate() const
{
    require_polygon(n_kicks);
    if (!(lambda >= 0.0))
        throw std::invalid_argument("lambda must be non-negative");
    if (!(n_photons >= 0.0))
        throw std::invalid_argument("photon number must be non-negative");
}

double polygon_area_coefficient(double lambda, int n_kicks)
{
    require_polygon(n_kicks);
    return 0.25 * lambda * lambda * n_cot(n_kicks);
}

PhaseResult quantum_pulsed_mean_field(const PolygonLoop& loop)
{
    loop.validate();
    const double c = polygon_area_coefficient(loop.lambda, loop.n_kicks);
    const double np = loop.n_photons;
    return {c + np * std::sin(2.0 * c), std::exp(-np * (1.0 - std::cos(2.0 * c))), Picture::quantum};
}

PhaseResult quantum_pulsed_mean_field(std::complex<double> alpha, double lambda, int n_kicks)
{
    return quantum_pulsed_mean_field(PolygonLoop{n_kicks, lambda, std::norm(alpha)});
}

double KickTrajectory::position_sum() const
{
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        sum += points[i].x;
    return sum;
}

KickTrajectory classical_kick_trajectory(double zeta, int n_kicks)
{
    require_polygon(n_kicks);
    if (!(zeta >= 0.0))
        throw std::invalid_argument("displacement scale zeta must be non-negative");

    KickTrajectory traj;
    traj.zeta = zeta;
    traj.points.reserve(static_cast<std::size_t>(n_kicks) + 1);
    traj.points.push_back({0.0, 0.0, 0.0});

    const double step = 2.0 * std::numbers::pi / n_kicks;
    for (int i = 1; i <= n_kicks; ++i) {
        const KickPoint& prev = traj.points.back();
        // sin(angle - step) = (R_prev / R) sin(angle_prev), taken on the branch
        // of the post-kick vector (R_prev cos + zeta, R_prev sin); the principal
        // arcsin branch is wrong once that vector passes pi/2 (N >= 5).
        const double opposite = prev.radius * std::sin(prev.angle);
        const double adjacent = prev.radius * std::cos(prev.angle) + zeta;
        // hypot rather than the law of cosines, which cancels near closure.
        const double radius = std::hypot(opposite, adjacent);
        double angle = step + std::atan2(opposite, adjacent);
        if (i == n_kicks)
            angle = 0.0;   // back at the origin; direction is undefined
        traj.points.push_back({radius, angle, radius * std::sin(angle)});
    }
    return traj;
}

MomentumKick MomentumKick::from_photons(const System& s, double n_photons)
{
    if (!(n_photons >= 0.0))
        throw std::invalid_argument("photon number must be non-negative");
    const auto& d = s.couplings();
    return {2.0 * d.n_roundtrips * s.field_energy(n_photons) / s.constants().c_light};
}

PhaseResult classical_pulsed_phase(const System& s, const MomentumKick& kick, int n_kicks)
{
    require_polygon(n_kicks);
    const auto& d = s.couplings();
    const double zeta = kick.impulse / (s.params().mass * s.omega());
    return {d.k_f * d.n_roundtrips * zeta * n_cot(n_kicks), 1.0, Picture::classical};
}

PhaseResult classical_pulsed_phase_from_trajectory(const System& s, const MomentumKick& kick, int n_kicks,
                                                   const ClassicalPoint& initial)
{
    const auto& d = s.couplings();
    const double m_omega = s.params().mass * s.omega();
    const KickTrajectory traj = classical_kick_trajectory(kick.impulse / m_omega, n_kicks);

    double sum = 0.0;
    for (int i = 0; i < n_kicks; ++i) {
        const double wt = 2.0 * std::numbers::pi * i / n_kicks;
        const double free = initial.x0 * std::cos(wt) + initial.p0 / m_omega * std::sin(wt);
        sum += traj.points[static_cast<std::size_t>(i)].x + free;
    }
    return {2.0 * d.k_f * d.n_roundtrips * sum, 1.0, Picture::classical};
}

PhaseOffset quantum_classical_offset(double lambda, int n_kicks, double n_photons)
{
    const PolygonLoop loop{n_kicks, lambda, n_photons};
    loop.validate();
    const double c = polygon_area_coefficient(lambda, n_kicks);
    const double quantum = quantum_pulsed_mean_field(loop).phase;
    return {c, quantum - 2.0 * n_photons * c};
}

ShotNoiseFloor shot_noise_phase_floor(double n_photons, long n_repeats, double lambda)
{
    if (!(n_photons > 0.0))
        throw std::invalid_argument("shot-noise floor needs a positive photon number");
    if (n_repeats < 1)
        throw std::invalid_argument("number of repeats must be at least 1");
    const double floor = 1.0 / std::sqrt(n_photons * static_cast<double>(n_repeats));
    return {floor, floor < lambda * lambda};
}

}  // namespace optophase
