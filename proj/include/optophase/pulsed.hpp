#ifndef OPTOPHASE_PULSED_HPP
#define OPTOPHASE_PULSED_HPP

#include <complex>
#include <vector>

#include "optophase/params.hpp"
#include "optophase/phase.hpp"

namespace optophase {

/// N kicks of per-kick coupling lambda, spaced tau/N apart, so that the
/// mirror traces a closed regular polygon in phase space.
struct PolygonLoop {
    int n_kicks = 4;
    double lambda = 0.0;
    double n_photons = 0.0;

    void validate() const;
};

/// (lambda^2 / 4) N cot(pi / N): phase-space area enclosed by the loop.
double polygon_area_coefficient(double lambda, int n_kicks);

/// <a> / alpha after the polygon loop, returned as phase c + Np sin 2c and
/// modulus exp(-Np (1 - cos 2c)). N = 4 is the four-pulse sequence.
PhaseResult quantum_pulsed_mean_field(std::complex<double> alpha, double lambda, int n_kicks);
PhaseResult quantum_pulsed_mean_field(const PolygonLoop& loop);

struct KickPoint {
    double radius = 0.0;   // m
    double angle = 0.0;    // rad, accumulated (not reduced)
    double x = 0.0;        // m
};

/// Mirror state just before each kick, t_i = i tau / N for i = 0..N. The last
/// point is the state after the final kick, which sits at the origin for a
/// closed loop.
struct KickTrajectory {
    double zeta = 0.0;
    std::vector<KickPoint> points;

    int n_kicks() const { return static_cast<int>(points.size()) - 1; }
    /// Sum of x(t_i) over the N kick times.
    double position_sum() const;
    double closure_radius() const { return points.back().radius; }
};

KickTrajectory classical_kick_trajectory(double zeta, int n_kicks);

struct MomentumKick {
    double impulse = 0.0;   // kg m/s, I = 2 N_rt E0 / c

    static MomentumKick from_photons(const System& s, double n_photons);
};

/// Closed form k_f N_rt (I / m omega) N cot(pi / N).
PhaseResult classical_pulsed_phase(const System& s, const MomentumKick& kick, int n_kicks);

/// 2 k_f N_rt sum_i x(t_i), summed along the kick recurrence started from
/// `initial`. Free oscillation from a displaced start is superposed on the
/// origin-started polygon.
PhaseResult classical_pulsed_phase_from_trajectory(const System& s, const MomentumKick& kick, int n_kicks,
                                                   const ClassicalPoint& initial = {});

struct PhaseOffset {
    double small_coupling = 0.0;   // (lambda^2 / 4) N cot(pi / N)
    double exact = 0.0;            // quantum phase minus classical phase at the given Np
};

PhaseOffset quantum_classical_offset(double lambda, int n_kicks, double n_photons);

struct ShotNoiseFloor {
    double floor = 0.0;        // 1 / sqrt(Np Nr)
    bool detectable = false;   // floor < lambda^2
};

ShotNoiseFloor shot_noise_phase_floor(double n_photons, long n_repeats, double lambda);

}  // namespace optophase

#endif  // OPTOPHASE_PULSED_HPP
