#include <doctest.h>

#include <cmath>
#include <numbers>

#include "optophase/oracles.hpp"
#include "optophase/pulsed.hpp"
#include "optophase/visibility.hpp"

using namespace optophase;

TEST_CASE("four-pulse mean field anchor")
{
    const PhaseResult r = quantum_pulsed_mean_field(PolygonLoop{4, 0.1, 100.0});
    CHECK(r.phase == doctest::Approx(2.0098666693333079).epsilon(1e-13));
    CHECK(r.modulus_factor == doctest::Approx(0.98019932676404251).epsilon(1e-13));
    CHECK(r.picture == Picture::quantum);
}

TEST_CASE("vacuum-limit phase is lambda squared")
{
    for (double lambda : {1e-3, 1e-2, 1e-1}) {
        const PhaseResult r = quantum_pulsed_mean_field(PolygonLoop{4, lambda, 0.0});
        // cot(pi/4) evaluates to 1 + 2^-52 in double precision
        CHECK(std::abs(r.phase - lambda * lambda) <= 4.0 * std::numeric_limits<double>::epsilon() * lambda * lambda);
        CHECK(r.modulus_factor == 1.0);
    }
}

TEST_CASE("polygon area coefficient")
{
    CHECK(polygon_area_coefficient(0.2, 4) == doctest::Approx(0.04).epsilon(1e-14));
    CHECK(polygon_area_coefficient(0.2, 3) == doctest::Approx(0.01 * 3 / std::sqrt(3.0)).epsilon(1e-14));
    // Large N approaches the circle: (lambda^2/4) N^2 / pi
    const int n = 100000;
    CHECK(polygon_area_coefficient(1.0 / n, n) == doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-9));
}

TEST_CASE("closed form matches the Fock-sum oracle")
{
    for (int n : {3, 4, 7}) {
        for (double np : {0.0, 3.0, 50.0}) {
            const PhaseResult r = quantum_pulsed_mean_field(PolygonLoop{n, 0.05, np});
            const auto o = oracles::fock_sum_mean_field(oracles::polygon_fock_spec(0.05, n, np, default_fock_cutoff(np)),
                                                        std::sqrt(np));
            CHECK(r.phase == doctest::Approx(o.phase).epsilon(1e-12));
            CHECK(r.modulus_factor == doctest::Approx(o.modulus_factor).epsilon(1e-12));
        }
    }
}

TEST_CASE("invalid loops are rejected")
{
    CHECK_THROWS_AS(quantum_pulsed_mean_field(PolygonLoop{2, 0.1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(quantum_pulsed_mean_field(PolygonLoop{4, 0.1, -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(classical_kick_trajectory(1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(classical_kick_trajectory(-1.0, 4), std::invalid_argument);
}

TEST_CASE("kick recurrence sums to the polygon closed form")
{
    for (int n = 3; n <= 64; ++n) {
        const KickTrajectory t = classical_kick_trajectory(2.5, n);
        const double expected = 0.5 * 2.5 * n / std::tan(std::numbers::pi / n);
        CHECK(t.position_sum() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(t.closure_radius() <= 1e-12 * 2.5);
        CHECK(t.n_kicks() == n);
    }
    // Square: positions 0, zeta, zeta, 0 with the sine convention
    const KickTrajectory sq = classical_kick_trajectory(1.0, 4);
    CHECK(sq.points[1].radius == doctest::Approx(1.0));
    CHECK(sq.points[2].radius == doctest::Approx(std::numbers::sqrt2));
}

TEST_CASE("classical phase: closed form, trajectory sum and 2 Np c")
{
    const System base(figure2_params());
    const System s(with_lambda(base.params(), base.constants(), 0.1));
    const MomentumKick kick = MomentumKick::from_photons(s, 100.0);
    CHECK(kick.impulse == doctest::Approx(2.0 * s.couplings().n_roundtrips * s.field_energy(100.0) /
                                          s.constants().c_light));
    const double closed = classical_pulsed_phase(s, kick, 4).phase;
    CHECK(closed == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(classical_pulsed_phase_from_trajectory(s, kick, 4).phase == doctest::Approx(closed).epsilon(1e-12));
    for (int n : {3, 5, 9})
        CHECK(classical_pulsed_phase(s, kick, n).phase ==
              doctest::Approx(2.0 * 100.0 * polygon_area_coefficient(0.1, n)).epsilon(1e-12));
    CHECK(classical_pulsed_phase(s, MomentumKick::from_photons(s, 0.0), 4).phase == 0.0);
}

TEST_CASE("a displaced start adds only free oscillation, which sums to zero")
{
    const System s(with_lambda(figure2_params(), PhysicalConstants::si(), 0.1));
    const MomentumKick kick = MomentumKick::from_photons(s, 10.0);
    const ClassicalPoint start{3e-15, -2e-19};
    for (int n : {3, 4, 6})
        CHECK(classical_pulsed_phase_from_trajectory(s, kick, n, start).phase ==
              doctest::Approx(classical_pulsed_phase(s, kick, n).phase).epsilon(1e-10));
}

TEST_CASE("quantum-classical offset")
{
    const PhaseOffset off = quantum_classical_offset(0.1, 4, 100.0);
    CHECK(off.small_coupling == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(off.exact == doctest::Approx(2.0098666693333079 - 2.0).epsilon(1e-10));
    const PhaseOffset vac = quantum_classical_offset(0.01, 4, 0.0);
    CHECK(vac.exact == doctest::Approx(vac.small_coupling).epsilon(1e-14));
}

TEST_CASE("shot-noise floor")
{
    const ShotNoiseFloor f = shot_noise_phase_floor(1e6, 100, 0.1);
    CHECK(f.floor == doctest::Approx(1e-4));
    CHECK(f.detectable);
    CHECK_FALSE(shot_noise_phase_floor(1.0, 1, 0.1).detectable);
    CHECK(shot_noise_phase_floor(4.0, 1, 0.5).floor == 0.5);
    CHECK_FALSE(shot_noise_phase_floor(16.0, 1, 0.5).detectable);   // floor == lambda^2 exactly
    CHECK_THROWS_AS(shot_noise_phase_floor(0.0, 1, 0.1), std::invalid_argument);
}

TEST_CASE("principal value")
{
    CHECK(principal_value(3.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(principal_value(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(principal_value(0.5) == 0.5);
}
