#include <doctest.h>

#include <cmath>
#include <numbers>

#include "optophase/continuous.hpp"
#include "optophase/oracles.hpp"
#include "optophase/visibility.hpp"

using namespace optophase;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

System fig2() { return System(figure2_params()); }

}  // namespace

TEST_CASE("closed-loop anchors at t = tau")
{
    const PhaseResult q = quantum_continuous_phase(0.0, 1e-2, 1e5, kTwoPi);
    CHECK(q.phase == doctest::Approx(125.66430138876327).epsilon(1e-13));
    const System s = fig2();
    const PhaseResult c = classical_continuous_phase({}, s.drive_force(1e5), s, s.tau());
    CHECK(c.phase == doctest::Approx(125.66370614359173).epsilon(1e-12));
    CHECK(q.phase - c.phase == doctest::Approx(5.9524517154e-4).epsilon(1e-6));
}

TEST_CASE("everything vanishes at t = 0")
{
    const System s = fig2();
    const ClassicalPoint start{1e-15, 2e-19};
    CHECK(quantum_continuous_phase({0.4, 0.2}, 0.01, 1e5, 0.0).phase == 0.0);
    CHECK(quantum_continuous_phase({0.4, 0.2}, 0.01, 1e5, 0.0).modulus_factor == 1.0);
    CHECK(classical_continuous_phase(start, s.drive_force(1e5), s, 0.0).phase == 0.0);
    CHECK(semiclassical_phase_quantum_mirror({0.4, 0.2}, 1e3, s, 0.0).phase == 0.0);
    ClassicalTrajectory single;
    single.t = Eigen::VectorXd::Zero(1);
    single.x = Eigen::VectorXd::Constant(1, start.x0);
    CHECK(semiclassical_phase_quantum_field(single, s).phase == 0.0);
    const auto degenerate = sample_classical_trajectory(start, s.drive_force(1e5), s, 0.0, 1);
    CHECK_THROWS_AS(semiclassical_phase_quantum_field(degenerate, s), std::invalid_argument);
}

TEST_CASE("loop area series joins the direct formula")
{
    for (double a : {1e-6, 1e-4, 9.99e-4}) {
        const double series = loop_area_angle(a);
        CHECK(series == doctest::Approx(a * a * a / 6.0 * (1.0 - a * a / 20.0)).epsilon(1e-14));
    }
    CHECK(loop_area_angle(1.001e-3) == doctest::Approx(loop_area_angle(0.999e-3) * std::pow(1.001 / 0.999, 3))
                                           .epsilon(1e-6));
    CHECK(loop_area_angle(kTwoPi) == doctest::Approx(kTwoPi));
}

TEST_CASE("quantum continuous phase vs Fock-sum oracle at random labels")
{
    for (auto [g, k, np, wt] : {std::tuple{std::complex<double>(0.7, 0.1), 0.03, 80.0, 1.1},
                               std::tuple{std::complex<double>(-0.2, 1.3), 0.08, 20.0, 4.4},
                               std::tuple{std::complex<double>(0.0, -0.6), 0.01, 1000.0, 7.0}}) {
        const PhaseResult r = quantum_continuous_phase(g, k, np, wt);
        const auto o = oracles::fock_sum_mean_field(
            oracles::coherent_mirror_fock_spec(g, k, np, wt, default_fock_cutoff(np)), std::sqrt(np));
        CHECK(r.phase == doctest::Approx(o.phase).epsilon(1e-11));
        CHECK(r.modulus_factor == doctest::Approx(o.modulus_factor).epsilon(1e-11));
    }
}

TEST_CASE("classical motion solves the driven oscillator")
{
    const System s = fig2();
    const double drive = s.drive_force(1e5);
    const ClassicalPoint start{2e-15, -1e-19};
    const double h = s.tau() * 1e-4;
    for (double f : {0.1, 0.6, 1.3}) {
        const double t = f * s.tau();
        const auto a = classical_motion(start, drive, s, t - h);
        const auto b = classical_motion(start, drive, s, t + h);
        const auto m = classical_motion(start, drive, s, t);
        const double m_acc = s.params().mass * (b.p - a.p) / (2 * h) / s.params().mass;
        const double force = -s.params().mass * s.omega() * s.omega() * m.x + drive;
        CHECK(s.params().mass * m_acc == doctest::Approx(force).epsilon(1e-6));
        CHECK(m.p == doctest::Approx(s.params().mass * (b.x - a.x) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("quantum mean motion matches the classical trajectory in zero-point units")
{
    const System s = fig2();
    const std::complex<double> g(0.6, -1.2);
    const double np = 1e5;
    const ClassicalPoint start = to_classical(QuantumCoherent{g}, s);
    const double x_unit = s.couplings().x_zpf;
    const double p_unit = s.constants().hbar / x_unit;
    for (double f : {0.2, 0.5, 1.0, 1.7}) {
        const double t = f * s.tau();
        const auto q = quantum_mean_motion(g, s.k(), np, s.omega() * t);
        const auto c = classical_motion(start, s.drive_force(np), s, t);
        CHECK(q.x * x_unit == doctest::Approx(c.x).epsilon(1e-10));
        CHECK(q.p * p_unit == doctest::Approx(c.p).epsilon(1e-10));
    }
}

TEST_CASE("semiclassical pictures agree with the classical phase")
{
    const System s = fig2();
    const std::complex<double> g(1.0, 2.0);
    const ClassicalPoint start = to_classical(QuantumCoherent{g}, s);
    const double drive = s.drive_force(1e5);
    for (double f : {0.3, 1.0, 1.5}) {
        const double t = f * s.tau();
        const double c = classical_continuous_phase(start, drive, s, t).phase;
        const auto traj = sample_classical_trajectory(start, drive, s, t, 512);
        CHECK(semiclassical_phase_quantum_field(traj, s).phase == doctest::Approx(c).epsilon(1e-11));
        CHECK(semiclassical_phase_quantum_mirror(g, s.k() * 1e5, s, t).phase == doctest::Approx(c).epsilon(1e-11));
    }
}

TEST_CASE("undersampled trajectories are rejected")
{
    const System s = fig2();
    const auto coarse = sample_classical_trajectory({}, 1.0, s, s.tau(), 16);
    CHECK_THROWS_AS(semiclassical_phase_quantum_field(coarse, s), std::invalid_argument);
    const auto fine = sample_classical_trajectory({}, 1.0, s, s.tau(), 32);
    CHECK_NOTHROW(semiclassical_phase_quantum_field(fine, s));
}

TEST_CASE("Trotter approximant converges to the continuous phase")
{
    const double exact = quantum_continuous_phase(0.0, 1e-2, 1e5, kTwoPi).phase;
    double prev = 0.0;
    for (int n : {100, 1000, 10000}) {
        const double err = std::abs(trotter_pulsed_approximation(1e-2, 1e5, n).phase - exact);
        if (prev > 0.0)
            CHECK(prev / err == doctest::Approx(100.0).epsilon(0.01));
        prev = err;
    }
    CHECK(prev < 1e-4);
    CHECK_THROWS_AS(trotter_pulsed_approximation(1e-2, 1e5, 2), std::invalid_argument);
}

TEST_CASE("joint state snapshot")
{
    const JointStateSnapshot snap({3.0, 0.0}, {0.5, -0.5}, 0.05, 2.0, 60);
    CHECK(snap.truncated_norm() == doctest::Approx(1.0).epsilon(1e-12));
    const FockComponent c0 = snap.component(0);
    CHECK(std::abs(c0.poisson_amplitude) == doctest::Approx(std::exp(-4.5)));
    const FockComponent c2 = snap.component(2);
    const std::complex<double> rot = std::polar(1.0, -2.0);
    CHECK(std::abs(c2.mirror_label - (std::complex<double>(0.5, -0.5) * rot + 0.1 * (1.0 - rot))) < 1e-15);
    CHECK_THROWS_AS(JointStateSnapshot({1.0, 0.0}, {}, 0.1, -1.0, 5), std::invalid_argument);
}

TEST_CASE("negative times are rejected")
{
    const System s = fig2();
    CHECK_THROWS_AS(quantum_continuous_phase(0.0, 0.01, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(classical_continuous_phase({}, 1.0, s, -1e-9), std::invalid_argument);
    CHECK_THROWS_AS(semiclassical_phase_quantum_mirror(0.0, 1.0, s, -1e-9), std::invalid_argument);
}
