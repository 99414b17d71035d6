#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "optophase/config.hpp"
#include "optophase/params.hpp"

using namespace optophase;

namespace {

SystemParams base()
{
    SystemParams p;
    p.omega_m = 2.0 * std::numbers::pi * 1e5;
    p.mass = 1e-11;
    p.length = 1e-2;
    p.omega_f = 2.0 * std::numbers::pi * 3e14;
    p.n_roundtrips = 100;
    return p;
}

}  // namespace

TEST_CASE("derived couplings follow their definitions")
{
    const auto c = PhysicalConstants::si();
    const SystemParams p = base();
    const DerivedCouplings d = derive_couplings(p, c);
    const double x0 = std::sqrt(c.hbar / (p.mass * p.omega_m));
    CHECK(d.x_zpf == doctest::Approx(x0).epsilon(1e-15));
    CHECK(d.g0 == doctest::Approx(p.omega_f * x0 / p.length).epsilon(1e-15));
    CHECK(d.kappa == doctest::Approx(c.c_light / (2.0 * p.length * 100)).epsilon(1e-15));
    CHECK(d.lambda == doctest::Approx(d.g0 / d.kappa).epsilon(1e-14));
    CHECK(d.k == doctest::Approx(d.g0 / (std::numbers::sqrt2 * p.omega_m)).epsilon(1e-14));
    CHECK(d.tau == doctest::Approx(1e-5).epsilon(1e-15));
    // lambda = 2 k_f N_rt x0
    CHECK(d.lambda == doctest::Approx(2.0 * d.k_f * 100 * x0).epsilon(1e-13));
    // k = chi sqrt(hbar omega / 2)
    CHECK(d.k == doctest::Approx(d.chi * std::sqrt(c.hbar * p.omega_m / 2.0)).epsilon(1e-13));
}

TEST_CASE("kappa and round trips must agree and at least one is needed")
{
    const auto c = PhysicalConstants::si();
    SystemParams p = base();
    p.kappa = c.c_light / (2.0 * p.length * 100);
    CHECK_NOTHROW(derive_couplings(p, c));
    p.kappa = *p.kappa * 1.01;
    CHECK_THROWS_AS(derive_couplings(p, c), std::invalid_argument);
    p.kappa.reset();
    p.n_roundtrips.reset();
    CHECK_THROWS_AS(derive_couplings(p, c), std::invalid_argument);
    p.kappa = 1e7;
    CHECK(derive_couplings(p, c).n_roundtrips == doctest::Approx(c.c_light / (2.0 * p.length * 1e7)));
}

TEST_CASE("invalid parameters are rejected")
{
    const auto c = PhysicalConstants::si();
    for (double SystemParams::*field : {&SystemParams::omega_m, &SystemParams::mass, &SystemParams::length,
                                         &SystemParams::omega_f}) {
        SystemParams p = base();
        p.*field = 0.0;
        CHECK_THROWS_AS(derive_couplings(p, c), std::invalid_argument);
        p.*field = -1.0;
        CHECK_THROWS_AS(derive_couplings(p, c), std::invalid_argument);
    }
}

TEST_CASE("figure parameters give k = 1e-2 and tau = 1e-5 s")
{
    const System s(figure2_params());
    CHECK(s.k() == doctest::Approx(1e-2).epsilon(1e-13));
    CHECK(s.tau() == doctest::Approx(1e-5).epsilon(1e-14));
}

TEST_CASE("coupling setters hit their targets")
{
    const auto c = PhysicalConstants::si();
    CHECK(System(with_coupling_k(base(), c, 0.1), c).k() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(System(with_lambda(base(), c, 0.03), c).lambda() == doctest::Approx(0.03).epsilon(1e-14));
}

TEST_CASE("thermal occupation limits")
{
    const auto c = PhysicalConstants::si();
    const double w = 2.0 * std::numbers::pi * 1e5;
    CHECK(thermal_occupation(0.0, w, c) == 0.0);
    CHECK(std::isinf(reduced_inverse_temperature(0.0, w, c)));
    CHECK(thermal_occupation(1e-2, w, c) == doctest::Approx(2083.161953603149).epsilon(1e-12));
    // High temperature: n_bar -> k_B T / (hbar omega) - 1/2
    const double T = 1e6;
    const double x = reduced_inverse_temperature(T, w, c);
    CHECK(x < kThermalSeriesThreshold);
    CHECK(thermal_occupation(T, w, c) == doctest::Approx(1.0 / x - 0.5).epsilon(1e-15));
    // Continuity across the series threshold
    const double T_edge = c.hbar * w / (c.k_boltzmann * kThermalSeriesThreshold);
    CHECK(thermal_occupation(T_edge * (1 + 1e-9), w, c) ==
          doctest::Approx(thermal_occupation(T_edge * (1 - 1e-9), w, c)).epsilon(1e-8));
    CHECK_THROWS_AS(thermal_occupation(-1.0, w, c), std::invalid_argument);
}

TEST_CASE("coherent and classical mirror labels convert both ways")
{
    const System s(figure2_params());
    const QuantumCoherent q{{1.5, -0.25}};
    const ClassicalPoint p = to_classical(q, s);
    CHECK(p.x0 == doctest::Approx(std::numbers::sqrt2 * 1.5 * s.couplings().x_zpf));
    const QuantumCoherent back = to_quantum(p, s);
    CHECK(back.gamma.real() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(back.gamma.imag() == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("field energy and drive force")
{
    const System s(figure2_params());
    const double e0 = s.field_energy(1e5);
    CHECK(e0 == doctest::Approx(s.constants().hbar * s.params().omega_f * 1e5));
    CHECK(s.drive_force(1e5) == doctest::Approx(e0 / s.params().length));
    CHECK(FieldState::from_photons(25.0).n_photons() == doctest::Approx(25.0));
}

TEST_CASE("bad-cavity warning")
{
    SystemParams p = base();
    p.n_roundtrips.reset();
    p.kappa = p.omega_m;   // far below 10 omega
    const System s(p);
    CHECK_FALSE(s.warnings().empty());
}

TEST_CASE("config file parsing")
{
    std::istringstream good(R"(# mirror
omega_m = 628318.5307179586
mass = 1e-11     # kg
length = 0.01
coupling_k = 0.01
n_roundtrips = 100
)");
    const SystemConfig cfg = parse_system_config(good);
    CHECK(System(cfg.params, cfg.constants).k() == doctest::Approx(0.01).epsilon(1e-13));

    auto parse = [](const char* text) {
        std::istringstream in(text);
        return parse_system_config(in);
    };
    CHECK_THROWS_AS(parse("omega_m = 1\nmass = 1\nlength = 1\nomega_f = 1\nn_roundtrips = 1\nbogus = 2\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse("omega_m = 1\nomega_m = 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("omega_m = fast\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("omega_m = 1\nmass = 1\nlength = 1\nomega_f = 1\ncoupling_k = 1\nn_roundtrips = 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse("omega_m = 1\nmass = 1\nlength = 1\nomega_f = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("omega_m = 1\nmass = 1\nlength = 1\nomega_f = 1\nn_roundtrips = 2.5\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(load_system_config("/nonexistent/system.cfg"), std::invalid_argument);
}
