#include "optophase/params.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace optophase {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be positive and finite (got " << v << ")";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

void PhysicalConstants::validate() const
{
    require_positive(hbar, "hbar");
    require_positive(k_boltzmann, "k_boltzmann");
    require_positive(c_light, "c_light");
}

DerivedCouplings derive_couplings(const SystemParams& p, const PhysicalConstants& c)
{
    c.validate();
    require_positive(p.omega_m, "omega_m");
    require_positive(p.mass, "mass");
    require_positive(p.length, "length");
    require_positive(p.omega_f, "omega_f");

    DerivedCouplings d;
    d.roundtrip_time = 2.0 * p.length / c.c_light;
    if (p.kappa && p.n_roundtrips) {
        require_positive(*p.kappa, "kappa");
        if (*p.n_roundtrips <= 0)
            throw std::invalid_argument("n_roundtrips must be a positive integer");
        const double implied = 1.0 / (d.roundtrip_time * static_cast<double>(*p.n_roundtrips));
        const double mismatch = std::abs(*p.kappa - implied) / implied;
        if (mismatch > kKappaConsistencyTolerance) {
            std::ostringstream os;
            os << "kappa = " << *p.kappa << " is inconsistent with n_roundtrips = " << *p.n_roundtrips
               << " (c / (2 L N_rt) = " << implied << ", relative mismatch " << mismatch << ")";
            throw std::invalid_argument(os.str());
        }
        d.kappa = *p.kappa;
        d.n_roundtrips = static_cast<double>(*p.n_roundtrips);
    } else if (p.kappa) {
        require_positive(*p.kappa, "kappa");
        d.kappa = *p.kappa;
        d.n_roundtrips = 1.0 / (d.roundtrip_time * d.kappa);
    } else if (p.n_roundtrips) {
        if (*p.n_roundtrips <= 0)
            throw std::invalid_argument("n_roundtrips must be a positive integer");
        d.n_roundtrips = static_cast<double>(*p.n_roundtrips);
        d.kappa = 1.0 / (d.roundtrip_time * d.n_roundtrips);
    } else {
        throw std::invalid_argument("one of kappa or n_roundtrips is required");
    }

    d.x_zpf = std::sqrt(c.hbar / (p.mass * p.omega_m));
    d.g0 = p.omega_f * d.x_zpf / p.length;
    d.lambda = d.g0 / d.kappa;
    d.k = d.g0 / (std::numbers::sqrt2 * p.omega_m);
    d.tau = 2.0 * std::numbers::pi / p.omega_m;
    d.k_f = p.omega_f / c.c_light;
    d.chi = p.omega_f / (p.omega_m * p.omega_m * p.length * std::sqrt(p.mass));
    return d;
}

System::System(SystemParams params, PhysicalConstants constants)
    : params_(params), constants_(constants), couplings_(derive_couplings(params_, constants_))
{
    if (couplings_.kappa < 10.0 * params_.omega_m) {
        std::ostringstream os;
        os << "bad-cavity limit kappa >> omega_m not met (kappa / omega_m = "
           << couplings_.kappa / params_.omega_m << ")";
        warnings_.push_back(os.str());
    }
}

double System::field_energy(double n_photons) const
{
    return constants_.hbar * params_.omega_f * n_photons;
}

double System::drive_force(double n_photons) const
{
    return field_energy(n_photons) / params_.length;
}

double reduced_inverse_temperature(double temperature, double omega_m, const PhysicalConstants& c)
{
    if (temperature < 0.0 || std::isnan(temperature))
        throw std::invalid_argument("temperature must be non-negative");
    require_positive(omega_m, "omega_m");
    if (temperature == 0.0)
        return std::numeric_limits<double>::infinity();
    return c.hbar * omega_m / (c.k_boltzmann * temperature);
}

double thermal_occupation(double temperature, double omega_m, const PhysicalConstants& c)
{
    const double x = reduced_inverse_temperature(temperature, omega_m, c);
    if (std::isinf(x))
        return 0.0;
    if (x < kThermalSeriesThreshold)
        return 1.0 / x - 0.5;
    return 1.0 / std::expm1(x);
}

FieldState FieldState::from_photons(double n_photons)
{
    if (n_photons < 0.0)
        throw std::invalid_argument("photon number must be non-negative");
    return {std::complex<double>(std::sqrt(n_photons), 0.0)};
}

ClassicalPoint to_classical(const QuantumCoherent& q, const System& s)
{
    const auto& p = s.params();
    const double hbar = s.constants().hbar;
    return {std::numbers::sqrt2 * q.gamma.real() * std::sqrt(hbar / (p.mass * p.omega_m)),
            std::numbers::sqrt2 * q.gamma.imag() * std::sqrt(hbar * p.mass * p.omega_m)};
}

QuantumCoherent to_quantum(const ClassicalPoint& c, const System& s)
{
    const auto& p = s.params();
    const double hbar = s.constants().hbar;
    return {{c.x0 / (std::numbers::sqrt2 * std::sqrt(hbar / (p.mass * p.omega_m))),
             c.p0 / (std::numbers::sqrt2 * std::sqrt(hbar * p.mass * p.omega_m))}};
}

SystemParams with_coupling_k(SystemParams p, const PhysicalConstants& c, double k)
{
    require_positive(k, "k");
    require_positive(p.omega_m, "omega_m");
    require_positive(p.mass, "mass");
    const double x_zpf = std::sqrt(c.hbar / (p.mass * p.omega_m));
    p.omega_f = std::numbers::sqrt2 * k * p.omega_m * p.length / x_zpf;
    return p;
}

SystemParams with_lambda(SystemParams p, const PhysicalConstants& c, double lambda)
{
    require_positive(lambda, "lambda");
    // lambda = 2 k_f N_rt x_zpf with k_f = omega_f / c.
    SystemParams probe = p;
    probe.omega_f = 1.0;
    const DerivedCouplings d = derive_couplings(probe, c);
    p.omega_f = lambda / d.lambda;
    return p;
}

SystemParams figure2_params()
{
    SystemParams p;
    p.omega_m = 2.0 * std::numbers::pi * 1e5;
    p.mass = 1e-11;
    p.length = 1e-2;
    p.n_roundtrips = 100;
    return with_coupling_k(p, PhysicalConstants::si(), 1e-2);
}

}  // namespace optophase
