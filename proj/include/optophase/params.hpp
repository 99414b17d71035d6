#ifndef OPTOPHASE_PARAMS_HPP
#define OPTOPHASE_PARAMS_HPP

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace optophase {

/// Physical constants in SI units. `nondimensional()` sets all three to 1 for
/// oracle tests that work in units of hbar = m = omega = 1.
struct PhysicalConstants {
    double hbar = 1.054571817e-34;       // J s
    double k_boltzmann = 1.380649e-23;   // J / K
    double c_light = 299792458.0;        // m / s

    static PhysicalConstants si() { return {}; }
    static PhysicalConstants nondimensional() { return {1.0, 1.0, 1.0}; }

    void validate() const;
};

/// Raw cavity and mirror parameters. Exactly one of `kappa` and
/// `n_roundtrips` is needed; when both are given they must satisfy
/// kappa = c / (2 L N_rt).
struct SystemParams {
    double omega_m = 0.0;   // mechanical angular frequency, rad/s
    double mass = 0.0;      // mirror mass, kg
    double length = 0.0;    // mean cavity length, m
    double omega_f = 0.0;   // optical angular frequency, rad/s
    std::optional<double> kappa;        // cavity amplitude decay rate, rad/s
    std::optional<long> n_roundtrips;   // round trips per kick
};

struct DerivedCouplings {
    double x_zpf = 0.0;          // sqrt(hbar / (m omega)), m
    double g0 = 0.0;             // omega_f x_zpf / L, rad/s
    double lambda = 0.0;         // g0 / kappa
    double k = 0.0;              // g0 / (sqrt(2) omega)
    double tau = 0.0;            // 2 pi / omega, s
    double k_f = 0.0;            // omega_f / c, 1/m
    double chi = 0.0;            // omega_f / (omega^2 L sqrt(m)), 1/sqrt(J)
    double kappa = 0.0;          // rad/s, given or derived
    double n_roundtrips = 0.0;   // given or derived (may be non-integer)
    double roundtrip_time = 0.0; // 2 L / c, s
};

/// Relative mismatch tolerated between a supplied kappa and n_roundtrips.
inline constexpr double kKappaConsistencyTolerance = 1e-9;
/// Below this value of beta*hbar*omega the thermal occupation uses its series.
inline constexpr double kThermalSeriesThreshold = 1e-8;

DerivedCouplings derive_couplings(const SystemParams& p, const PhysicalConstants& c);

/// Validated parameter bundle. Immutable after construction.
class System {
public:
    explicit System(SystemParams params, PhysicalConstants constants = PhysicalConstants::si());

    const SystemParams& params() const { return params_; }
    const PhysicalConstants& constants() const { return constants_; }
    const DerivedCouplings& couplings() const { return couplings_; }
    /// Advisory notes produced during validation (e.g. bad-cavity limit not met).
    const std::vector<std::string>& warnings() const { return warnings_; }

    double omega() const { return params_.omega_m; }
    double tau() const { return couplings_.tau; }
    double k() const { return couplings_.k; }
    double lambda() const { return couplings_.lambda; }

    /// Field energy E0 = hbar omega_f Np.
    double field_energy(double n_photons) const;
    /// Constant radiation-pressure force E0 / L.
    double drive_force(double n_photons) const;

private:
    SystemParams params_;
    PhysicalConstants constants_;
    DerivedCouplings couplings_;
    std::vector<std::string> warnings_;
};

/// Mean thermal occupation 1 / (exp(beta hbar omega) - 1).
double thermal_occupation(double temperature, double omega_m, const PhysicalConstants& c);
/// beta hbar omega; +inf at T = 0.
double reduced_inverse_temperature(double temperature, double omega_m, const PhysicalConstants& c);

struct FieldState {
    std::complex<double> alpha;

    static FieldState from_photons(double n_photons);
    double n_photons() const { return std::norm(alpha); }
    double energy(const System& s) const { return s.field_energy(n_photons()); }
};

struct QuantumCoherent {
    std::complex<double> gamma;
};

struct ClassicalPoint {
    double x0 = 0.0;   // m
    double p0 = 0.0;   // kg m/s
};

struct Thermal {
    double temperature = 0.0;   // K
};

using MirrorState = std::variant<QuantumCoherent, ClassicalPoint, Thermal>;

/// x0 = sqrt(2) Re(gamma) sqrt(hbar/(m omega)), p0 = sqrt(2) Im(gamma) sqrt(hbar m omega).
ClassicalPoint to_classical(const QuantumCoherent& q, const System& s);
QuantumCoherent to_quantum(const ClassicalPoint& c, const System& s);

/// Returns a copy of `p` with omega_f chosen so that k = g0 / (sqrt(2) omega) equals `k`.
SystemParams with_coupling_k(SystemParams p, const PhysicalConstants& c, double k);
/// Returns a copy of `p` with omega_f chosen so that lambda = g0 / kappa equals `lambda`.
SystemParams with_lambda(SystemParams p, const PhysicalConstants& c, double lambda);

/// Mirror and cavity used for the interferometer figures: tau = 1e-5 s, k = 1e-2.
SystemParams figure2_params();

}  // namespace optophase

#endif  // OPTOPHASE_PARAMS_HPP
