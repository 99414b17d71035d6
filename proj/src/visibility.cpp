#include "optophase/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "optophase/continuous.hpp"

namespace optophase {

namespace {

double one_minus_cos(double a)
{
    const double h = std::sin(0.5 * a);
    return 2.0 * h * h;
}

void require_non_negative(double v, const char* what)
{
    if (!(v >= 0.0)) {
        std::ostringstream os;
        os << what << " must be non-negative (got " << v << ")";
        throw std::invalid_argument(os.str());
    }
}

double log_poisson(double n_photons, double n)
{
    if (n_photons == 0.0)
        return n == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return -n_photons + n * std::log(n_photons) - std::lgamma(n + 1.0);
}

// Poisson mass strictly above `cutoff`.
double poisson_tail(double n_photons, std::size_t cutoff)
{
    if (n_photons == 0.0)
        return 0.0;
    double tail = 0.0;
    const double stop = std::max(static_cast<double>(cutoff), n_photons) + 40.0 * std::sqrt(n_photons) + 200.0;
    for (double n = static_cast<double>(cutoff) + 1.0; n <= stop; n += 1.0) {
        const double term = std::exp(log_poisson(n_photons, n));
        tail += term;
        if (n > n_photons && term < 1e-30 * std::max(tail, 1e-300))
            break;
    }
    return tail;
}

// Envelope exponent and phase of <a>/alpha for a coherent field and thermal mirror.
struct MeanFieldClosedForm {
    double log_envelope;
    double phase;
};

MeanFieldClosedForm mean_field_closed_form(double k, double n_bar, double n_photons, double omega_t)
{
    const double s = loop_area_angle(omega_t);
    const double kerr = 2.0 * k * k * s;
    return {-(k * k * one_minus_cos(omega_t) * (2.0 * n_bar + 1.0) + n_photons * one_minus_cos(kerr)),
            k * k * s + n_photons * std::sin(kerr)};
}

}  // namespace

std::string_view to_string(VisibilityPicture p)
{
    switch (p) {
    case VisibilityPicture::quantum: return "quantum";
    case VisibilityPicture::classical: return "classical";
    case VisibilityPicture::classical_noisy: return "classical_noisy";
    }
    return "unknown";
}

VisibilitySample quantum_visibility(double k, double n_bar, double n_photons, double omega_t)
{
    require_non_negative(omega_t, "omega_t");
    require_non_negative(n_bar, "n_bar");
    VisibilitySample v;
    v.omega_t = omega_t;
    v.picture = VisibilityPicture::quantum;
    v.nu_cor = std::exp(-k * k * one_minus_cos(omega_t) * (2.0 * n_bar + 1.0));
    v.nu_kerr = std::exp(-n_photons * one_minus_cos(2.0 * k * k * loop_area_angle(omega_t)));
    v.nu_total = v.nu_cor * v.nu_kerr;
    return v;
}

std::size_t default_fock_cutoff(double n_photons)
{
    require_non_negative(n_photons, "photon number");
    return static_cast<std::size_t>(std::ceil(n_photons + 10.0 * std::sqrt(n_photons) + 20.0));
}

std::size_t required_fock_cutoff(double n_photons, double tail)
{
    require_non_negative(n_photons, "photon number");
    if (n_photons == 0.0)
        return 0;
    // Walk down from a cutoff that is certainly large enough.
    auto cutoff = static_cast<std::size_t>(std::ceil(n_photons + 20.0 * std::sqrt(n_photons) + 60.0));
    double acc = poisson_tail(n_photons, cutoff);
    while (cutoff > 0) {
        const double next = acc + std::exp(log_poisson(n_photons, static_cast<double>(cutoff)));
        if (next >= tail)
            break;
        acc = next;
        --cutoff;
    }
    return cutoff;
}

std::complex<double> ReducedFieldMatrix::mean_field() const
{
    std::complex<double> sum = 0.0;
    for (Eigen::Index n = 0; n + 1 < rho.rows(); ++n)
        sum += std::sqrt(static_cast<double>(n + 1)) * rho(n + 1, n);
    return sum;
}

ReducedFieldMatrix reduced_field_density_matrix(std::complex<double> alpha, double k, double n_bar, double omega_t,
                                                std::optional<std::size_t> cutoff)
{
    require_non_negative(omega_t, "omega_t");
    require_non_negative(n_bar, "n_bar");
    const double np = std::norm(alpha);

    ReducedFieldMatrix out;
    out.alpha = alpha;
    out.k = k;
    out.n_bar = n_bar;
    out.omega_t = omega_t;
    out.cutoff = cutoff.value_or(default_fock_cutoff(np));
    if (static_cast<double>(out.cutoff) < np + 10.0 * std::sqrt(np)) {
        std::ostringstream os;
        os << "cutoff " << out.cutoff << " below Np + 10 sqrt(Np); raised to " << default_fock_cutoff(np);
        out.warnings.push_back(os.str());
        out.cutoff = default_fock_cutoff(np);
    }
    const double tail = poisson_tail(np, out.cutoff);
    if (tail > 1e-10) {
        const std::size_t need = required_fock_cutoff(np);
        std::ostringstream os;
        os << "cutoff " << out.cutoff << " loses " << tail << " of the trace; need cutoff >= " << need;
        throw CutoffError(os.str(), need);
    }

    const auto dim = static_cast<Eigen::Index>(out.cutoff) + 1;
    const double s = loop_area_angle(omega_t);
    const double damping = k * k * one_minus_cos(omega_t) * (2.0 * n_bar + 1.0);
    const double arg_alpha = std::arg(alpha);

    Eigen::VectorXd half_log(dim);
    for (Eigen::Index n = 0; n < dim; ++n)
        half_log[n] = 0.5 * log_poisson(np, static_cast<double>(n));

    out.rho.resize(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        const double dn = static_cast<double>(n);
        for (Eigen::Index m = 0; m <= n; ++m) {
            const double dm = static_cast<double>(m);
            const double diff = dn - dm;
            const double log_mod = half_log[n] + half_log[m] - damping * diff * diff;
            const double phase = diff * arg_alpha + k * k * (dn * dn - dm * dm) * s;
            const std::complex<double> v = std::isinf(log_mod) ? 0.0 : std::polar(std::exp(log_mod), phase);
            out.rho(n, m) = v;
            out.rho(m, n) = std::conj(v);
        }
    }
    return out;
}

DetectorIntensities quantum_detector_intensities(std::complex<double> alpha, double k, double n_bar,
                                                 double omega_t, double phi)
{
    require_non_negative(omega_t, "omega_t");
    require_non_negative(n_bar, "n_bar");
    // The reference arm carries the same alpha, so only <a>/alpha enters.
    const MeanFieldClosedForm mf = mean_field_closed_form(k, n_bar, std::norm(alpha), omega_t);
    const double fringe = std::exp(mf.log_envelope) * std::cos(mf.phase - phi);
    return {0.5 * (1.0 - fringe), 0.5 * (1.0 + fringe)};
}

DetectorIntensities intensities_from_matrix(const ReducedFieldMatrix& rho, double phi)
{
    if (rho.alpha == 0.0)
        throw std::invalid_argument("intensities need a non-vacuum probe field");
    const std::complex<double> normalized = rho.mean_field() / rho.alpha;
    const double fringe = (normalized * std::polar(1.0, -phi)).real();
    return {0.5 * (1.0 - fringe), 0.5 * (1.0 + fringe)};
}

namespace {

// Golden-section search for an extremum of f on [lo, hi]; sign = +1 for max.
double golden_extremum(const std::function<double(double)>& f, double lo, double hi, double sign)
{
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = sign * f(c);
    double fd = sign * f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = sign * f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = sign * f(d);
        }
    }
    return f(0.5 * (a + b));
}

}  // namespace

double visibility_from_intensities(const std::function<DetectorIntensities(double)>& intensities)
{
    constexpr int grid = 10000;
    const double step = 2.0 * std::numbers::pi / grid;
    const auto port_a = [&](double phi) { return intensities(phi).a; };

    int i_max = 0;
    int i_min = 0;
    double v_max = -std::numeric_limits<double>::infinity();
    double v_min = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double v = port_a(i * step);
        if (v > v_max) {
            v_max = v;
            i_max = i;
        }
        if (v < v_min) {
            v_min = v;
            i_min = i;
        }
    }
    const double i_hi = std::max(v_max, golden_extremum(port_a, (i_max - 1) * step, (i_max + 1) * step, 1.0));
    const double i_lo = std::min(v_min, golden_extremum(port_a, (i_min - 1) * step, (i_min + 1) * step, -1.0));
    return (i_hi - i_lo) / (i_hi + i_lo);
}

ThermalEnsembleSpec thermal_ensemble(double temperature, const PhysicalConstants& c)
{
    require_non_negative(temperature, "temperature");
    ThermalEnsembleSpec spec;
    spec.temperature = temperature;
    spec.beta = temperature == 0.0 ? std::numeric_limits<double>::infinity()
                                   : 1.0 / (c.k_boltzmann * temperature);
    spec.rho_scale = std::sqrt(c.k_boltzmann * temperature);
    return spec;
}

namespace {

// (omega / omega_f) chi^2 E0 (wt - sin wt): the intensity-dependent part of
// the classical phase, equal to 2 Np k^2 (wt - sin wt).
double classical_drive_phase(const System& s, double n_photons, double omega_t)
{
    const auto& p = s.params();
    const double chi = s.couplings().chi;
    return p.omega_m / p.omega_f * chi * chi * s.field_energy(n_photons) * loop_area_angle(omega_t);
}

// chi^2 / beta (1 - cos wt).
double thermal_dephasing(const System& s, double temperature, double omega_t)
{
    const double chi = s.couplings().chi;
    return chi * chi * s.constants().k_boltzmann * temperature * one_minus_cos(omega_t);
}

}  // namespace

double classical_phase_thermal(double rho, double theta, const System& s, double n_photons, double t)
{
    require_non_negative(rho, "rho");
    require_non_negative(t, "t");
    if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi))
        throw std::invalid_argument("theta must lie in [0, 2 pi)");
    const double wt = s.omega() * t;
    const double chi = s.couplings().chi;
    return std::numbers::sqrt2 * chi * rho * (std::cos(theta) * std::sin(wt) + std::sin(theta) * one_minus_cos(wt)) +
           classical_drive_phase(s, n_photons, wt);
}

VisibilitySample classical_visibility(const System& s, double temperature, double t)
{
    require_non_negative(temperature, "temperature");
    require_non_negative(t, "t");
    VisibilitySample v;
    v.omega_t = s.omega() * t;
    v.picture = VisibilityPicture::classical;
    v.nu_cor = std::exp(-thermal_dephasing(s, temperature, v.omega_t));
    v.nu_kerr = 1.0;
    v.nu_total = v.nu_cor;
    return v;
}

VisibilitySample noisy_classical_visibility(const System& s, double temperature, double n_photons, double delta_sq,
                                            double t)
{
    require_non_negative(delta_sq, "delta_sq");
    VisibilitySample v = classical_visibility(s, temperature, t);
    v.picture = VisibilityPicture::classical_noisy;
    const double drive = classical_drive_phase(s, n_photons, v.omega_t);
    v.nu_kerr = std::exp(-0.5 * drive * drive * delta_sq);
    v.nu_total = v.nu_cor * v.nu_kerr;
    return v;
}

DetectorIntensities averaged_classical_intensities(const System& s, double temperature, double n_photons,
                                                   double t, double phi, double delta_sq)
{
    const VisibilitySample v = noisy_classical_visibility(s, temperature, n_photons, delta_sq, t);
    const double fringe = v.nu_total * std::cos(classical_drive_phase(s, n_photons, v.omega_t) - phi);
    return {0.5 * (1.0 - fringe), 0.5 * (1.0 + fringe)};
}

}  // namespace optophase
