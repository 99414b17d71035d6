#ifndef OPTOPHASE_VISIBILITY_HPP
#define OPTOPHASE_VISIBILITY_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "optophase/params.hpp"

namespace optophase {

enum class VisibilityPicture { quantum, classical, classical_noisy };

std::string_view to_string(VisibilityPicture p);

/// Fringe contrast at one instant. In the quantum picture
/// nu_total = nu_cor * nu_kerr; classical pictures carry everything in
/// nu_cor and keep nu_kerr = 1 unless field noise is modelled.
struct VisibilitySample {
    double omega_t = 0.0;
    double nu_cor = 1.0;
    double nu_kerr = 1.0;
    double nu_total = 1.0;
    VisibilityPicture picture = VisibilityPicture::quantum;
};

VisibilitySample quantum_visibility(double k, double n_bar, double n_photons, double omega_t);

/// Thrown when a Fock cutoff cannot hold the requested Poisson mass.
class CutoffError : public std::runtime_error {
public:
    CutoffError(const std::string& what, std::size_t required)
        : std::runtime_error(what), required_cutoff_(required)
    {
    }
    std::size_t required_cutoff() const { return required_cutoff_; }

private:
    std::size_t required_cutoff_;
};

/// ceil(Np + 10 sqrt(Np) + 20).
std::size_t default_fock_cutoff(double n_photons);
/// Smallest cutoff whose Poisson(Np) tail beyond it is below `tail`.
std::size_t required_fock_cutoff(double n_photons, double tail = 1e-10);

/// Field density matrix after tracing out a thermal mirror.
struct ReducedFieldMatrix {
    std::size_t cutoff = 0;
    Eigen::MatrixXcd rho;
    std::complex<double> alpha;
    double k = 0.0;
    double n_bar = 0.0;
    double omega_t = 0.0;
    std::vector<std::string> warnings;

    double trace() const { return rho.trace().real(); }
    /// Tr[a rho] = sum_n sqrt(n + 1) rho(n + 1, n).
    std::complex<double> mean_field() const;
};

/// `cutoff` below Np + 10 sqrt(Np) is raised to default_fock_cutoff with a
/// warning; a cutoff that still loses more than 1e-10 of the trace throws
/// CutoffError.
ReducedFieldMatrix reduced_field_density_matrix(std::complex<double> alpha, double k, double n_bar, double omega_t,
                                                std::optional<std::size_t> cutoff = std::nullopt);

/// Port intensities in units of I0. Port a takes the minus branch, so at
/// t = 0 and phi = 0 all light exits through port b.
struct DetectorIntensities {
    double a = 0.0;
    double b = 0.0;
};

DetectorIntensities quantum_detector_intensities(std::complex<double> alpha, double k, double n_bar,
                                                 double omega_t, double phi);
/// The same projection evaluated from a reduced density matrix.
DetectorIntensities intensities_from_matrix(const ReducedFieldMatrix& rho, double phi);

/// (I_max - I_min) / (I_max + I_min) over the phase shifter, found on a
/// 10^4-point grid and refined by golden-section search.
double visibility_from_intensities(const std::function<DetectorIntensities(double)>& intensities);

struct ThermalEnsembleSpec {
    double temperature = 0.0;   // K
    double beta = 0.0;          // 1/J; +inf at T = 0
    double rho_scale = 0.0;     // sqrt(k_B T): rms of the energy amplitude
};

ThermalEnsembleSpec thermal_ensemble(double temperature, const PhysicalConstants& c);

/// Phase of the classical field for a mirror started at energy amplitude rho
/// and angle theta:
/// sqrt2 chi rho [cos th sin wt + sin th (1 - cos wt)] + (w / w_f) chi^2 E0 (wt - sin wt).
double classical_phase_thermal(double rho, double theta, const System& s, double n_photons, double t);

/// exp(-(chi^2 / beta) (1 - cos wt)); exactly 1 at T = 0.
VisibilitySample classical_visibility(const System& s, double temperature, double t);

/// classical_visibility times the Gaussian field-noise factor
/// exp(-2 Np^2 k^4 delta_sq (wt - sin wt)^2).
VisibilitySample noisy_classical_visibility(const System& s, double temperature, double n_photons, double delta_sq,
                                            double t);

/// Thermal (and optionally Gaussian-noise) averaged port intensities.
DetectorIntensities averaged_classical_intensities(const System& s, double temperature, double n_photons,
                                                   double t, double phi, double delta_sq = 0.0);

}  // namespace optophase

#endif  // OPTOPHASE_VISIBILITY_HPP
