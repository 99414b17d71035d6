#ifndef OPTOPHASE_PHASE_HPP
#define OPTOPHASE_PHASE_HPP

#include <string_view>

namespace optophase {

enum class Picture { quantum, classical, semiclassical_qfield, semiclassical_qmirror };

std::string_view to_string(Picture p);

/// Optical phase of the mean field after the interaction. `phase` is the
/// unwrapped analytic value; `modulus_factor` is |<a>| / |alpha|.
struct PhaseResult {
    double phase = 0.0;
    double modulus_factor = 1.0;
    Picture picture = Picture::quantum;

    double principal() const;
};

/// Reduces an angle to (-pi, pi].
double principal_value(double phase);

}  // namespace optophase

#endif  // OPTOPHASE_PHASE_HPP
