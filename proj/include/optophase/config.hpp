#ifndef OPTOPHASE_CONFIG_HPP
#define OPTOPHASE_CONFIG_HPP

#include <iosfwd>
#include <string>

#include "optophase/params.hpp"

namespace optophase {

/// System description read from a `key = value` file. Recognised keys:
///
///   omega_m       mechanical angular frequency [rad/s]
///   mass          mirror mass [kg]
///   length        mean cavity length [m]
///   omega_f       optical angular frequency [rad/s]
///   coupling_k    alternative to omega_f: k = g0 / (sqrt(2) omega_m)
///   kappa         cavity amplitude decay rate [rad/s]       (optional)
///   n_roundtrips  round trips per kick                       (optional)
///   hbar, k_boltzmann, c_light   constant overrides [SI]     (optional)
///
/// `#` starts a comment. Unknown keys, repeated keys and malformed numbers
/// are errors.
struct SystemConfig {
    SystemParams params;
    PhysicalConstants constants;
};

SystemConfig parse_system_config(std::istream& in);
SystemConfig load_system_config(const std::string& path);

}  // namespace optophase

#endif  // OPTOPHASE_CONFIG_HPP
