#ifndef OPTOPHASE_QUADRATURE_HPP
#define OPTOPHASE_QUADRATURE_HPP

#include <Eigen/Dense>

namespace optophase {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // |last Richardson level - previous level|
    int levels = 0;       // Richardson levels actually used
};

/// Integral of sampled y(t). Uniform grids get a Romberg table built from
/// trapezoid sums at strides 1, 2, 4, ... (up to `max_levels` halvings);
/// non-uniform grids fall back to the trapezoid rule with an error estimate
/// from the every-other-sample sum. Throws on non-increasing t.
QuadratureResult integrate_samples(const Eigen::Ref<const Eigen::VectorXd>& t,
                                   const Eigen::Ref<const Eigen::VectorXd>& y, int max_levels = 8);

}  // namespace optophase

#endif  // OPTOPHASE_QUADRATURE_HPP
