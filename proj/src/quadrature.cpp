#include "optophase/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace optophase {

namespace {

double trapezoid_stride(const Eigen::Ref<const Eigen::VectorXd>& t, const Eigen::Ref<const Eigen::VectorXd>& y,
                        Eigen::Index stride)
{
    double sum = 0.0;
    for (Eigen::Index i = 0; i + stride < t.size(); i += stride)
        sum += 0.5 * (t[i + stride] - t[i]) * (y[i] + y[i + stride]);
    return sum;
}

}  // namespace

QuadratureResult integrate_samples(const Eigen::Ref<const Eigen::VectorXd>& t,
                                   const Eigen::Ref<const Eigen::VectorXd>& y, int max_levels)
{
    if (t.size() != y.size())
        throw std::invalid_argument("time and value samples differ in length");
    if (t.size() < 2)
        return {};
    const Eigen::Index intervals = t.size() - 1;
    for (Eigen::Index i = 0; i < intervals; ++i)
        if (!(t[i + 1] > t[i]))
            throw std::invalid_argument("time samples must be strictly increasing");

    const double h = (t[intervals] - t[0]) / static_cast<double>(intervals);
    bool uniform = true;
    for (Eigen::Index i = 0; i < intervals && uniform; ++i)
        uniform = std::abs((t[i + 1] - t[i]) - h) <= 1e-9 * h;

    if (!uniform) {
        const double fine = trapezoid_stride(t, y, 1);
        QuadratureResult r{fine, 0.0, 0};
        if (intervals % 2 == 0)
            r.error = std::abs(fine - trapezoid_stride(t, y, 2)) / 3.0;
        return r;
    }

    // Coarsest usable stride: halve the interval count while it stays even.
    int levels = 0;
    Eigen::Index n = intervals;
    while (levels < max_levels && n % 2 == 0) {
        n /= 2;
        ++levels;
    }
    // Row i uses stride 2^(levels - i); row `levels` is the finest.
    std::vector<std::vector<double>> table(static_cast<std::size_t>(levels) + 1);
    for (int i = 0; i <= levels; ++i) {
        auto& row = table[static_cast<std::size_t>(i)];
        row.push_back(trapezoid_stride(t, y, Eigen::Index{1} << (levels - i)));
        double factor = 4.0;
        for (int j = 1; j <= i; ++j, factor *= 4.0) {
            const double fine = row[static_cast<std::size_t>(j - 1)];
            const double coarse = table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            row.push_back(fine + (fine - coarse) / (factor - 1.0));
        }
    }
    QuadratureResult r;
    r.levels = levels;
    r.value = table.back().back();
    if (levels > 0)
        r.error = std::abs(r.value - table[static_cast<std::size_t>(levels - 1)].back());
    return r;
}

}  // namespace optophase
