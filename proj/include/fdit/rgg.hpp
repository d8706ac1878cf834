#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace fdit {

/// Connection parameters of the implicit random geometric graph.
struct RggParams {
    double eta = 1.1;            // RGG tuning constant
    double rewire_factor = 1.001;
    int dimension = 2;

    void validate() const {
        if (!(eta > 0.0)) throw std::invalid_argument("RggParams: eta must be > 0");
        if (!(rewire_factor >= 1.0))
            throw std::invalid_argument("RggParams: rewire_factor must be >= 1");
        if (dimension < 2) throw std::invalid_argument("RggParams: dimension must be >= 2");
    }
};

/// Lebesgue measure of the unit n-ball, pi^(n/2) / Gamma(n/2 + 1).
inline double unit_ball_measure(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_measure: n must be >= 1");
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

/// Connection radius r(q) = 2*eta*((1 + 1/n) * (measure / unit-ball) * (ln q / q))^(1/n).
/// `informed_measure` is the Lebesgue measure of the current sampling set.
inline double rgg_radius(std::size_t q, double informed_measure, const RggParams& params) {
    params.validate();
    if (q < 2) throw std::invalid_argument("rgg_radius: q must be >= 2");
    if (!(informed_measure > 0.0))
        throw std::invalid_argument("rgg_radius: informed_measure must be > 0");
    const double n = static_cast<double>(params.dimension);
    const double inner = (1.0 + 1.0 / n) * (informed_measure / unit_ball_measure(params.dimension)) *
                         (std::log(static_cast<double>(q)) / static_cast<double>(q));
    return 2.0 * params.eta * std::pow(inner, 1.0 / n);
}

/// Neighbor count k(q) = floor(eta * e * (1 + 1/n) * ln q), clamped to >= 1.
inline int rgg_k(std::size_t q, const RggParams& params) {
    params.validate();
    if (q < 2) throw std::invalid_argument("rgg_k: q must be >= 2");
    const double n = static_cast<double>(params.dimension);
    const double k = params.eta * std::numbers::e * (1.0 + 1.0 / n) *
                     std::log(static_cast<double>(q));
    return std::max(1, static_cast<int>(std::floor(k)));
}

}  // namespace fdit
