#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "fdit/rgg.hpp"
#include "fdit/state.hpp"

namespace fdit {

/// Seeded random source. One instance per planner run; not shareable across threads.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return uniform_(engine_); }

    double normal() { return normal_(engine_); }

    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Uniform sample over the unit hypercube [0,1]^dim.
inline StateVector sample_uniform(int dim, Rng& rng) {
    StateVector x(static_cast<std::size_t>(dim));
    for (auto& c : x) c = rng.uniform01();
    return x;
}

inline bool in_unit_bounds(std::span<const double> x) {
    for (double c : x)
        if (c < 0.0 || c > 1.0) return false;
    return true;
}

/// The prolate hyperspheroid {x : |x - a| + |x - b| <= c_best} that contains
/// every path shorter than the incumbent solution. c_best = infinity means
/// no incumbent yet; the set degenerates to the full bounded space.
struct InformedSet {
    StateVector focus_a;
    StateVector focus_b;
    double c_best = std::numeric_limits<double>::infinity();
    double c_min = 0.0;

    InformedSet(StateVector a, StateVector b,
                double best = std::numeric_limits<double>::infinity())
        : focus_a(std::move(a)), focus_b(std::move(b)), c_best(best) {
        c_min = euclidean_distance(focus_a, focus_b);
        if (c_best < c_min)
            throw std::invalid_argument("InformedSet: c_best must be >= c_min");
    }

    bool unbounded() const { return !std::isfinite(c_best); }
};

/// Lebesgue measure of the informed set clamped to the hypercube volume.
/// Degenerate sets (c_best == c_min) are floored at 1e-12 to keep the RGG
/// radius finite.
inline double informed_measure(const InformedSet& set) {
    constexpr double kMeasureFloor = 1e-12;
    const double cube = 1.0;  // unit hypercube
    if (set.unbounded()) return cube;
    const int n = static_cast<int>(set.focus_a.size());
    const double a = 0.5 * set.c_best;  // transverse semi-axis
    const double conj_sq = set.c_best * set.c_best - set.c_min * set.c_min;
    const double b = 0.5 * std::sqrt(std::max(0.0, conj_sq));
    const double vol = unit_ball_measure(n) * a * std::pow(b, n - 1);
    return std::max(kMeasureFloor, std::min(cube, vol));
}

namespace detail {

/// Uniform sample inside the unit n-ball: normalized Gaussian direction
/// scaled by U^(1/n).
inline std::vector<double> sample_unit_ball(int n, Rng& rng) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (auto& c : v) {
            c = rng.normal();
            norm_sq += c * c;
        }
    } while (norm_sq < 1e-300);
    const double radius = std::pow(rng.uniform01(), 1.0 / n) / std::sqrt(norm_sq);
    for (auto& c : v) c *= radius;
    return v;
}

/// Householder reflection mapping the first basis vector onto `axis` (unit).
/// Orthogonal, so it maps the axis-aligned spheroid onto the focal-axis one.
struct AxisRotation {
    std::vector<double> w;  // empty => identity
    double w_sq = 0.0;

    explicit AxisRotation(std::span<const double> axis) {
        std::vector<double> diff(axis.size());
        diff[0] = 1.0 - axis[0];
        for (std::size_t i = 1; i < axis.size(); ++i) diff[i] = -axis[i];
        const double sq = detail::squared_norm(diff);
        if (sq > 1e-24) {
            w = std::move(diff);
            w_sq = sq;
        }
    }

    void apply_in_place(std::vector<double>& x) const {
        if (w.empty()) return;
        const double scale = 2.0 * detail::dot(x, w) / w_sq;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= scale * w[i];
    }
};

}  // namespace detail

/// Uniform sample from the informed set intersected with the unit hypercube.
/// Direct hyperspheroid transformation with rejection against bounds only;
/// with no incumbent this is plain uniform sampling. `attempts`, when given,
/// reports the number of rejection-loop draws.
inline StateVector sample_informed(const InformedSet& set, Rng& rng,
                                   std::size_t* attempts = nullptr) {
    const int n = static_cast<int>(set.focus_a.size());
    if (attempts) *attempts = 1;
    if (set.unbounded()) return sample_uniform(n, rng);
    if (set.c_best < set.c_min)
        throw std::invalid_argument("sample_informed: c_best must be >= c_min");

    const double transverse = 0.5 * set.c_best;
    const double conjugate =
        0.5 * std::sqrt(std::max(0.0, set.c_best * set.c_best - set.c_min * set.c_min));

    StateVector center(set.focus_a.size());
    for (std::size_t i = 0; i < center.size(); ++i)
        center[i] = 0.5 * (set.focus_a[i] + set.focus_b[i]);

    // Coincident foci degenerate to a ball (conjugate == transverse there),
    // so only the focal axis needs a fallback direction.
    std::vector<double> axis(set.focus_a.size(), 0.0);
    axis[0] = 1.0;
    if (set.c_min >= 1e-12)
        for (std::size_t i = 0; i < axis.size(); ++i)
            axis[i] = (set.focus_b[i] - set.focus_a[i]) / set.c_min;
    const detail::AxisRotation rotation(axis);

    while (true) {
        std::vector<double> x = detail::sample_unit_ball(n, rng);
        x[0] *= transverse;
        for (int i = 1; i < n; ++i) x[static_cast<std::size_t>(i)] *= conjugate;
        rotation.apply_in_place(x);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += center[i];
        if (in_unit_bounds(x)) return x;
        if (attempts) ++*attempts;
    }
}

}  // namespace fdit
