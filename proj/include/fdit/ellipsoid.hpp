#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "fdit/force.hpp"
#include "fdit/state.hpp"

namespace fdit {

/// Volume-preserving neighbor-query region: a ball of base_radius elongated
/// along the force direction. The major semi-axis is base_radius*(1+gamma)
/// and the n-1 minor semi-axes are base_radius*(1+gamma)^(-1/(n-1)), so the
/// volume equals the base ball volume for every gamma.
struct SearchEllipsoid {
    StateVector center;
    ForceVector direction;  // unit vector along the major axis; empty => ball
    double base_radius = 0.0;
    double gamma = 0.0;
    double semi_major = 0.0;
    double semi_minor = 0.0;

    bool ball() const { return direction.empty(); }
};

/// Magnitude of the force one unit charge exerts at `base_radius`; the
/// default normalization for mapping force magnitude onto elongation.
inline double default_force_reference(double base_radius, int dimension,
                                      const ChargeModel& model) {
    return model.k_e / detail::ipow(base_radius, dimension - 1);
}

/// Orient a query ellipsoid at x along the given resultant force.
/// gamma = gamma_max * min(1, |force| / force_reference); a zero force (or
/// gamma_max = 0) degenerates to the ball of base_radius.
inline SearchEllipsoid build_ellipsoid(StateVector center, std::span<const double> force,
                                       double base_radius, double gamma_max,
                                       double force_reference) {
    if (!(base_radius > 0.0))
        throw std::invalid_argument("build_ellipsoid: base_radius must be > 0");
    const int n = static_cast<int>(center.size());
    SearchEllipsoid e;
    e.center = std::move(center);
    e.base_radius = base_radius;

    const double magnitude = detail::norm(force);
    if (magnitude > 0.0 && gamma_max > 0.0 && force_reference > 0.0) {
        e.gamma = gamma_max * std::min(1.0, magnitude / force_reference);
        e.direction.resize(force.size());
        for (std::size_t i = 0; i < force.size(); ++i) e.direction[i] = force[i] / magnitude;
    }
    if (e.gamma > 0.0) {
        e.semi_major = base_radius * (1.0 + e.gamma);
        e.semi_minor = base_radius * std::pow(1.0 + e.gamma, -1.0 / (n - 1));
    } else {
        e.direction.clear();
        e.semi_major = e.semi_minor = base_radius;
    }
    return e;
}

/// Distance of xi from the ellipsoid center in the rotated, axis-scaled frame
/// (first axis = direction, scales = semi-axes); <= 1 means membership.
inline double scaled_center_distance(const SearchEllipsoid& e, std::span<const double> xi) {
    double d_sq = 0.0;
    double along = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double d = xi[i] - e.center[i];
        d_sq += d * d;
        if (!e.ball()) along += d * e.direction[i];
    }
    if (e.ball()) return std::sqrt(d_sq) / e.base_radius;
    const double perp_sq = std::max(0.0, d_sq - along * along);
    const double t = along / e.semi_major;
    return std::sqrt(t * t + perp_sq / (e.semi_minor * e.semi_minor));
}

inline bool is_within_ellipse(const SearchEllipsoid& e, std::span<const double> xi) {
    return scaled_center_distance(e, xi) <= 1.0;
}

/// Half-extent of the ellipsoid's axis-aligned bounding box along axis i
/// (support function of the ellipsoid in the basis directions).
inline double bounding_half_extent(const SearchEllipsoid& e, std::size_t axis) {
    if (e.ball()) return e.base_radius;
    const double u = e.direction[axis];
    const double a2 = e.semi_major * e.semi_major;
    const double b2 = e.semi_minor * e.semi_minor;
    return std::sqrt(b2 + (a2 - b2) * u * u);
}

}  // namespace fdit
