#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fdit {

/// A point in the n-dimensional configuration space (unit hypercube).
/// Dimension is fixed per problem instance; coordinates are dimensionless.
using StateVector = std::vector<double>;

/// A resultant n-dimensional force, component per configuration-space axis.
using ForceVector = std::vector<double>;

namespace detail {

inline void require_same_dimension(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("state dimension mismatch");
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double squared_norm(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(squared_norm(a)); }

}  // namespace detail

/// Standard L2 distance between two states of equal dimension.
inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    detail::require_same_dimension(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// Axis-scaled distance sqrt(sum(((a_i - b_i)/v_i)^2)).
/// Reduces to the Euclidean distance when every scale is 1.
inline double elliptical_distance(std::span<const double> a, std::span<const double> b,
                                  std::span<const double> scales) {
    detail::require_same_dimension(a, b);
    if (scales.size() != a.size())
        throw std::invalid_argument("scale dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(scales[i] > 0.0))
            throw std::invalid_argument("elliptical_distance: scales must be strictly positive");
        const double d = (a[i] - b[i]) / scales[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace fdit
