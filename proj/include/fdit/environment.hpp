#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fdit/state.hpp"

namespace fdit {

/// Axis-aligned obstacle. States strictly inside are invalid; the boundary
/// belongs to free space (closure semantics).
struct HyperRectangle {
    StateVector min_corner;
    StateVector max_corner;

    bool contains_strict(std::span<const double> x) const {
        for (std::size_t i = 0; i < min_corner.size(); ++i)
            if (!(x[i] > min_corner[i] && x[i] < max_corner[i])) return false;
        return true;
    }
};

/// An immutable planning world over the unit hypercube.
struct Environment {
    std::string id;
    int dimension = 2;
    std::vector<HyperRectangle> obstacles;
    StateVector start;
    StateVector goal;
    double check_resolution = 0.001;  // interpolation step for motion validation

    /// Throws if corners are inverted, obstacles leave the bounds, or the
    /// start/goal states are not collision-free.
    void validate() const;
};

/// True iff x is inside bounds and not strictly inside any obstacle.
inline bool is_state_valid(const Environment& env, std::span<const double> x) {
    for (double c : x)
        if (c < 0.0 || c > 1.0) return false;
    for (const auto& obs : env.obstacles)
        if (obs.contains_strict(x)) return false;
    return true;
}

/// True iff every interpolated state at spacing <= check_resolution along the
/// segment ab is valid, endpoints included. Probing is dyadic, so halving the
/// resolution only adds probe points and the result is symmetric in (a, b).
bool is_motion_valid(const Environment& env, std::span<const double> a,
                     std::span<const double> b);

/// Same check at an explicit resolution (used by soundness audits).
bool is_motion_valid(const Environment& env, std::span<const double> a,
                     std::span<const double> b, double resolution);

struct MotionCheckResult {
    bool valid = false;
    std::size_t probes = 0;  // validity checks actually evaluated
};

/// Motion check that reports how many validity probes it evaluated.
MotionCheckResult is_motion_valid_counted(const Environment& env, std::span<const double> a,
                                          std::span<const double> b, double resolution);

/// One gap piercing the dividing wall, as an interval along axis 1.
struct GapSpec {
    double position = 0.0;  // lower edge of the gap
    double width = 0.0;
};

/// The frozen default gap layout used by the benchmarks.
std::vector<GapSpec> default_dividing_wall_gaps();

/// Wall slab of the given thickness centered at 0.5 along axis 0, spanning all
/// remaining axes, pierced by the given gaps along axis 1.
/// start = (0.1, 0.5, ..., 0.5), goal = (0.9, 0.5, ..., 0.5).
Environment make_dividing_wall(int dimension, const std::vector<GapSpec>& gaps,
                               double wall_thickness = 0.1);

/// `count` axis-aligned hyperrectangles with per-axis widths uniform in
/// [w_min, w_max] and centers uniform in bounds, clamped to the hypercube.
/// Rectangles that would swallow the start or goal are resampled.
/// start = (0.1, ..., 0.1), goal = (0.9, ..., 0.9). Deterministic per seed.
Environment make_random_rectangles(int dimension, int count, double w_min, double w_max,
                                   std::uint64_t seed);

}  // namespace fdit
