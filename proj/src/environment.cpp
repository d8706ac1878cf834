#include "fdit/environment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fdit/sampling.hpp"

namespace fdit {

void Environment::validate() const {
    if (dimension < 2) throw std::invalid_argument("Environment: dimension must be >= 2");
    auto check_state = [&](const StateVector& x, const char* what) {
        if (static_cast<int>(x.size()) != dimension)
            throw std::invalid_argument(std::string("Environment: bad dimension for ") + what);
    };
    check_state(start, "start");
    check_state(goal, "goal");
    if (!(check_resolution > 0.0))
        throw std::invalid_argument("Environment: check_resolution must be > 0");
    for (const auto& obs : this->obstacles) {
        check_state(obs.min_corner, "obstacle min corner");
        check_state(obs.max_corner, "obstacle max corner");
        for (int i = 0; i < dimension; ++i) {
            if (obs.min_corner[i] > obs.max_corner[i])
                throw std::invalid_argument("Environment: inverted obstacle corners");
            if (obs.min_corner[i] < 0.0 || obs.max_corner[i] > 1.0)
                throw std::invalid_argument("Environment: obstacle outside bounds");
        }
    }
    if (!is_state_valid(*this, start)) throw std::invalid_argument("Environment: start in collision");
    if (!is_state_valid(*this, goal)) throw std::invalid_argument("Environment: goal in collision");
}

namespace {

// Probe the open segment at every odd multiple of 2^-level until the spacing
// drops below the resolution. The probe set is nested across levels, and the
// midpoint is tested first, which fails fast on wall-type obstacles.
bool interior_valid(const Environment& env, std::span<const double> a,
                    std::span<const double> b, double length, double resolution,
                    std::size_t& probes) {
    if (length <= resolution) return true;
    int levels = 1;
    double spacing = 0.5 * length;
    while (spacing > resolution) {
        ++levels;
        spacing *= 0.5;
    }
    StateVector probe(a.size());
    for (int level = 1; level <= levels; ++level) {
        const std::uint64_t intervals = 1ull << level;
        for (std::uint64_t j = 1; j < intervals; j += 2) {
            const double t = static_cast<double>(j) / static_cast<double>(intervals);
            for (std::size_t i = 0; i < probe.size(); ++i)
                probe[i] = a[i] + t * (b[i] - a[i]);
            ++probes;
            if (!is_state_valid(env, probe)) return false;
        }
    }
    return true;
}

}  // namespace

MotionCheckResult is_motion_valid_counted(const Environment& env, std::span<const double> a,
                                          std::span<const double> b, double resolution) {
    // Canonical endpoint order keeps the probe arithmetic symmetric in (a, b).
    if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) std::swap(a, b);
    MotionCheckResult result;
    result.probes = 2;
    if (!is_state_valid(env, a) || !is_state_valid(env, b)) return result;
    result.valid = interior_valid(env, a, b, euclidean_distance(a, b), resolution, result.probes);
    return result;
}

bool is_motion_valid(const Environment& env, std::span<const double> a,
                     std::span<const double> b, double resolution) {
    return is_motion_valid_counted(env, a, b, resolution).valid;
}

bool is_motion_valid(const Environment& env, std::span<const double> a,
                     std::span<const double> b) {
    return is_motion_valid_counted(env, a, b, env.check_resolution).valid;
}

std::vector<GapSpec> default_dividing_wall_gaps() {
    // Seven gaps spread over the wall, none containing the start-goal line at
    // 0.5, so every direct crossing detours through a nearby opening.
    return {{0.08, 0.05}, {0.22, 0.10}, {0.37, 0.125}, {0.555, 0.01},
            {0.64, 0.03}, {0.77, 0.05}, {0.87, 0.12}};
}

Environment make_dividing_wall(int dimension, const std::vector<GapSpec>& gaps,
                               double wall_thickness) {
    if (dimension < 2) throw std::invalid_argument("make_dividing_wall: dimension must be >= 2");
    if (!(wall_thickness > 0.0 && wall_thickness < 1.0))
        throw std::invalid_argument("make_dividing_wall: bad wall thickness");

    std::vector<GapSpec> sorted = gaps;
    std::sort(sorted.begin(), sorted.end(),
              [](const GapSpec& a, const GapSpec& b) { return a.position < b.position; });
    double cursor = 0.0;
    for (const auto& gap : sorted) {
        if (!(gap.width > 0.0) || gap.position < cursor || gap.position + gap.width > 1.0)
            throw std::invalid_argument("make_dividing_wall: gaps must be disjoint and within [0,1]");
        cursor = gap.position + gap.width;
    }

    Environment env;
    env.dimension = dimension;
    std::ostringstream id;
    id << "dw-" << dimension << "d";
    env.id = id.str();

    const double lo = 0.5 - 0.5 * wall_thickness;
    const double hi = 0.5 + 0.5 * wall_thickness;
    auto add_segment = [&](double from, double to) {
        if (!(to > from)) return;
        HyperRectangle rect;
        rect.min_corner.assign(static_cast<std::size_t>(dimension), 0.0);
        rect.max_corner.assign(static_cast<std::size_t>(dimension), 1.0);
        rect.min_corner[0] = lo;
        rect.max_corner[0] = hi;
        rect.min_corner[1] = from;
        rect.max_corner[1] = to;
        env.obstacles.push_back(std::move(rect));
    };
    double from = 0.0;
    for (const auto& gap : sorted) {
        add_segment(from, gap.position);
        from = gap.position + gap.width;
    }
    add_segment(from, 1.0);

    env.start.assign(static_cast<std::size_t>(dimension), 0.5);
    env.goal.assign(static_cast<std::size_t>(dimension), 0.5);
    env.start[0] = 0.1;
    env.goal[0] = 0.9;
    env.validate();
    return env;
}

Environment make_random_rectangles(int dimension, int count, double w_min, double w_max,
                                   std::uint64_t seed) {
    if (dimension < 2) throw std::invalid_argument("make_random_rectangles: dimension must be >= 2");
    if (!(w_min > 0.0 && w_min <= w_max && w_max < 1.0))
        throw std::invalid_argument("make_random_rectangles: need 0 < w_min <= w_max < 1");
    if (count < 0) throw std::invalid_argument("make_random_rectangles: count must be >= 0");

    Environment env;
    env.dimension = dimension;
    std::ostringstream id;
    id << "rr-" << dimension << "d-s" << seed;
    env.id = id.str();
    env.start.assign(static_cast<std::size_t>(dimension), 0.1);
    env.goal.assign(static_cast<std::size_t>(dimension), 0.9);

    Rng rng(seed);
    constexpr int kMaxAttempts = 10000;
    for (int r = 0; r < count; ++r) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            HyperRectangle rect;
            rect.min_corner.resize(static_cast<std::size_t>(dimension));
            rect.max_corner.resize(static_cast<std::size_t>(dimension));
            for (int i = 0; i < dimension; ++i) {
                const double width = w_min + (w_max - w_min) * rng.uniform01();
                const double center = rng.uniform01();
                rect.min_corner[i] = std::max(0.0, center - 0.5 * width);
                rect.max_corner[i] = std::min(1.0, center + 0.5 * width);
            }
            if (rect.contains_strict(env.start) || rect.contains_strict(env.goal)) continue;
            env.obstacles.push_back(std::move(rect));
            placed = true;
        }
        if (!placed)
            throw std::runtime_error("make_random_rectangles: could not place obstacle clear of start/goal");
    }
    env.validate();
    return env;
}

}  // namespace fdit
