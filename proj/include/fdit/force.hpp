#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "fdit/state.hpp"

namespace fdit {

/// Samples inside obstacles carry negative charge; collision-free ones are
/// positive. Invalid samples are retained, not discarded.
enum class Polarity : std::uint8_t { positive, negative };

struct ChargedSample {
    StateVector state;
    Polarity polarity = Polarity::positive;

    bool valid() const { return polarity == Polarity::positive; }
};

/// Coefficients of the charge model. All samples carry unit charge; the
/// constants below scale the pairwise laws.
struct ChargeModel {
    double k_e = 1.0;       // n-dimensional Coulomb constant
    double Q_valid = 1.0;   // charge product for attractive pairs
    double Q_invalid = 1.0; // charge product for repulsive pairs
    double k_a = 1.0;       // attractive guidance coefficient
    double k_r = 1.0;       // repulsive guidance coefficient
    double rho0 = 1.0;      // repulsion cutoff range

    void validate() const {
        if (!(k_e > 0 && Q_valid > 0 && Q_invalid > 0 && k_a > 0 && k_r > 0 && rho0 > 0))
            throw std::invalid_argument("ChargeModel: all coefficients must be > 0");
    }
};

/// Pairs closer than this are treated as coincident (charge singularity).
inline constexpr double kCoincidenceEps = 1e-12;

namespace detail {

inline double ipow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace detail

/// Force exerted on x by a single charged sample. Valid samples attract
/// (force toward the sample), invalid ones repel, both with magnitude
/// k_e * Q / r^(n-1) in n dimensions.
inline ForceVector pair_force(std::span<const double> x, const ChargedSample& xi,
                              const ChargeModel& model) {
    detail::require_same_dimension(x, xi.state);
    const int n = static_cast<int>(x.size());
    const double r = euclidean_distance(x, xi.state);
    if (r < kCoincidenceEps)
        throw std::invalid_argument("pair_force: coincident charge");
    const double charge = xi.valid() ? model.Q_valid : -model.Q_invalid;
    const double scale = model.k_e * charge / (detail::ipow(r, n - 1) * r);
    ForceVector f(x.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = scale * (xi.state[i] - x[i]);
    return f;
}

struct ForceSummary {
    ForceVector force;
    int coincident_skipped = 0;
};

namespace detail {

/// Adds the pair force of one charged sample into f; false when the pair is
/// coincident and was skipped.
inline bool accumulate_pair_force(std::span<const double> x, const ChargedSample& xi,
                                  const ChargeModel& model, ForceVector& f) {
    const int n = static_cast<int>(x.size());
    const double r = euclidean_distance(x, xi.state);
    if (r < kCoincidenceEps) return false;
    const double charge = xi.valid() ? model.Q_valid : -model.Q_invalid;
    const double scale = model.k_e * charge / (detail::ipow(r, n - 1) * r);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += scale * (xi.state[i] - x[i]);
    return true;
}

}  // namespace detail

/// Resultant force on x from a neighbor set: the vector sum of pair forces.
/// Coincident neighbors are skipped and counted rather than raising.
inline ForceSummary compute_force_direction(std::span<const double> x,
                                            std::span<const ChargedSample> neighbors,
                                            const ChargeModel& model) {
    ForceSummary out;
    out.force.assign(x.size(), 0.0);
    for (const auto& xi : neighbors)
        if (!detail::accumulate_pair_force(x, xi, model, out.force)) ++out.coincident_skipped;
    return out;
}

/// Fraction of invalid samples in a neighbor set; 0 for an empty set.
inline double charge_ratio(std::span<const ChargedSample> neighbors) {
    if (neighbors.empty()) return 0.0;
    std::size_t invalid = 0;
    for (const auto& s : neighbors)
        if (!s.valid()) ++invalid;
    return static_cast<double>(invalid) / static_cast<double>(neighbors.size());
}

inline double distance_or_throw(std::span<const double> x, std::span<const double> y,
                                const char* what) {
    const double r = euclidean_distance(x, y);
    if (r < kCoincidenceEps) throw std::invalid_argument(std::string(what) + ": coincident states");
    return r;
}

/// Guidance potential of a valid vertex, k_a / r^2.
inline double attractive_potential(std::span<const double> x, std::span<const double> x_pos,
                                   const ChargeModel& model) {
    const double r = distance_or_throw(x, x_pos, "attractive_potential");
    return model.k_a / (r * r);
}

/// Guidance force of a valid vertex, k_a * (x - x_pos) / r^3.
inline ForceVector attractive_force(std::span<const double> x, std::span<const double> x_pos,
                                    const ChargeModel& model) {
    const double r = distance_or_throw(x, x_pos, "attractive_force");
    const double scale = model.k_a / (r * r * r);
    ForceVector f(x.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = scale * (x[i] - x_pos[i]);
    return f;
}

/// Guidance potential of an invalid vertex, -k_r / r^2 inside the rho0
/// cutoff and exactly 0 beyond it (the value jumps at the cutoff).
inline double repulsive_potential(std::span<const double> x, std::span<const double> x_neg,
                                  const ChargeModel& model) {
    const double r = distance_or_throw(x, x_neg, "repulsive_potential");
    if (r > model.rho0) return 0.0;
    return -model.k_r / (r * r);
}

/// Guidance force of an invalid vertex, -k_r * (x - x_neg) / r^3 inside the
/// rho0 cutoff, zero beyond it.
inline ForceVector repulsive_force(std::span<const double> x, std::span<const double> x_neg,
                                   const ChargeModel& model) {
    const double r = distance_or_throw(x, x_neg, "repulsive_force");
    ForceVector f(x.size(), 0.0);
    if (r > model.rho0) return f;
    const double scale = -model.k_r / (r * r * r);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = scale * (x[i] - x_neg[i]);
    return f;
}

/// Combined attraction of many valid vertices with unit charges:
/// k_e * sum((x_pos,i - x) / r_i^n). Coincident vertices are skipped.
inline ForceSummary aggregate_attractive_force(std::span<const double> x,
                                               std::span<const StateVector> valid_positions,
                                               const ChargeModel& model) {
    const int n = static_cast<int>(x.size());
    ForceSummary out;
    out.force.assign(x.size(), 0.0);
    for (const auto& pos : valid_positions) {
        const double r = euclidean_distance(x, pos);
        if (r < kCoincidenceEps) {
            ++out.coincident_skipped;
            continue;
        }
        const double scale = model.k_e / detail::ipow(r, n);
        for (std::size_t i = 0; i < out.force.size(); ++i)
            out.force[i] += scale * (pos[i] - x[i]);
    }
    return out;
}

/// Mirror of aggregate_attractive_force for invalid vertices (repulsion):
/// -k_e * sum((x_neg,j - x) / r_j^n).
inline ForceSummary aggregate_repulsive_force(std::span<const double> x,
                                              std::span<const StateVector> invalid_positions,
                                              const ChargeModel& model) {
    const int n = static_cast<int>(x.size());
    ForceSummary out;
    out.force.assign(x.size(), 0.0);
    for (const auto& pos : invalid_positions) {
        const double r = euclidean_distance(x, pos);
        if (r < kCoincidenceEps) {
            ++out.coincident_skipped;
            continue;
        }
        const double scale = -model.k_e / detail::ipow(r, n);
        for (std::size_t i = 0; i < out.force.size(); ++i)
            out.force[i] += scale * (pos[i] - x[i]);
    }
    return out;
}

}  // namespace fdit
