#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fdit/ellipsoid.hpp"
#include "fdit/sample_set.hpp"

namespace fdit {

/// Partition of the samples inside a search ellipsoid: all valid and invalid
/// members (ascending id), the first k valid sorted by scaled distance from
/// the center with index-order tie-breaking, and the first k members of
/// either polarity (the charge-ratio basis).
struct RegionPartition {
    std::vector<SampleId> nearest_valid;
    std::vector<SampleId> nearest_mixed;
    std::vector<SampleId> valid_in_region;
    std::vector<SampleId> invalid_in_region;
};

RegionPartition ellipse_nearest(const SampleSet& samples, const SearchEllipsoid& region,
                                int k, std::optional<SampleId> exclude = std::nullopt);

/// Forward-tree links of the query vertex, for neighbor-set augmentation.
struct TreeLinks {
    std::optional<SampleId> parent;
    std::span<const SampleId> children;
};

/// Returns true if the edge (query vertex, id) is known to be invalid.
using EdgeBlacklistFn = std::function<bool(SampleId)>;

/// Neighbor set of a query vertex: the in-region partition augmented with the
/// vertex's tree links and stripped of blacklisted connections.
struct EllipseNeighborhood {
    std::vector<SampleId> all;            // region members + tree links
    std::vector<SampleId> valid;          // valid subset of `all`
    std::vector<SampleId> invalid;        // invalid subset of `all`
    std::vector<SampleId> nearest_valid;  // k nearest valid + tree links; connection candidates
    std::vector<SampleId> nearest_mixed;  // k nearest of either polarity + tree links
};

EllipseNeighborhood ellipse_neighbors(const SampleSet& samples, const SearchEllipsoid& region,
                                      int k, const TreeLinks& links,
                                      const EdgeBlacklistFn& blacklisted,
                                      std::optional<SampleId> exclude = std::nullopt);

struct NeighborSearchParams {
    int k = 1;
    double base_radius = 0.1;
    double gamma_max = 1.0;
    double force_reference = 1.0;  // gamma normalization; see default_force_reference
    int loop_cap = 5;
};

/// One neighbor query of the refinement loop: the charge-ratio basis (the k
/// nearest neighbors of either polarity) and how many of them were invalid.
struct RefinementStep {
    int total = 0;
    int invalid = 0;
    double ratio = 0.0;
};

struct BestNeighborsResult {
    EllipseNeighborhood neighborhood;
    ForceVector force;                  // force that shaped the final query region
    std::vector<RefinementStep> steps;  // first entry is the all-ones bootstrap query
    int coincident_skipped = 0;
};

/// Force-refined neighbor search. The bootstrap query is a ball (the all-ones
/// initial force vector carries no spatial information); then, while at least
/// 10% of the k nearest neighbors are invalid and the iteration cap allows,
/// the resultant force over those neighbors reshapes the ellipsoid and the
/// query repeats. Total function: always returns within loop_cap refinements.
BestNeighborsResult get_best_ellipse_k_nearest(std::span<const double> x,
                                               const SampleSet& samples,
                                               const ChargeModel& model,
                                               const NeighborSearchParams& params,
                                               const TreeLinks& links,
                                               const EdgeBlacklistFn& blacklisted,
                                               std::optional<SampleId> exclude = std::nullopt);

using DistanceFn = std::function<double(std::span<const double>, std::span<const double>)>;

/// Exact k nearest samples by exhaustive scan under an arbitrary metric,
/// optionally radius-capped and restricted to valid samples. Reference oracle
/// for the spatial index and the elliptical queries.
std::vector<SampleId> brute_force_knn(std::span<const double> x, const SampleSet& samples,
                                      int k, const DistanceFn& metric,
                                      double max_radius = std::numeric_limits<double>::infinity(),
                                      bool valid_only = false,
                                      std::optional<SampleId> exclude = std::nullopt);

}  // namespace fdit
