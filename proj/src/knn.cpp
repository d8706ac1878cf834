#include "fdit/knn.hpp"

#include <algorithm>
#include <cmath>

namespace fdit {

RegionPartition ellipse_nearest(const SampleSet& samples, const SearchEllipsoid& region,
                                int k, std::optional<SampleId> exclude) {
    StateVector lo(region.center.size()), hi(region.center.size());
    for (std::size_t i = 0; i < region.center.size(); ++i) {
        const double extent = bounding_half_extent(region, i);
        lo[i] = region.center[i] - extent;
        hi[i] = region.center[i] + extent;
    }
    std::vector<SampleId> box_ids;
    samples.collect_in_box(lo, hi, box_ids);

    RegionPartition part;
    std::vector<std::pair<double, SampleId>> valid_by_distance;
    std::vector<std::pair<double, SampleId>> mixed_by_distance;
    for (SampleId id : box_ids) {
        if (exclude && id == *exclude) continue;
        const double scaled = scaled_center_distance(region, samples.state(id));
        if (scaled > 1.0) continue;
        mixed_by_distance.emplace_back(scaled, id);
        if (samples.valid(id)) {
            part.valid_in_region.push_back(id);
            valid_by_distance.emplace_back(scaled, id);
        } else {
            part.invalid_in_region.push_back(id);
        }
    }
    const std::size_t want = static_cast<std::size_t>(std::max(0, k));
    auto take_nearest = [&](std::vector<std::pair<double, SampleId>>& scored,
                            std::vector<SampleId>& out) {
        std::sort(scored.begin(), scored.end());
        const std::size_t take = std::min(want, scored.size());
        out.reserve(take);
        for (std::size_t i = 0; i < take; ++i) out.push_back(scored[i].second);
    };
    take_nearest(valid_by_distance, part.nearest_valid);
    take_nearest(mixed_by_distance, part.nearest_mixed);
    return part;
}

EllipseNeighborhood ellipse_neighbors(const SampleSet& samples, const SearchEllipsoid& region,
                                      int k, const TreeLinks& links,
                                      const EdgeBlacklistFn& blacklisted,
                                      std::optional<SampleId> exclude) {
    RegionPartition part = ellipse_nearest(samples, region, k, exclude);

    auto reject = [&](SampleId id) { return blacklisted && blacklisted(id); };
    EllipseNeighborhood nb;
    for (SampleId id : part.valid_in_region)
        if (!reject(id)) nb.valid.push_back(id);
    for (SampleId id : part.invalid_in_region)
        if (!reject(id)) nb.invalid.push_back(id);
    for (SampleId id : part.nearest_valid)
        if (!reject(id)) nb.nearest_valid.push_back(id);
    for (SampleId id : part.nearest_mixed)
        if (!reject(id)) nb.nearest_mixed.push_back(id);

    // Tree links stay in the neighbor set even when they fall outside the
    // region, unless the connecting edge is blacklisted.
    auto augment = [&](SampleId id) {
        if (exclude && id == *exclude) return;
        if (reject(id)) return;
        auto add_if_absent = [&](std::vector<SampleId>& list) {
            if (std::find(list.begin(), list.end(), id) == list.end()) list.push_back(id);
        };
        add_if_absent(nb.valid);
        add_if_absent(nb.nearest_valid);
        add_if_absent(nb.nearest_mixed);
    };
    if (links.parent) augment(*links.parent);
    for (SampleId child : links.children) augment(child);

    nb.all.reserve(nb.valid.size() + nb.invalid.size());
    nb.all.insert(nb.all.end(), nb.valid.begin(), nb.valid.end());
    nb.all.insert(nb.all.end(), nb.invalid.begin(), nb.invalid.end());
    return nb;
}

namespace {

ForceSummary force_over_ids(std::span<const double> x, const SampleSet& samples,
                            std::span<const SampleId> ids, const ChargeModel& model) {
    ForceSummary out;
    out.force.assign(x.size(), 0.0);
    for (SampleId id : ids)
        if (!detail::accumulate_pair_force(x, samples.sample(id), model, out.force))
            ++out.coincident_skipped;
    return out;
}

RefinementStep step_of(const EllipseNeighborhood& nb, const SampleSet& samples) {
    RefinementStep step;
    step.total = static_cast<int>(nb.nearest_mixed.size());
    for (SampleId id : nb.nearest_mixed)
        if (!samples.valid(id)) ++step.invalid;
    step.ratio = step.total > 0 ? static_cast<double>(step.invalid) / step.total : 0.0;
    return step;
}

}  // namespace

BestNeighborsResult get_best_ellipse_k_nearest(std::span<const double> x,
                                               const SampleSet& samples,
                                               const ChargeModel& model,
                                               const NeighborSearchParams& params,
                                               const TreeLinks& links,
                                               const EdgeBlacklistFn& blacklisted,
                                               std::optional<SampleId> exclude) {
    BestNeighborsResult result;
    result.force.assign(x.size(), 1.0);  // bootstrap direction before any force is known

    // The bootstrap query is a ball: no force has been computed yet, so the
    // all-ones initializer carries no spatial information to elongate along.
    const StateVector center(x.begin(), x.end());
    SearchEllipsoid region = build_ellipsoid(StateVector(center), ForceVector(x.size(), 0.0),
                                             params.base_radius, params.gamma_max,
                                             params.force_reference);
    EllipseNeighborhood current =
        ellipse_neighbors(samples, region, params.k, links, blacklisted, exclude);
    result.steps.push_back(step_of(current, samples));

    // Invalid neighbors trigger one force-shaped requery; past the 10%
    // charge-ratio threshold the refinement keeps iterating up to the cap.
    int iterations = 0;
    while (iterations < params.loop_cap && result.steps.back().ratio > 0.0 &&
           (iterations == 0 || result.steps.back().ratio >= 0.1)) {
        ForceSummary summary = force_over_ids(x, samples, current.nearest_mixed, model);
        result.force = std::move(summary.force);
        result.coincident_skipped += summary.coincident_skipped;

        region = build_ellipsoid(StateVector(center), result.force, params.base_radius,
                                 params.gamma_max, params.force_reference);
        current = ellipse_neighbors(samples, region, params.k, links, blacklisted, exclude);
        result.steps.push_back(step_of(current, samples));
        ++iterations;
    }
    result.neighborhood = std::move(current);
    return result;
}

std::vector<SampleId> brute_force_knn(std::span<const double> x, const SampleSet& samples,
                                      int k, const DistanceFn& metric, double max_radius,
                                      bool valid_only, std::optional<SampleId> exclude) {
    std::vector<std::pair<double, SampleId>> scored;
    for (SampleId id = 0; id < samples.id_count(); ++id) {
        if (!samples.alive(id)) continue;
        if (valid_only && !samples.valid(id)) continue;
        if (exclude && id == *exclude) continue;
        const double d = metric(x, samples.state(id));
        if (d <= max_radius) scored.emplace_back(d, id);
    }
    std::sort(scored.begin(), scored.end());
    if (static_cast<std::size_t>(std::max(0, k)) < scored.size())
        scored.resize(static_cast<std::size_t>(k));
    std::vector<SampleId> out;
    out.reserve(scored.size());
    for (const auto& [d, id] : scored) out.push_back(id);
    return out;
}

}  // namespace fdit
