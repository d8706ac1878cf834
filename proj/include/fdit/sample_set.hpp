#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fdit/force.hpp"
#include "fdit/state.hpp"

namespace fdit {

using SampleId = std::uint32_t;

/// The planner's mixed store of valid and invalid samples, with a static
/// spatial index rebuilt at batch boundaries. Ids are stable (never reused);
/// removal only tombstones. Single writer; queries are safe between writes.
class SampleSet {
public:
    explicit SampleSet(int dimension) : dimension_(dimension) {}

    SampleId add(StateVector state, Polarity polarity);
    void remove(SampleId id);

    const ChargedSample& sample(SampleId id) const { return samples_[id]; }
    std::span<const double> state(SampleId id) const { return samples_[id].state; }
    bool alive(SampleId id) const { return alive_[id] != 0; }
    bool valid(SampleId id) const { return samples_[id].valid(); }

    int dimension() const { return dimension_; }
    std::size_t id_count() const { return samples_.size(); }
    std::size_t alive_count() const { return alive_valid_ + alive_invalid_; }
    std::size_t alive_valid_count() const { return alive_valid_; }
    std::size_t alive_invalid_count() const { return alive_invalid_; }

    std::vector<SampleId> alive_ids(Polarity polarity) const;

    /// Rebuild the spatial index over the alive samples.
    void rebuild_index();

    /// Ids of alive samples inside the axis-aligned box, ascending. Uses the
    /// index when fresh, otherwise falls back to an exhaustive scan (which is
    /// also the fixed behavior below 200 samples).
    void collect_in_box(std::span<const double> lo, std::span<const double> hi,
                        std::vector<SampleId>& out) const;

    /// Ids of alive samples within Euclidean radius r of x, ascending.
    void collect_in_radius(std::span<const double> x, double r,
                           std::vector<SampleId>& out) const;

private:
    struct KdNode {
        int split_dim = -1;  // -1 marks a leaf
        double split_value = 0.0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
    };

    std::int32_t build_node(std::uint32_t begin, std::uint32_t end);
    void query_node(std::int32_t node, std::span<const double> lo, std::span<const double> hi,
                    std::vector<SampleId>& out) const;

    int dimension_;
    std::vector<ChargedSample> samples_;
    std::vector<std::uint8_t> alive_;
    std::size_t alive_valid_ = 0;
    std::size_t alive_invalid_ = 0;

    static constexpr std::size_t kExhaustiveThreshold = 200;
    static constexpr std::uint32_t kLeafSize = 16;
    std::vector<KdNode> nodes_;
    std::vector<SampleId> index_ids_;  // permutation of alive ids
    bool index_fresh_ = false;
};

}  // namespace fdit
