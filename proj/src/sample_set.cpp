#include "fdit/sample_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdit {

SampleId SampleSet::add(StateVector state, Polarity polarity) {
    if (static_cast<int>(state.size()) != dimension_)
        throw std::invalid_argument("SampleSet::add: dimension mismatch");
    const SampleId id = static_cast<SampleId>(samples_.size());
    samples_.push_back(ChargedSample{std::move(state), polarity});
    alive_.push_back(1);
    if (polarity == Polarity::positive)
        ++alive_valid_;
    else
        ++alive_invalid_;
    index_fresh_ = false;
    return id;
}

void SampleSet::remove(SampleId id) {
    if (!alive_[id]) return;
    alive_[id] = 0;
    if (samples_[id].valid())
        --alive_valid_;
    else
        --alive_invalid_;
    index_fresh_ = false;
}

std::vector<SampleId> SampleSet::alive_ids(Polarity polarity) const {
    std::vector<SampleId> out;
    for (SampleId id = 0; id < samples_.size(); ++id)
        if (alive_[id] && samples_[id].polarity == polarity) out.push_back(id);
    return out;
}

std::int32_t SampleSet::build_node(std::uint32_t begin, std::uint32_t end) {
    KdNode node;
    node.begin = begin;
    node.end = end;
    if (end - begin > kLeafSize) {
        // Split along the axis of maximum spread, at the median point.
        int best_dim = 0;
        double best_spread = -1.0;
        for (int d = 0; d < dimension_; ++d) {
            double lo = samples_[index_ids_[begin]].state[d];
            double hi = lo;
            for (std::uint32_t i = begin + 1; i < end; ++i) {
                const double c = samples_[index_ids_[i]].state[d];
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            if (hi - lo > best_spread) {
                best_spread = hi - lo;
                best_dim = d;
            }
        }
        const std::uint32_t mid = begin + (end - begin) / 2;
        std::nth_element(index_ids_.begin() + begin, index_ids_.begin() + mid,
                         index_ids_.begin() + end, [&](SampleId a, SampleId b) {
                             const double ca = samples_[a].state[best_dim];
                             const double cb = samples_[b].state[best_dim];
                             return ca < cb || (ca == cb && a < b);
                         });
        node.split_dim = best_dim;
        node.split_value = samples_[index_ids_[mid]].state[best_dim];
        const std::int32_t self = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back(node);
        const std::int32_t left = build_node(begin, mid);
        const std::int32_t right = build_node(mid, end);
        nodes_[self].left = left;
        nodes_[self].right = right;
        return self;
    }
    const std::int32_t self = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(node);
    return self;
}

void SampleSet::rebuild_index() {
    index_ids_.clear();
    for (SampleId id = 0; id < samples_.size(); ++id)
        if (alive_[id]) index_ids_.push_back(id);
    nodes_.clear();
    if (index_ids_.size() >= kExhaustiveThreshold) {
        nodes_.reserve(2 * index_ids_.size() / kLeafSize + 2);
        build_node(0, static_cast<std::uint32_t>(index_ids_.size()));
    }
    index_fresh_ = true;
}

namespace {

bool in_box(std::span<const double> x, std::span<const double> lo, std::span<const double> hi) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
}

}  // namespace

void SampleSet::query_node(std::int32_t node_idx, std::span<const double> lo,
                           std::span<const double> hi, std::vector<SampleId>& out) const {
    const KdNode& node = nodes_[node_idx];
    if (node.split_dim < 0) {
        for (std::uint32_t i = node.begin; i < node.end; ++i) {
            const SampleId id = index_ids_[i];
            if (in_box(samples_[id].state, lo, hi)) out.push_back(id);
        }
        return;
    }
    if (lo[node.split_dim] <= node.split_value) query_node(node.left, lo, hi, out);
    if (hi[node.split_dim] >= node.split_value) query_node(node.right, lo, hi, out);
}

void SampleSet::collect_in_box(std::span<const double> lo, std::span<const double> hi,
                               std::vector<SampleId>& out) const {
    out.clear();
    if (index_fresh_ && !nodes_.empty()) {
        query_node(0, lo, hi, out);
        std::sort(out.begin(), out.end());
        return;
    }
    for (SampleId id = 0; id < samples_.size(); ++id)
        if (alive_[id] && in_box(samples_[id].state, lo, hi)) out.push_back(id);
}

void SampleSet::collect_in_radius(std::span<const double> x, double r,
                                  std::vector<SampleId>& out) const {
    StateVector lo(x.size()), hi(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        lo[i] = x[i] - r;
        hi[i] = x[i] + r;
    }
    collect_in_box(lo, hi, out);
    const double r_sq = r * r;
    std::erase_if(out, [&](SampleId id) {
        double d_sq = 0.0;
        const auto& s = samples_[id].state;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double d = s[i] - x[i];
            d_sq += d * d;
        }
        return d_sq > r_sq;
    });
}

}  // namespace fdit
