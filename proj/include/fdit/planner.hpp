#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fdit/environment.hpp"
#include "fdit/knn.hpp"
#include "fdit/rgg.hpp"
#include "fdit/sampling.hpp"
#include "fdit/time_model.hpp"
#include "fdit/tree.hpp"

namespace fdit {

enum class NeighborMode { elliptical, spherical };

struct PlannerConfig {
    int batch_size = 200;
    RggParams rgg{};            // dimension is overwritten from the environment
    ChargeModel charge{};
    NeighborMode neighbor_mode = NeighborMode::elliptical;
    double gamma_max = 1.0;
    int loop_cap = 5;
    double time_budget = 1.0;   // model seconds, see time_model.hpp
    std::uint64_t seed = 0;
    double force_reference_scale = 1.0;
    bool use_effort_tiebreak = false;             // effort = probe count of the candidate edge
    std::size_t max_invalid_store = 10000;        // oldest-first eviction beyond this
    bool audit_examined_edges = false;            // test instrumentation

    void validate() const {
        if (batch_size < 1) throw std::invalid_argument("PlannerConfig: batch_size must be >= 1");
        if (!(time_budget > 0.0))
            throw std::invalid_argument("PlannerConfig: time_budget must be > 0");
        if (loop_cap < 1) throw std::invalid_argument("PlannerConfig: loop_cap must be >= 1");
        if (gamma_max < 0.0) throw std::invalid_argument("PlannerConfig: gamma_max must be >= 0");
        charge.validate();
    }
};

struct Solution {
    std::vector<StateVector> path;  // start first, goal last
    double cost = std::numeric_limits<double>::infinity();
    double wall_time = 0.0;         // model seconds since planner start
};

struct PlanStats {
    int batches = 0;
    std::size_t samples_drawn = 0;
    std::size_t state_checks = 0;
    std::size_t motion_checks = 0;
    std::size_t edges_processed = 0;
    std::size_t edges_blacklisted = 0;
    std::size_t neighbor_queries = 0;
    std::size_t refinement_iterations = 0;
    std::size_t coincident_skips = 0;
    std::size_t pruned_samples = 0;
    double virtual_time = 0.0;
};

struct PlanResult {
    std::vector<Solution> solutions;  // strictly improving; the last is the incumbent
    bool success = false;
    PlanStats stats;
};

/// Anytime batch planner over an implicit RGG: informed sampling, a reverse
/// cost-to-go heuristic with no collision checks, and a forward edge queue.
/// Elliptical mode steers every neighbor query by the resultant sample force;
/// spherical mode is the ablation baseline sharing the rest of the pipeline.
class Planner {
public:
    Planner(const Environment& env, const PlannerConfig& config);

    /// Run batches until the budget expires; returns the solution stream.
    PlanResult plan();

    /// One prune/sample/heuristic/search cycle; false once the budget is spent.
    bool run_batch();

    const SampleSet& samples() const { return samples_; }
    const ForwardTree& tree() const { return tree_; }
    const Environment& environment() const { return env_; }
    SampleId start_id() const { return start_id_; }
    SampleId goal_id() const { return goal_id_; }
    double incumbent_cost() const { return c_best_; }
    const std::vector<Solution>& solutions() const { return solutions_; }
    double heuristic(SampleId id) const {
        return id < h_.size() ? h_[id] : std::numeric_limits<double>::infinity();
    }
    double elapsed() const { return clock_.now(); }
    const PlanStats& stats() const { return stats_; }

    /// Tree walk from the start to the given connected vertex.
    Solution extract_path(SampleId goal_vertex) const;

    double connection_radius() const { return radius_; }
    int connection_k() const { return k_; }

    /// Valid edges the forward search examined (audit instrumentation).
    const std::vector<std::pair<SampleId, SampleId>>& examined_valid_edges() const {
        return examined_valid_edges_;
    }
    /// Every motion check the search ran, with its verdict (audit).
    const std::vector<std::tuple<SampleId, SampleId, bool>>& audited_motion_checks() const {
        return audited_motion_checks_;
    }
    /// Neighbor candidates computed during the most recent forward search.
    const std::unordered_map<SampleId, std::vector<SampleId>>& neighbor_cache() const {
        return neighbor_cache_;
    }

private:
    struct QueueEdge {
        double key1, key2, key3;
        SampleId source, target;
        double edge_cost;
        double g_source_at_push;

        bool operator>(const QueueEdge& o) const {
            if (key1 != o.key1) return key1 > o.key1;
            if (key2 != o.key2) return key2 > o.key2;
            if (key3 != o.key3) return key3 > o.key3;
            if (source != o.source) return source > o.source;
            return target > o.target;
        }
    };

    static std::uint64_t edge_key(SampleId a, SampleId b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }
    bool edge_blacklisted(SampleId a, SampleId b) const {
        return blacklist_.count(edge_key(a, b)) > 0;
    }

    double distance(SampleId a, SampleId b);
    bool checked_state_valid(std::span<const double> x);
    bool checked_motion_valid(SampleId a, SampleId b);

    void prune();
    void sample_batch();
    void update_connection_params();
    void update_reverse_heuristic();
    void forward_search();

    const std::vector<SampleId>& candidate_neighbors(SampleId v);
    void expand(SampleId v);
    void try_push_edge(SampleId source, SampleId target);
    void process_edge(const QueueEdge& edge);
    void record_solution_if_improved();

    Environment env_;
    PlannerConfig config_;
    Rng rng_;
    VirtualClock clock_;
    SampleSet samples_;
    SampleId start_id_;
    SampleId goal_id_;
    ForwardTree tree_;

    std::vector<double> h_;  // reverse cost-to-go per sample id
    std::unordered_set<std::uint64_t> blacklist_;
    std::deque<SampleId> invalid_fifo_;  // eviction order for invalid samples

    std::priority_queue<QueueEdge, std::vector<QueueEdge>, std::greater<QueueEdge>> queue_;
    std::unordered_map<SampleId, std::vector<SampleId>> neighbor_cache_;

    double c_best_ = std::numeric_limits<double>::infinity();
    std::vector<Solution> solutions_;
    PlanStats stats_;

    double radius_ = 0.0;       // connection radius, rewire factor applied
    int k_ = 1;                 // connection count
    double state_check_cost_;   // model seconds per validity check

    std::vector<std::pair<SampleId, SampleId>> examined_valid_edges_;
    std::vector<std::tuple<SampleId, SampleId, bool>> audited_motion_checks_;

    static constexpr double kEps = 1e-12;
};

}  // namespace fdit
