#include "fdit/planner.hpp"

#include <algorithm>
#include <cmath>

namespace fdit {

Planner::Planner(const Environment& env, const PlannerConfig& config)
    : env_(env),
      config_(config),
      rng_(config.seed),
      clock_(config.time_budget),
      samples_(env.dimension),
      start_id_(0),
      goal_id_(0),
      tree_(0) {
    env_.validate();
    config_.rgg.dimension = env_.dimension;
    config_.validate();
    config_.rgg.validate();
    state_check_cost_ = timecost::kStateCheckBase +
                        timecost::kStateCheckPerObstacleDim * env_.dimension *
                            static_cast<double>(env_.obstacles.size());

    start_id_ = samples_.add(env_.start, Polarity::positive);
    goal_id_ = samples_.add(env_.goal, Polarity::positive);
    tree_ = ForwardTree(start_id_);
    tree_.ensure_capacity(samples_.id_count());
    h_.assign(samples_.id_count(), std::numeric_limits<double>::infinity());
}

double Planner::distance(SampleId a, SampleId b) {
    clock_.charge(timecost::kDistancePerDim * env_.dimension);
    return euclidean_distance(samples_.state(a), samples_.state(b));
}

bool Planner::checked_state_valid(std::span<const double> x) {
    ++stats_.state_checks;
    clock_.charge(state_check_cost_);
    return is_state_valid(env_, x);
}

bool Planner::checked_motion_valid(SampleId a, SampleId b) {
    const MotionCheckResult result = is_motion_valid_counted(
        env_, samples_.state(a), samples_.state(b), env_.check_resolution);
    ++stats_.motion_checks;
    stats_.state_checks += result.probes;
    clock_.charge(state_check_cost_ * static_cast<double>(result.probes));
    return result.valid;
}

void Planner::prune() {
    if (!std::isfinite(c_best_)) return;

    std::vector<SampleId> doomed;
    for (SampleId id = 0; id < samples_.id_count(); ++id) {
        if (!samples_.alive(id) || id == start_id_ || id == goal_id_) continue;
        const double lower_bound =
            distance(id, start_id_) + distance(id, goal_id_);
        if (lower_bound > c_best_ + kEps) doomed.push_back(id);
    }

    // A doomed tree vertex takes its subtree out of the tree; descendants that
    // are themselves still informed survive as plain samples.
    std::vector<SampleId> detreed;
    for (SampleId id : doomed)
        if (tree_.contains(id)) tree_.remove_subtree(id, detreed);
    for (SampleId id : doomed) {
        samples_.remove(id);
        ++stats_.pruned_samples;
    }
}

void Planner::sample_batch() {
    const InformedSet informed(env_.start, env_.goal, c_best_);
    for (int i = 0; i < config_.batch_size; ++i) {
        std::size_t attempts = 0;
        StateVector x = sample_informed(informed, rng_, &attempts);
        clock_.charge(timecost::kSampleDrawPerDim * env_.dimension *
                      static_cast<double>(attempts));
        ++stats_.samples_drawn;
        const bool valid = checked_state_valid(x);
        const SampleId id =
            samples_.add(std::move(x), valid ? Polarity::positive : Polarity::negative);
        if (!valid) {
            invalid_fifo_.push_back(id);
            while (samples_.alive_invalid_count() > config_.max_invalid_store &&
                   !invalid_fifo_.empty()) {
                const SampleId oldest = invalid_fifo_.front();
                invalid_fifo_.pop_front();
                if (samples_.alive(oldest)) samples_.remove(oldest);
            }
        }
    }
    tree_.ensure_capacity(samples_.id_count());
}

void Planner::update_connection_params() {
    const std::size_t q = samples_.alive_valid_count();
    const double measure = informed_measure(InformedSet(env_.start, env_.goal, c_best_));
    radius_ = config_.rgg.rewire_factor * rgg_radius(q, measure, config_.rgg);
    k_ = rgg_k(q, config_.rgg);

    samples_.rebuild_index();
    clock_.charge(timecost::kIndexRebuildPerSample * static_cast<double>(samples_.alive_count()));
}

void Planner::update_reverse_heuristic() {
    h_.assign(samples_.id_count(), std::numeric_limits<double>::infinity());
    h_[goal_id_] = 0.0;
    const double reach = radius_;

    using Entry = std::pair<double, SampleId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> frontier;
    frontier.emplace(0.0, goal_id_);
    std::vector<char> settled(samples_.id_count(), 0);
    std::vector<SampleId> nearby;
    while (!frontier.empty()) {
        const auto [cost, u] = frontier.top();
        frontier.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        samples_.collect_in_radius(samples_.state(u), reach, nearby);
        clock_.charge(timecost::kRegionQueryBase +
                      timecost::kRegionQueryPerCandidate * static_cast<double>(nearby.size()));
        for (SampleId v : nearby) {
            if (v == u || !samples_.valid(v) || settled[v]) continue;
            clock_.charge(timecost::kDijkstraRelax);
            const double through = cost + distance(u, v);
            if (through < h_[v]) {
                h_[v] = through;
                frontier.emplace(through, v);
            }
        }
    }
}

const std::vector<SampleId>& Planner::candidate_neighbors(SampleId v) {
    if (auto it = neighbor_cache_.find(v); it != neighbor_cache_.end()) return it->second;

    ++stats_.neighbor_queries;
    TreeLinks links;
    links.parent = tree_.parent(v);
    links.children = tree_.children(v);
    EdgeBlacklistFn blacklist = [this, v](SampleId other) { return edge_blacklisted(v, other); };

    std::vector<SampleId> candidates;
    if (config_.neighbor_mode == NeighborMode::elliptical) {
        ChargeModel model = config_.charge;
        model.rho0 = radius_;  // repulsion horizon tied to the connection scale
        NeighborSearchParams params;
        params.k = k_;
        params.base_radius = radius_;
        params.gamma_max = config_.gamma_max;
        params.force_reference = default_force_reference(radius_, env_.dimension, model) *
                                 config_.force_reference_scale;
        params.loop_cap = config_.loop_cap;

        BestNeighborsResult result = get_best_ellipse_k_nearest(
            samples_.state(v), samples_, model, params, links, blacklist, v);
        for (std::size_t i = 0; i < result.steps.size(); ++i) {
            clock_.charge(timecost::kRegionQueryBase +
                          timecost::kRegionQueryPerCandidate * result.steps[i].total);
            if (i + 1 < result.steps.size())  // a refinement recomputed the force
                clock_.charge(timecost::kForcePairPerDim * env_.dimension *
                              result.steps[i].total);
        }
        stats_.refinement_iterations += result.steps.size() - 1;
        stats_.coincident_skips += static_cast<std::size_t>(result.coincident_skipped);
        candidates = std::move(result.neighborhood.nearest_valid);
    } else {
        const SearchEllipsoid ball =
            build_ellipsoid(StateVector(samples_.state(v).begin(), samples_.state(v).end()),
                            ForceVector(env_.dimension, 0.0), radius_, 0.0, 1.0);
        EllipseNeighborhood nb = ellipse_neighbors(samples_, ball, k_, links, blacklist, v);
        clock_.charge(timecost::kRegionQueryBase +
                      timecost::kRegionQueryPerCandidate * static_cast<double>(nb.all.size()));
        candidates = std::move(nb.nearest_valid);
    }
    return neighbor_cache_.emplace(v, std::move(candidates)).first->second;
}

void Planner::try_push_edge(SampleId source, SampleId target) {
    if (source == target) return;
    if (!samples_.alive(target) || !samples_.valid(target)) return;
    if (edge_blacklisted(source, target)) return;
    const double edge_cost = distance(source, target);
    const double g_source = tree_.g(source);
    if (!(g_source + edge_cost < tree_.g(target) - kEps)) return;
    const double h_target = h_[target];
    const double key1 = g_source + edge_cost + h_target;
    if (!(key1 < c_best_ - kEps)) return;  // also drops unreachable targets (inf key)

    QueueEdge edge;
    edge.key1 = key1;
    edge.key2 = h_target;
    edge.key3 = config_.use_effort_tiebreak ? edge_cost / env_.check_resolution : 0.0;
    edge.source = source;
    edge.target = target;
    edge.edge_cost = edge_cost;
    edge.g_source_at_push = g_source;
    queue_.push(edge);
    clock_.charge(timecost::kQueueOp);
}

void Planner::expand(SampleId v) {
    for (SampleId u : candidate_neighbors(v)) try_push_edge(v, u);
}

void Planner::record_solution_if_improved() {
    const double g_goal = tree_.g(goal_id_);
    if (g_goal + kEps < c_best_) {
        c_best_ = g_goal;
        Solution sol = extract_path(goal_id_);
        sol.wall_time = clock_.now();
        solutions_.push_back(std::move(sol));
    }
}

void Planner::process_edge(const QueueEdge& edge) {
    ++stats_.edges_processed;
    // Stale if the source left the tree or was rewired since the push.
    if (tree_.g(edge.source) != edge.g_source_at_push) return;
    if (!(edge.g_source_at_push + edge.edge_cost < tree_.g(edge.target) - kEps)) return;
    if (edge_blacklisted(edge.source, edge.target)) return;

    const bool motion_ok = checked_motion_valid(edge.source, edge.target);
    if (config_.audit_examined_edges)
        audited_motion_checks_.emplace_back(edge.source, edge.target, motion_ok);
    if (!motion_ok) {
        blacklist_.insert(edge_key(edge.source, edge.target));
        ++stats_.edges_blacklisted;
        return;
    }
    if (config_.audit_examined_edges)
        examined_valid_edges_.emplace_back(edge.source, edge.target);

    std::vector<SampleId> updated;
    tree_.attach(edge.target, edge.source, edge.edge_cost,
                 [this](SampleId a, SampleId b) { return distance(a, b); }, updated);
    record_solution_if_improved();
    for (SampleId u : updated) expand(u);
}

void Planner::forward_search() {
    neighbor_cache_.clear();
    queue_ = {};
    for (SampleId v : tree_.vertices()) {
        if (clock_.expired()) return;
        expand(v);
    }
    while (!queue_.empty() && !clock_.expired()) {
        const QueueEdge edge = queue_.top();
        if (edge.key1 >= c_best_ - kEps) break;  // nothing left can improve the incumbent
        queue_.pop();
        clock_.charge(timecost::kQueueOp);
        process_edge(edge);
    }
    queue_ = {};
}

bool Planner::run_batch() {
    if (clock_.expired()) return false;
    clock_.charge(timecost::kBatchOverhead);
    prune();
    sample_batch();
    update_connection_params();
    update_reverse_heuristic();
    forward_search();
    ++stats_.batches;
    stats_.virtual_time = clock_.now();
    return !clock_.expired();
}

PlanResult Planner::plan() {
    while (run_batch()) {
    }
    PlanResult result;
    result.solutions = solutions_;
    result.success = !solutions_.empty();
    stats_.virtual_time = clock_.now();
    result.stats = stats_;
    return result;
}

Solution Planner::extract_path(SampleId goal_vertex) const {
    Solution sol;
    for (SampleId id : tree_.path_from_root(goal_vertex)) {
        const auto s = samples_.state(id);
        sol.path.emplace_back(s.begin(), s.end());
    }
    sol.cost = tree_.g(goal_vertex);
    return sol;
}

}  // namespace fdit
