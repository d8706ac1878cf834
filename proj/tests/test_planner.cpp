#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "fdit/planner.hpp"

using namespace fdit;

namespace {

Environment free_world(int dim) { return make_random_rectangles(dim, 0, 0.1, 0.2, 0); }

PlannerConfig quick_config(double budget, std::uint64_t seed = 1) {
    PlannerConfig config;
    config.time_budget = budget;
    config.seed = seed;
    return config;
}

double path_length(const std::vector<StateVector>& path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i)
        total += euclidean_distance(path[i - 1], path[i]);
    return total;
}

}  // namespace

TEST_CASE("free world converges close to the straight line") {
    const Environment env = free_world(2);
    Planner planner(env, quick_config(0.3));
    const PlanResult result = planner.plan();
    REQUIRE(result.success);
    const double straight = euclidean_distance(env.start, env.goal);
    CHECK(result.solutions.back().cost <= 1.02 * straight);
    CHECK(result.solutions.back().cost >= straight - 1e-12);  // lower bound
}

TEST_CASE("disconnected world yields an empty stream, not an error") {
    const Environment env = make_dividing_wall(2, {});  // no gaps
    Planner planner(env, quick_config(0.05));
    const PlanResult result = planner.plan();
    CHECK_FALSE(result.success);
    CHECK(result.solutions.empty());
    CHECK(result.stats.batches > 0);
}

TEST_CASE("batch accounting without an incumbent") {
    // Blocked world: no solution ever, so nothing is pruned and the store
    // grows by exactly the batch size every cycle.
    const Environment env = make_dividing_wall(2, {});
    PlannerConfig config = quick_config(10.0);
    config.batch_size = 150;
    Planner planner(env, config);

    std::size_t expected = 2;  // start and goal
    for (int batch = 1; batch <= 3; ++batch) {
        planner.run_batch();
        expected += 150;
        CHECK(planner.stats().samples_drawn == static_cast<std::size_t>(batch) * 150);
        CHECK(planner.samples().alive_count() == expected);
        CHECK(planner.stats().pruned_samples == 0);
    }
}

TEST_CASE("stored invalid samples all fail the validity check") {
    const Environment env = make_dividing_wall(2, default_dividing_wall_gaps());
    Planner planner(env, quick_config(10.0));
    planner.run_batch();
    planner.run_batch();
    const auto invalid = planner.samples().alive_ids(Polarity::negative);
    CHECK(!invalid.empty());
    for (SampleId id : invalid) CHECK_FALSE(is_state_valid(env, planner.samples().state(id)));
    const auto valid = planner.samples().alive_ids(Polarity::positive);
    for (SampleId id : valid) CHECK(is_state_valid(env, planner.samples().state(id)));
}

TEST_CASE("reverse heuristic matches an independent shortest-path recomputation") {
    const Environment env = make_dividing_wall(2, default_dividing_wall_gaps());
    PlannerConfig config = quick_config(10.0, 3);
    Planner planner(env, config);
    planner.run_batch();

    CHECK(planner.heuristic(planner.goal_id()) == 0.0);

    // Standalone Dijkstra over the same radius graph (no collision checks).
    const SampleSet& samples = planner.samples();
    const double reach = planner.connection_radius() * (1.0 + config.gamma_max);
    const auto valid_ids = samples.alive_ids(Polarity::positive);
    std::map<SampleId, double> dist;
    for (SampleId id : valid_ids) dist[id] = std::numeric_limits<double>::infinity();
    dist[planner.goal_id()] = 0.0;
    std::vector<SampleId> open = valid_ids;
    std::vector<SampleId> settled;
    while (!open.empty()) {
        auto best = std::min_element(open.begin(), open.end(), [&](SampleId a, SampleId b) {
            return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
        });
        const SampleId u = *best;
        open.erase(best);
        if (!std::isfinite(dist[u])) break;
        for (SampleId v : valid_ids) {
            if (v == u) continue;
            const double d = euclidean_distance(samples.state(u), samples.state(v));
            if (d <= reach && dist[u] + d < dist[v]) dist[v] = dist[u] + d;
        }
    }
    for (SampleId id : valid_ids) {
        if (std::isfinite(dist[id]))
            CHECK(planner.heuristic(id) == doctest::Approx(dist[id]).epsilon(1e-9));
        else
            CHECK_FALSE(std::isfinite(planner.heuristic(id)));
    }
}

TEST_CASE("reverse heuristic lower-bounds the goal distance in free space") {
    const Environment env = free_world(2);
    Planner planner(env, quick_config(10.0, 5));
    planner.run_batch();
    for (SampleId id : planner.samples().alive_ids(Polarity::positive)) {
        const double h = planner.heuristic(id);
        if (!std::isfinite(h)) continue;
        CHECK(h >= euclidean_distance(planner.samples().state(id), env.goal) - 1e-9);
    }
}

TEST_CASE("extract_path") {
    const Environment env = free_world(2);
    Planner planner(env, quick_config(0.2, 11));

    // Root-only path before any batch.
    const Solution trivial = planner.extract_path(planner.start_id());
    CHECK(trivial.path.size() == 1);
    CHECK(trivial.cost == 0.0);
    CHECK_THROWS_AS(planner.extract_path(planner.goal_id()), std::invalid_argument);

    const PlanResult result = planner.plan();
    REQUIRE(result.success);
    for (const Solution& sol : result.solutions) {
        CHECK(sol.path.front() == env.start);
        CHECK(sol.path.back() == env.goal);
        CHECK(path_length(sol.path) == doctest::Approx(sol.cost).epsilon(1e-12));
    }
}

TEST_CASE("anytime costs strictly decrease and paths revalidate finer") {
    const Environment env = make_dividing_wall(2, default_dividing_wall_gaps());
    Planner planner(env, quick_config(0.25, 17));
    const PlanResult result = planner.plan();
    REQUIRE(result.success);
    for (std::size_t i = 1; i < result.solutions.size(); ++i)
        CHECK(result.solutions[i].cost < result.solutions[i - 1].cost);
    for (const Solution& sol : result.solutions) {
        CHECK(sol.wall_time <= planner.elapsed());
        for (std::size_t i = 1; i < sol.path.size(); ++i)
            CHECK(is_motion_valid(env, sol.path[i - 1], sol.path[i],
                                  env.check_resolution / 10.0));
    }
}

TEST_CASE("tree stays g-consistent across batches") {
    const Environment env = make_dividing_wall(2, default_dividing_wall_gaps());
    Planner planner(env, quick_config(10.0, 23));
    const SampleSet& samples = planner.samples();
    auto edge_cost = [&](SampleId a, SampleId b) {
        return euclidean_distance(samples.state(a), samples.state(b));
    };
    for (int batch = 0; batch < 4; ++batch) {
        planner.run_batch();
        CHECK(planner.tree().g_consistent(edge_cost, 1e-15));
    }
}

TEST_CASE("identical configuration replays bit-identically") {
    const Environment env = make_dividing_wall(4, default_dividing_wall_gaps());
    const PlannerConfig config = quick_config(0.08, 99);
    Planner a(env, config);
    Planner b(env, config);
    const PlanResult ra = a.plan();
    const PlanResult rb = b.plan();
    REQUIRE(ra.solutions.size() == rb.solutions.size());
    for (std::size_t i = 0; i < ra.solutions.size(); ++i) {
        CHECK(ra.solutions[i].cost == rb.solutions[i].cost);            // bit-exact
        CHECK(ra.solutions[i].wall_time == rb.solutions[i].wall_time);  // bit-exact
        CHECK(ra.solutions[i].path == rb.solutions[i].path);
    }
    CHECK(ra.stats.samples_drawn == rb.stats.samples_drawn);
    CHECK(ra.stats.edges_processed == rb.stats.edges_processed);
    CHECK(ra.stats.virtual_time == rb.stats.virtual_time);
}

TEST_CASE("spherical mode is the same pipeline with the neighbor rule swapped") {
    // Obstacle-free world: no invalid samples, so the force loop never runs;
    // with gamma_max = 0 every elliptical query degenerates to the ball and
    // the two modes must behave identically.
    const Environment env = free_world(4);
    PlannerConfig config = quick_config(0.15, 31);
    config.gamma_max = 0.0;

    config.neighbor_mode = NeighborMode::elliptical;
    Planner elliptical(env, config);
    const PlanResult re = elliptical.plan();

    config.neighbor_mode = NeighborMode::spherical;
    Planner spherical(env, config);
    const PlanResult rs = spherical.plan();

    REQUIRE(re.success);
    REQUIRE(rs.success);
    CHECK(re.solutions.front().cost == rs.solutions.front().cost);  // bit-exact
    REQUIRE(re.solutions.size() == rs.solutions.size());
    for (std::size_t i = 0; i < re.solutions.size(); ++i)
        CHECK(re.solutions[i].path == rs.solutions[i].path);
}

TEST_CASE("an invalid edge is checked once, blacklisted, and never re-queued") {
    const Environment env = make_dividing_wall(2, default_dividing_wall_gaps());
    PlannerConfig config = quick_config(0.15, 41);
    config.audit_examined_edges = true;
    Planner planner(env, config);
    planner.plan();

    CHECK(planner.stats().edges_blacklisted > 0);
    std::map<std::pair<SampleId, SampleId>, int> invalid_check_counts;
    for (const auto& [a, b, ok] : planner.audited_motion_checks()) {
        if (ok) continue;
        const auto key = std::minmax(a, b);
        ++invalid_check_counts[{key.first, key.second}];
    }
    for (const auto& [edge, count] : invalid_check_counts) CHECK(count == 1);
}

TEST_CASE("post-hoc local-optimality audit on a small instance") {
    const Environment env = make_random_rectangles(2, 6, 0.1, 0.25, 13);
    PlannerConfig config = quick_config(10.0, 43);
    config.batch_size = 80;
    config.audit_examined_edges = true;
    Planner planner(env, config);
    for (int i = 0; i < 3; ++i) planner.run_batch();  // full batches, never truncated

    const SampleSet& samples = planner.samples();
    const ForwardTree& tree = planner.tree();
    const double c_best = planner.incumbent_cost();

    // Over the final neighbor sets, no previously examined motion-valid edge
    // may still offer an improvement the informed search was allowed to take.
    std::set<std::pair<SampleId, SampleId>> examined(planner.examined_valid_edges().begin(),
                                                     planner.examined_valid_edges().end());
    for (const auto& [u, candidates] : planner.neighbor_cache()) {
        if (!tree.contains(u)) continue;
        for (SampleId v : candidates) {
            if (!examined.count({u, v})) continue;
            if (!samples.alive(v)) continue;
            const double c = euclidean_distance(samples.state(u), samples.state(v));
            const bool improving = tree.g(u) + c < tree.g(v) - 1e-9;
            const bool admissible = tree.g(u) + c + planner.heuristic(v) < c_best - 1e-9;
            CHECK_FALSE((improving && admissible));
        }
    }
}

TEST_CASE("pruning respects the incumbent bound") {
    const Environment env = make_dividing_wall(2, default_dividing_wall_gaps());
    Planner planner(env, quick_config(10.0, 51));
    planner.run_batch();
    planner.run_batch();
    REQUIRE(std::isfinite(planner.incumbent_cost()));

    // The prune pass and this batch's informed sampling both use the incumbent
    // from the start of the batch (the search may improve on it mid-batch).
    const double bound_used = planner.incumbent_cost();
    planner.run_batch();
    for (SampleId id = 0; id < planner.samples().id_count(); ++id) {
        if (!planner.samples().alive(id)) continue;
        const double bound = euclidean_distance(planner.samples().state(id), env.start) +
                             euclidean_distance(planner.samples().state(id), env.goal);
        CHECK(bound <= bound_used + 1e-9);
    }
    CHECK(planner.stats().pruned_samples > 0);
}
