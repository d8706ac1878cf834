#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fdit/planner.hpp"

namespace fdit {

/// Point-in-time export of a planner run for rendering and audits.
struct PlannerSnapshot {
    Environment env;
    struct Vertex {
        SampleId id = 0;
        StateVector state;
        double g = 0.0;
        std::int64_t parent = -1;  // -1 at the root
    };
    std::vector<Vertex> tree;                 // tree edges are the parent links
    std::vector<StateVector> valid_samples;   // alive; includes tree vertex states
    std::vector<StateVector> invalid_samples;
    std::vector<StateVector> incumbent_path;  // empty when no solution yet
    double incumbent_cost = std::numeric_limits<double>::infinity();
    int batches = 0;
    double elapsed = 0.0;
};

PlannerSnapshot make_snapshot(const Planner& planner);

nlohmann::ordered_json snapshot_to_json(const PlannerSnapshot& snapshot);
PlannerSnapshot snapshot_from_json(const nlohmann::json& j);

void save_snapshot(const PlannerSnapshot& snapshot, const std::string& path);
PlannerSnapshot load_snapshot(const std::string& path);

}  // namespace fdit
