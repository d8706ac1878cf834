#include "fdit/snapshot.hpp"

#include <fstream>

#include "fdit/environment_io.hpp"

namespace fdit {

PlannerSnapshot make_snapshot(const Planner& planner) {
    PlannerSnapshot snap;
    snap.env = planner.environment();
    const SampleSet& samples = planner.samples();
    const ForwardTree& tree = planner.tree();

    for (SampleId id : tree.vertices()) {
        PlannerSnapshot::Vertex v;
        v.id = id;
        const auto s = samples.state(id);
        v.state.assign(s.begin(), s.end());
        v.g = tree.g(id);
        const auto parent = tree.parent(id);
        v.parent = parent ? static_cast<std::int64_t>(*parent) : -1;
        snap.tree.push_back(std::move(v));
    }
    for (SampleId id : samples.alive_ids(Polarity::positive)) {
        const auto s = samples.state(id);
        snap.valid_samples.emplace_back(s.begin(), s.end());
    }
    for (SampleId id : samples.alive_ids(Polarity::negative)) {
        const auto s = samples.state(id);
        snap.invalid_samples.emplace_back(s.begin(), s.end());
    }
    if (!planner.solutions().empty()) {
        snap.incumbent_path = planner.solutions().back().path;
        snap.incumbent_cost = planner.solutions().back().cost;
    }
    snap.batches = planner.stats().batches;
    snap.elapsed = planner.elapsed();
    return snap;
}

namespace {

nlohmann::ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double null_or_finite(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

}  // namespace

nlohmann::ordered_json snapshot_to_json(const PlannerSnapshot& snapshot) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["env"] = environment_to_json(snapshot.env);
    auto& tree = j["tree"] = nlohmann::ordered_json::array();
    for (const auto& v : snapshot.tree) {
        nlohmann::ordered_json vertex;
        vertex["id"] = v.id;
        vertex["state"] = v.state;
        vertex["g"] = v.g;
        vertex["parent"] = v.parent;
        tree.push_back(std::move(vertex));
    }
    j["valid_samples"] = snapshot.valid_samples;
    j["invalid_samples"] = snapshot.invalid_samples;
    j["incumbent_path"] = snapshot.incumbent_path;
    j["incumbent_cost"] = finite_or_null(snapshot.incumbent_cost);
    j["batches"] = snapshot.batches;
    j["elapsed"] = snapshot.elapsed;
    return j;
}

PlannerSnapshot snapshot_from_json(const nlohmann::json& j) {
    if (j.at("schema").get<int>() != 1)
        throw std::runtime_error("snapshot: unsupported schema version");
    PlannerSnapshot snap;
    snap.env = environment_from_json(j.at("env"));
    for (const auto& v : j.at("tree")) {
        PlannerSnapshot::Vertex vertex;
        vertex.id = v.at("id").get<SampleId>();
        vertex.state = v.at("state").get<StateVector>();
        vertex.g = v.at("g").get<double>();
        vertex.parent = v.at("parent").get<std::int64_t>();
        snap.tree.push_back(std::move(vertex));
    }
    snap.valid_samples = j.at("valid_samples").get<std::vector<StateVector>>();
    snap.invalid_samples = j.at("invalid_samples").get<std::vector<StateVector>>();
    snap.incumbent_path = j.at("incumbent_path").get<std::vector<StateVector>>();
    snap.incumbent_cost = null_or_finite(j.at("incumbent_cost"));
    snap.batches = j.at("batches").get<int>();
    snap.elapsed = j.at("elapsed").get<double>();
    return snap;
}

void save_snapshot(const PlannerSnapshot& snapshot, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write snapshot file: " + path);
    out << snapshot_to_json(snapshot).dump(2) << '\n';
}

PlannerSnapshot load_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read snapshot file: " + path);
    nlohmann::json j;
    in >> j;
    return snapshot_from_json(j);
}

}  // namespace fdit
