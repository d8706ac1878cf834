#include "fdit/environment_io.hpp"

#include <fstream>
#include <stdexcept>

namespace fdit {

nlohmann::ordered_json environment_to_json(const Environment& env) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["id"] = env.id;
    j["dimension"] = env.dimension;
    j["check_resolution"] = env.check_resolution;
    j["start"] = env.start;
    j["goal"] = env.goal;
    auto& obstacles = j["obstacles"] = nlohmann::ordered_json::array();
    for (const auto& obs : env.obstacles) {
        nlohmann::ordered_json o;
        o["min"] = obs.min_corner;
        o["max"] = obs.max_corner;
        obstacles.push_back(std::move(o));
    }
    return j;
}

Environment environment_from_json(const nlohmann::json& j) {
    if (j.at("schema").get<int>() != 1)
        throw std::runtime_error("environment: unsupported schema version");
    Environment env;
    env.id = j.at("id").get<std::string>();
    env.dimension = j.at("dimension").get<int>();
    env.check_resolution = j.at("check_resolution").get<double>();
    env.start = j.at("start").get<StateVector>();
    env.goal = j.at("goal").get<StateVector>();
    for (const auto& o : j.at("obstacles")) {
        HyperRectangle rect;
        rect.min_corner = o.at("min").get<StateVector>();
        rect.max_corner = o.at("max").get<StateVector>();
        env.obstacles.push_back(std::move(rect));
    }
    env.validate();
    return env;
}

void save_environment(const Environment& env, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write environment file: " + path);
    out << environment_to_json(env).dump(2) << '\n';
}

Environment load_environment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read environment file: " + path);
    nlohmann::json j;
    in >> j;
    return environment_from_json(j);
}

}  // namespace fdit
