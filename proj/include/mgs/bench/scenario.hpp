#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgs/core/domain.hpp"
#include "mgs/domains/grid_domain.hpp"
#include "mgs/domains/planar_arm.hpp"
#include "mgs/domains/se2_domain.hpp"
#include "mgs/io/map_io.hpp"

namespace mgs {

struct Scenario {
    std::string label;
    Config start;
    GoalCondition goal;
    std::optional<std::uint64_t> perturbation_seed;  // overrides the suite stream
};

struct PlannerSpec {
    std::string name;  // unique id in outputs
    std::string kind;  // "mgs" | "mgs2" | "wastar" | "focal"
    double epsilon{1.0};
    double weight{1.0};
    int max_subgraphs{10};
    int connect_neighbors{1};
};

struct Suite {
    std::string domain_kind;  // "grid" | "arm" | "se2"
    std::shared_ptr<Domain> domain;
    std::vector<Scenario> scenarios;
    std::vector<PlannerSpec> planners;
    int repeats{5};
    double timeout_sec{5.0};
    std::uint64_t seed{0};
};

inline std::shared_ptr<Domain> domain_from_json(const nlohmann::json& j,
                                                const std::string& base_dir = "") {
    const std::string type = j.at("type").get<std::string>();
    auto resolve = [&](const std::string& p) {
        if (!base_dir.empty() && !p.empty() && p[0] != '/') return base_dir + "/" + p;
        return p;
    };
    if (type == "grid") {
        OccupancyGrid g = j.contains("map_file")
                              ? load_map_file(resolve(j.at("map_file").get<std::string>()))
                              : map_from_string(j.at("map_inline").get<std::string>());
        return std::make_shared<GridDomain>(std::move(g));
    }
    if (type == "arm") {
        PlanarArmParams p;
        p.link_lengths = j.at("links").get<std::vector<double>>();
        if (j.contains("limits")) {
            for (const auto& lim : j.at("limits")) {
                p.joint_limits.push_back({lim.at(0).get<double>(), lim.at(1).get<double>()});
            }
        } else {
            p.joint_limits.assign(p.link_lengths.size(), {-M_PI, M_PI});
        }
        if (j.contains("obstacles")) {
            for (const auto& ob : j.at("obstacles")) {
                p.obstacles.push_back(Circle{ob.at("x").get<double>(), ob.at("y").get<double>(),
                                             ob.at("r").get<double>()});
            }
        }
        if (j.contains("resolution_short_deg"))
            p.resolution_short = j.at("resolution_short_deg").get<double>() * M_PI / 180.0;
        if (j.contains("long_ratio")) p.long_ratio = j.at("long_ratio").get<int>();
        if (j.contains("near_threshold_deg"))
            p.near_threshold = j.at("near_threshold_deg").get<double>() * M_PI / 180.0;
        if (j.contains("workspace_cell")) p.workspace_cell = j.at("workspace_cell").get<double>();
        return std::make_shared<PlanarArmDomain>(std::move(p));
    }
    if (type == "se2") {
        OccupancyGrid g = j.contains("map_file")
                              ? load_map_file(resolve(j.at("map_file").get<std::string>()))
                              : map_from_string(j.at("map_inline").get<std::string>());
        std::vector<std::array<double, 2>> fp;
        for (const auto& v : j.at("footprint")) {
            fp.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        }
        int bins = j.value("theta_bins", 16);
        return std::make_shared<Se2Domain>(std::move(g), std::move(fp), bins);
    }
    throw std::runtime_error("unknown domain type: " + type);
}

inline GoalCondition goal_from_json(const nlohmann::json& j) {
    if (j.contains("config")) {
        return GoalCondition::exact(j.at("config").get<std::vector<double>>());
    }
    if (j.contains("region")) {
        return GoalCondition::region(j.at("region").get<std::vector<double>>(),
                                     j.at("radius").get<double>());
    }
    throw std::runtime_error("goal needs either \"config\" or \"region\"+\"radius\"");
}

inline nlohmann::json goal_to_json(const GoalCondition& g) {
    nlohmann::json j;
    if (g.kind == GoalCondition::Kind::ExactConfig) {
        j["config"] = g.target;
    } else {
        j["region"] = g.center;
        j["radius"] = g.radius;
    }
    return j;
}

/// Parse a suite; scenario errors are collected and reported together.
inline Suite suite_from_json(const nlohmann::json& j, const std::string& base_dir = "") {
    Suite s;
    s.domain_kind = j.at("domain").at("type").get<std::string>();
    s.domain = domain_from_json(j.at("domain"), base_dir);
    s.repeats = j.value("repeats", 5);
    s.timeout_sec = j.value("timeout", 5.0);
    s.seed = j.value("seed", std::uint64_t{0});

    std::vector<std::string> errors;
    int idx = 0;
    for (const auto& sj : j.value("scenarios", nlohmann::json::array())) {
        try {
            Scenario sc;
            sc.label = sj.value("label", "q" + std::to_string(idx));
            sc.start = sj.at("start").get<std::vector<double>>();
            sc.goal = goal_from_json(sj.at("goal"));
            if (sj.contains("perturbation_seed")) {
                sc.perturbation_seed = sj.at("perturbation_seed").get<std::uint64_t>();
            }
            if (!s.domain->in_bounds(sc.start) || !s.domain->is_collision_free(sc.start)) {
                throw std::runtime_error("start invalid");
            }
            s.scenarios.push_back(std::move(sc));
        } catch (const std::exception& e) {
            errors.push_back("scenario " + std::to_string(idx) + ": " + e.what());
        }
        ++idx;
    }
    for (const auto& pj : j.value("planners", nlohmann::json::array())) {
        PlannerSpec p;
        p.kind = pj.at("kind").get<std::string>();
        p.name = pj.value("name", p.kind);
        p.epsilon = pj.value("epsilon", 1.0);
        p.weight = pj.value("weight", 1.0);
        p.max_subgraphs = pj.value("max_subgraphs", 10);
        p.connect_neighbors = pj.value("connect_neighbors", 1);
        s.planners.push_back(std::move(p));
    }
    if (!errors.empty()) {
        std::ostringstream os;
        os << "suite load failed for " << errors.size() << " scenario(s):";
        for (const auto& e : errors) os << "\n  " << e;
        throw std::runtime_error(os.str());
    }
    return s;
}

inline Suite load_suite_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open suite file: " + path);
    nlohmann::json j;
    in >> j;
    std::string dir = ".";
    auto slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    return suite_from_json(j, dir);
}

}  // namespace mgs
