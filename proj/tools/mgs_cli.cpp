// Command-line harness: single queries, benchmark suites, perturbation
// studies and attractor dumps over grid / planar-arm / se2 domains.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgs/bench/runner.hpp"
#include "mgs/viz/overlay.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> parse_csv_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

std::shared_ptr<mgs::Domain> load_domain(const std::string& domain_file,
                                         const std::string& map_file) {
    if (!domain_file.empty()) {
        std::ifstream in(domain_file);
        if (!in) throw std::runtime_error("cannot open domain file: " + domain_file);
        json j;
        in >> j;
        std::string dir = ".";
        auto slash = domain_file.find_last_of('/');
        if (slash != std::string::npos) dir = domain_file.substr(0, slash);
        return mgs::domain_from_json(j, dir);
    }
    if (!map_file.empty()) {
        return std::make_shared<mgs::GridDomain>(mgs::load_map_file(map_file));
    }
    throw std::runtime_error("need --domain or --map");
}

mgs::GoalCondition parse_goal(const std::string& goal, const std::string& region) {
    if (!goal.empty()) return mgs::GoalCondition::exact(parse_csv_doubles(goal));
    if (!region.empty()) {
        auto v = parse_csv_doubles(region);
        if (v.size() < 2) throw std::runtime_error("--goal-region needs cx,cy[,cz],radius");
        double r = v.back();
        v.pop_back();
        return mgs::GoalCondition::region(v, r);
    }
    throw std::runtime_error("need --goal or --goal-region");
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mgs-planner: multi-graph search benchmarks"};
    app.require_subcommand(1);

    // plan -----------------------------------------------------------------
    auto* plan = app.add_subcommand("plan", "solve one query");
    std::string domain_file, map_file, start_s, goal_s, region_s, planner = "mgs", out_dir;
    double epsilon = 5.0, weight = 10.0, timeout = 5.0;
    int max_subgraphs = 10, workers = 1;
    std::uint64_t seed = 0;
    plan->add_option("--domain", domain_file, "domain JSON file");
    plan->add_option("--map", map_file, "grid map file");
    plan->add_option("--start", start_s, "start configuration, comma separated")->required();
    plan->add_option("--goal", goal_s, "goal configuration, comma separated");
    plan->add_option("--goal-region", region_s, "workspace goal region cx,cy[,cz],radius");
    plan->add_option("--planner", planner, "mgs | mgs2 | wastar | focal");
    plan->add_option("--epsilon", epsilon, "focal suboptimality factor");
    plan->add_option("--weight", weight, "heuristic weight");
    plan->add_option("--max-subgraphs", max_subgraphs, "subgraph budget m");
    plan->add_option("--timeout", timeout, "seconds, 0 = unlimited");
    plan->add_option("--out", out_dir, "output directory for result + overlays");

    // bench ----------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "run a benchmark suite");
    std::string suite_file;
    int repeats = -1;
    bench->add_option("--suite", suite_file, "suite JSON")->required();
    bench->add_option("--repeats", repeats, "override suite repeats");
    bench->add_option("--workers", workers, "parallel runs");
    bench->add_option("--seed", seed, "override suite seed");
    bench->add_option("--out", out_dir, "output directory")->required();

    // perturb --------------------------------------------------------------
    auto* perturb = app.add_subcommand("perturb", "start/goal perturbation study");
    int n_perturb = 10;
    double noise = 2.0;
    perturb->add_option("--suite", suite_file, "suite JSON")->required();
    perturb->add_option("--n-perturb", n_perturb, "perturbations per query");
    perturb->add_option("--noise", noise, "noise magnitude in resolution steps");
    perturb->add_option("--workers", workers, "parallel runs");
    perturb->add_option("--seed", seed, "override suite seed");
    perturb->add_option("--out", out_dir, "output directory")->required();

    // roots ----------------------------------------------------------------
    auto* roots = app.add_subcommand("roots", "attractor / cost-field dump");
    roots->add_option("--domain", domain_file, "domain JSON file");
    roots->add_option("--map", map_file, "grid map file");
    roots->add_option("--start", start_s, "start configuration")->required();
    roots->add_option("--goal", goal_s, "goal configuration");
    roots->add_option("--goal-region", region_s, "goal region cx,cy[,cz],radius");
    roots->add_option("--max-subgraphs", max_subgraphs, "root budget is m-1");
    roots->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*plan) {
            auto dom = load_domain(domain_file, map_file);
            mgs::Scenario sc;
            sc.label = "cli";
            sc.start = parse_csv_doubles(start_s);
            sc.goal = parse_goal(goal_s, region_s);
            mgs::PlannerSpec ps;
            ps.kind = planner;
            ps.name = planner;
            ps.epsilon = epsilon;
            ps.weight = weight;
            ps.max_subgraphs = max_subgraphs;
            mgs::RunOptions opt;
            opt.timeout_sec = timeout;
            opt.record_trace = !out_dir.empty();
            auto res = mgs::execute_planner(*dom, ps, sc, opt);
            auto j = mgs::plan_result_to_json(res);
            std::cout << j.dump(2) << std::endl;
            if (!out_dir.empty()) {
                fs::create_directories(out_dir);
                write_file(fs::path(out_dir) / "result.json", j.dump(2) + "\n");
                if (auto* gd = dynamic_cast<const mgs::GridDomain*>(dom.get());
                    gd != nullptr && gd->grid().ndims() == 2) {
                    auto overlay = mgs::expansion_overlay(gd->grid(), res.trace, res.path,
                                                          dom->key_of(sc.start),
                                                          res.path.empty()
                                                              ? dom->key_of(sc.start)
                                                              : dom->key_of(res.path.back()));
                    write_file(fs::path(out_dir) / "expansions.txt", overlay);
                    mgs::expansion_ppm((fs::path(out_dir) / "expansions.ppm").string(),
                                       gd->grid(), res.trace, res.path);
                }
            }
            return res.success() ? 0 : 2;
        }

        if (*bench) {
            auto suite = mgs::load_suite_file(suite_file);
            if (repeats > 0) suite.repeats = repeats;
            if (bench->count("--seed")) suite.seed = seed;
            auto result = mgs::run_suite(suite, workers);
            fs::create_directories(out_dir);
            write_file(fs::path(out_dir) / "records.csv", mgs::records_to_csv(result.records));
            write_file(fs::path(out_dir) / "summary.json",
                       mgs::summaries_to_json(result.summaries));
            json meta{{"suite", suite_file},
                      {"seed", suite.seed},
                      {"repeats", suite.repeats},
                      {"timeout", suite.timeout_sec},
                      {"workers", workers}};
            write_file(fs::path(out_dir) / "meta.json", meta.dump(2) + "\n");
            std::cout << mgs::summaries_to_json(result.summaries);
            return 0;
        }

        if (*perturb) {
            auto suite = mgs::load_suite_file(suite_file);
            if (perturb->count("--seed")) suite.seed = seed;
            auto result = mgs::perturbation_study(suite, n_perturb, noise, workers);
            fs::create_directories(out_dir);
            write_file(fs::path(out_dir) / "perturb_records.csv",
                       mgs::records_to_csv(result.records));
            write_file(fs::path(out_dir) / "perturb_cv.json",
                       mgs::perturbation_to_json(result));
            json meta{{"suite", suite_file},
                      {"seed", suite.seed},
                      {"n_perturb", n_perturb},
                      {"noise_steps", noise},
                      {"workers", workers}};
            write_file(fs::path(out_dir) / "meta.json", meta.dump(2) + "\n");
            std::cout << mgs::perturbation_to_json(result);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
            return 0;
        }

        if (*roots) {
            auto dom = load_domain(domain_file, map_file);
            mgs::Config start = parse_csv_doubles(start_s);
            auto goal = parse_goal(goal_s, region_s);
            auto rr = mgs::get_roots(*dom, start, goal, max_subgraphs - 1);

            json j;
            j["start_reachable"] = rr.start_reachable;
            j["roots"] = rr.roots;
            auto& attr = j["attractors"] = json::array();
            for (const auto& a : rr.attractors) {
                attr.push_back({{"cell", a.workspace_cell},
                                {"config", a.config},
                                {"origin", a.origin == mgs::Attractor::Origin::Forward
                                               ? "forward"
                                               : "backward"}});
            }
            const auto* grid = dom->workspace_grid();
            if (grid != nullptr && !rr.field.g.empty()) {
                auto& cf = j["cost_field"] = json::array();
                for (double v : rr.field.g) cf.push_back(v == mgs::kInf ? -1.0 : v);
            }
            std::cout << j.dump(2) << std::endl;
            if (!out_dir.empty() && grid != nullptr && grid->ndims() == 2 &&
                !rr.field.g.empty()) {
                fs::create_directories(out_dir);
                write_file(fs::path(out_dir) / "attractors.json", j.dump(2) + "\n");
                write_file(fs::path(out_dir) / "attractors.txt",
                           mgs::attractor_overlay(*grid, rr.field));
                mgs::attractor_ppm((fs::path(out_dir) / "attractors.ppm").string(), *grid,
                                   rr.field);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
