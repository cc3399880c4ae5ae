#pragma once

#include <atomic>
#include <thread>

#include <json.hpp>

#include "mgs/bench/records.hpp"
#include "mgs/bench/scenario.hpp"
#include "mgs/roots/root_selection.hpp"
#include "mgs/search/focal_search.hpp"
#include "mgs/search/mgs.hpp"
#include "mgs/util/rng.hpp"

namespace mgs {

inline nlohmann::json plan_result_to_json(const PlanResult& r) {
    nlohmann::json j;
    j["status"] = to_string(r.status);
    j["success"] = r.success();
    j["cost"] = r.success() ? r.cost : -1.0;
    j["path"] = r.path;
    j["stats"] = {{"expansions", r.stats.expansions},
                  {"re_expansions", r.stats.re_expansions},
                  {"merges", r.stats.merges},
                  {"connect_attempts", r.stats.connect_attempts},
                  {"connect_successes", r.stats.connect_successes},
                  {"max_expansions_per_state", r.stats.max_expansions_per_state},
                  {"expansions_per_subgraph", r.stats.expansions_per_subgraph},
                  {"wall_time_sec", r.stats.wall_time_sec}};
    return j;
}

struct RunOptions {
    double timeout_sec{5.0};
    bool check_invariants{false};
    bool record_trace{false};
};

/// Execute one (planner, scenario) pair. "wastar" is focal search with
/// epsilon = 1 and weighted f; "focal" uses the epsilon band; "mgs" selects
/// roots via workspace attractors; "mgs2" is the two-graph configuration
/// rooted at the goal (bidirectional-connect analog).
inline PlanResult execute_planner(const Domain& dom, const PlannerSpec& ps, const Scenario& sc,
                                  const RunOptions& opt) {
    if (ps.kind == "wastar" || ps.kind == "focal") {
        FocalParams fp;
        fp.epsilon = ps.kind == "wastar" ? 1.0 : ps.epsilon;
        fp.weight = ps.weight;
        fp.timeout_sec = opt.timeout_sec;
        fp.check_invariants = opt.check_invariants;
        fp.record_trace = opt.record_trace;
        return FocalSearch(dom, fp).plan(sc.start, sc.goal);
    }
    MgsParams mp;
    mp.epsilon = ps.epsilon;
    mp.weight = ps.weight;
    mp.max_subgraphs = ps.kind == "mgs2" ? 2 : ps.max_subgraphs;
    mp.connect_neighbors = ps.connect_neighbors;
    mp.timeout_sec = opt.timeout_sec;
    mp.check_invariants = opt.check_invariants;
    mp.record_trace = opt.record_trace;

    std::vector<Config> roots;
    if (ps.kind == "mgs2") {
        if (sc.goal.kind == GoalCondition::Kind::ExactConfig) roots.push_back(sc.goal.target);
    } else if (mp.max_subgraphs > 1) {
        roots = get_roots(dom, sc.start, sc.goal, mp.max_subgraphs - 1).roots;
    }
    return MgsPlanner(dom, mp).plan(sc.start, sc.goal, roots);
}

inline RunRecord make_record(const PlannerSpec& ps, const Scenario& sc, int repeat,
                             const PlanResult& r) {
    RunRecord rec;
    rec.planner = ps.name;
    rec.scenario = sc.label;
    rec.repeat = repeat;
    rec.success = r.success();
    rec.status = to_string(r.status);
    rec.path_cost = r.success() ? composite_cost(r.path) : 0.0;
    rec.graph_cost = r.success() ? r.cost : 0.0;
    rec.planning_time = r.stats.wall_time_sec;
    rec.expansions = r.stats.expansions;
    rec.re_expansions = r.stats.re_expansions;
    rec.merges = r.stats.merges;
    rec.connect_attempts = r.stats.connect_attempts;
    return rec;
}

struct SuiteResult {
    std::vector<RunRecord> records;
    std::vector<MetricsSummary> summaries;
};

/// Run repeats x scenarios x planners; runs are independent and may be
/// dispatched to a worker pool. Records come back sorted, so results do not
/// depend on worker count or completion order.
inline SuiteResult run_suite(const Suite& suite, int workers = 1,
                             bool check_invariants = false) {
    struct Job {
        const PlannerSpec* planner;
        const Scenario* scenario;
        int repeat;
    };
    std::vector<Job> jobs;
    for (const auto& ps : suite.planners) {
        for (const auto& sc : suite.scenarios) {
            for (int r = 0; r < suite.repeats; ++r) jobs.push_back({&ps, &sc, r});
        }
    }
    std::vector<RunRecord> records(jobs.size());
    RunOptions opt;
    opt.timeout_sec = suite.timeout_sec;
    opt.check_invariants = check_invariants;

    auto worker = [&](std::atomic<std::size_t>& next) {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            const Job& jb = jobs[i];
            PlanResult r = execute_planner(*suite.domain, *jb.planner, *jb.scenario, opt);
            records[i] = make_record(*jb.planner, *jb.scenario, jb.repeat, r);
        }
    };
    if (workers <= 1) {
        std::atomic<std::size_t> next{0};
        worker(next);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back([&] { worker(next); });
        for (auto& th : pool) th.join();
    }

    SuiteResult out;
    out.records = std::move(records);
    sort_records(out.records);
    out.summaries = summarize(out.records);
    return out;
}

struct PerturbationResult {
    std::vector<RunRecord> records;  // scenario labels carry the perturbation index
    /// Per planner, per base query: CV of costs and times across perturbations.
    struct QueryCv {
        std::string planner;
        std::string base_label;
        double cost_cv_pct{0.0};
        double time_cv_pct{0.0};
        int solved{0};
        int total{0};
    };
    std::vector<QueryCv> per_query;
    std::vector<std::string> warnings;  // skipped scenarios
};

/// Perturb each base scenario n_perturb times with per-dimension uniform
/// noise of +-noise_steps resolution steps, resampling until valid (bounded
/// retries; exhaustion skips the scenario with a warning). Deterministic for
/// a fixed suite seed.
inline PerturbationResult perturbation_study(const Suite& suite, int n_perturb,
                                             double noise_steps = 2.0, int workers = 1) {
    PerturbationResult out;
    const auto& res = suite.domain->resolutions();

    auto perturb_config = [&](const Config& base, Rng& rng) -> std::optional<Config> {
        for (int attempt = 0; attempt < 100; ++attempt) {
            Config q = base;
            for (std::size_t d = 0; d < q.size(); ++d) {
                q[d] += rng.uniform(-noise_steps * res[d], noise_steps * res[d]);
            }
            if (suite.domain->in_bounds(q) && suite.domain->is_collision_free(q)) return q;
        }
        return std::nullopt;
    };

    Suite expanded = suite;
    expanded.scenarios.clear();
    int base_idx = 0;
    for (const auto& sc : suite.scenarios) {
        const std::uint64_t base_seed = sc.perturbation_seed
                                            ? *sc.perturbation_seed
                                            : Rng::mix(suite.seed, std::uint64_t(base_idx));
        for (int k = 0; k < n_perturb; ++k) {
            Rng rng(Rng::mix(base_seed, std::uint64_t(k)));
            Scenario p = sc;
            p.label = sc.label + "#p" + std::to_string(k);
            auto s = perturb_config(sc.start, rng);
            if (!s) {
                out.warnings.push_back(sc.label + ": start perturbation retries exhausted");
                continue;
            }
            p.start = *s;
            if (sc.goal.kind == GoalCondition::Kind::ExactConfig) {
                auto g = perturb_config(sc.goal.target, rng);
                if (!g) {
                    out.warnings.push_back(sc.label + ": goal perturbation retries exhausted");
                    continue;
                }
                p.goal = GoalCondition::exact(*g);
            } else {
                GoalCondition g = sc.goal;
                for (std::size_t d = 0; d < g.center.size(); ++d) {
                    g.center[d] += rng.uniform(-noise_steps, noise_steps);
                }
                p.goal = g;
            }
            expanded.scenarios.push_back(std::move(p));
        }
        ++base_idx;
    }
    expanded.repeats = 1;
    auto sr = run_suite(expanded, workers);
    out.records = std::move(sr.records);

    for (const auto& ps : suite.planners) {
        for (const auto& sc : suite.scenarios) {
            PerturbationResult::QueryCv qcv;
            qcv.planner = ps.name;
            qcv.base_label = sc.label;
            std::vector<double> costs, times;
            for (const auto& r : out.records) {
                if (r.planner != ps.name) continue;
                if (r.scenario.rfind(sc.label + "#p", 0) != 0) continue;
                ++qcv.total;
                if (r.success) {
                    ++qcv.solved;
                    costs.push_back(r.path_cost);
                    times.push_back(r.planning_time);
                }
            }
            qcv.cost_cv_pct = cv_percent(costs);
            qcv.time_cv_pct = cv_percent(times);
            if (qcv.total > 0) out.per_query.push_back(std::move(qcv));
        }
    }
    return out;
}

inline std::string perturbation_to_json(const PerturbationResult& pr, bool include_timing = true) {
    nlohmann::json j;
    j["warnings"] = pr.warnings;
    auto& arr = j["per_query"] = nlohmann::json::array();
    for (const auto& q : pr.per_query) {
        nlohmann::json e{{"planner", q.planner},
                         {"base", q.base_label},
                         {"cost_cv_pct", q.cost_cv_pct},
                         {"solved", q.solved},
                         {"total", q.total}};
        if (include_timing) e["time_cv_pct"] = q.time_cv_pct;
        arr.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

}  // namespace mgs
