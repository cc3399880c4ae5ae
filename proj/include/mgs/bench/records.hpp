#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mgs/bench/metrics.hpp"

namespace mgs {

struct RunRecord {
    std::string planner;
    std::string scenario;
    int repeat{0};
    bool success{false};
    std::string status;
    double path_cost{0.0};   // composite cost, 0 on failure
    double graph_cost{0.0};  // g of the goal state, 0 on failure
    double planning_time{0.0};
    std::int64_t expansions{0};
    std::int64_t re_expansions{0};
    std::int64_t merges{0};
    std::int64_t connect_attempts{0};
};

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void sort_records(std::vector<RunRecord>& rs) {
    std::sort(rs.begin(), rs.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.planner != b.planner) return a.planner < b.planner;
        if (a.scenario != b.scenario) return a.scenario < b.scenario;
        return a.repeat < b.repeat;
    });
}

/// CSV emission; timing columns are wall-clock and may be suppressed for
/// deterministic byte-for-byte comparisons.
inline std::string records_to_csv(const std::vector<RunRecord>& rs, bool include_timing = true) {
    std::ostringstream os;
    os << "planner,scenario,repeat,success,status,path_cost,graph_cost";
    if (include_timing) os << ",planning_time";
    os << ",expansions,re_expansions,merges,connect_attempts\n";
    for (const auto& r : rs) {
        os << r.planner << ',' << r.scenario << ',' << r.repeat << ',' << (r.success ? 1 : 0)
           << ',' << r.status << ',' << fmt_double(r.path_cost) << ',' << fmt_double(r.graph_cost);
        if (include_timing) os << ',' << fmt_double(r.planning_time);
        os << ',' << r.expansions << ',' << r.re_expansions << ',' << r.merges << ','
           << r.connect_attempts << "\n";
    }
    return os.str();
}

inline std::vector<RunRecord> records_from_csv(std::istream& in) {
    std::vector<RunRecord> out;
    std::string line;
    if (!std::getline(in, line)) return out;
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string f;
        while (std::getline(hs, f, ',')) header.push_back(f);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != header.size()) throw std::runtime_error("csv: ragged row");
        RunRecord r;
        for (std::size_t i = 0; i < header.size(); ++i) {
            const std::string& h = header[i];
            if (h == "planner") r.planner = f[i];
            else if (h == "scenario") r.scenario = f[i];
            else if (h == "repeat") r.repeat = std::stoi(f[i]);
            else if (h == "success") r.success = f[i] == "1";
            else if (h == "status") r.status = f[i];
            else if (h == "path_cost") r.path_cost = std::stod(f[i]);
            else if (h == "graph_cost") r.graph_cost = std::stod(f[i]);
            else if (h == "planning_time") r.planning_time = std::stod(f[i]);
            else if (h == "expansions") r.expansions = std::stoll(f[i]);
            else if (h == "re_expansions") r.re_expansions = std::stoll(f[i]);
            else if (h == "merges") r.merges = std::stoll(f[i]);
            else if (h == "connect_attempts") r.connect_attempts = std::stoll(f[i]);
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Aggregate sorted records into one MetricsSummary per planner. Pure and
/// deterministic: recomputing from re-parsed CSV reproduces the values.
inline std::vector<MetricsSummary> summarize(std::vector<RunRecord> rs) {
    sort_records(rs);
    std::set<std::string> planner_names;
    for (const auto& r : rs) planner_names.insert(r.planner);

    // cost per (planner, scenario) over repeats; only successful runs carry costs
    std::map<std::string, std::map<std::string, std::vector<double>>> costs;
    std::map<std::string, std::map<std::string, std::vector<double>>> all_runs_by_scenario;
    for (const auto& r : rs) {
        all_runs_by_scenario[r.planner][r.scenario].push_back(r.success ? 1.0 : 0.0);
        if (r.success) costs[r.planner][r.scenario].push_back(r.path_cost);
    }

    std::vector<MetricsSummary> out;
    for (const auto& name : planner_names) {
        MetricsSummary m;
        m.planner = name;
        std::vector<double> succ_costs, succ_times, all_times, query_cvs;
        for (const auto& r : rs) {
            if (r.planner != name) continue;
            ++m.runs;
            all_times.push_back(r.planning_time);
            if (r.success) {
                ++m.successes;
                succ_costs.push_back(r.path_cost);
                succ_times.push_back(r.planning_time);
            }
        }
        m.success_rate_pct = m.runs ? 100.0 * m.successes / m.runs : 0.0;
        m.mean_cost_successful = mean(succ_costs);
        m.mean_time_successful = mean(succ_times);
        m.mean_time_all = mean(all_times);
        for (const auto& [scen, cs] : costs[name]) {
            const auto& all = all_runs_by_scenario[name][scen];
            if (cs.size() == all.size() && cs.size() >= 2) query_cvs.push_back(cv_percent(cs));
        }
        m.cost_cv_pct = mean(query_cvs);
        // Pairwise relative cost on queries where both planners succeeded,
        // using each planner's mean successful cost per query.
        for (const auto& other : planner_names) {
            if (other == name) continue;
            std::vector<double> ratios;
            for (const auto& [scen, cs] : costs[name]) {
                auto it = costs[other].find(scen);
                if (it == costs[other].end() || it->second.empty() || cs.empty()) continue;
                const double denom = mean(it->second);
                if (denom > 0.0) ratios.push_back(mean(cs) / denom);
            }
            if (!ratios.empty()) m.pairwise_relative_cost[other] = mean(ratios);
        }
        out.push_back(std::move(m));
    }
    return out;
}

inline std::string summaries_to_json(const std::vector<MetricsSummary>& ms,
                                     bool include_timing = true) {
    std::ostringstream os;
    os << "{\n  \"planners\": [\n";
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto& m = ms[i];
        os << "    {\n";
        os << "      \"planner\": \"" << m.planner << "\",\n";
        os << "      \"runs\": " << m.runs << ",\n";
        os << "      \"successes\": " << m.successes << ",\n";
        os << "      \"success_rate_pct\": " << fmt_double(m.success_rate_pct) << ",\n";
        os << "      \"mean_cost_successful\": " << fmt_double(m.mean_cost_successful) << ",\n";
        os << "      \"cost_cv_pct\": " << fmt_double(m.cost_cv_pct) << ",\n";
        if (include_timing) {
            os << "      \"mean_time_successful\": " << fmt_double(m.mean_time_successful)
               << ",\n";
            os << "      \"mean_time_all\": " << fmt_double(m.mean_time_all) << ",\n";
        }
        os << "      \"pairwise_relative_cost\": {";
        bool first = true;
        for (const auto& [other, v] : m.pairwise_relative_cost) {
            if (!first) os << ", ";
            os << "\"" << other << "\": " << fmt_double(v);
            first = false;
        }
        os << "}\n    }" << (i + 1 < ms.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

}  // namespace mgs
