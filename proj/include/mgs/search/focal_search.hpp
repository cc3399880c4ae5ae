#pragma once

#include <chrono>
#include <vector>

#include "mgs/core/domain.hpp"
#include "mgs/search/subgraph.hpp"

namespace mgs {

/// Bounded-suboptimal focal search over a single implicit graph.
///
/// OPEN is ordered by f = g + weight * h, FOCAL by the inadmissible focal
/// heuristic within the epsilon band. Returned costs are within
/// epsilon * weight of optimal on the induced graph. epsilon = 1 degenerates
/// to weighted A*; epsilon = 1, weight = 1 to plain A*.
struct FocalParams {
    double epsilon{1.0};
    double weight{1.0};
    double timeout_sec{5.0};  // <= 0: unlimited
    bool record_trace{false};
    bool check_invariants{false};
};

class FocalSearch {
public:
    FocalSearch(const Domain& domain, FocalParams params)
        : dom_(domain), p_(params) {}

    PlanResult plan(const Config& start, const GoalCondition& goal) {
        const auto t0 = std::chrono::steady_clock::now();
        PlanResult res;
        res.stats.expansions_per_subgraph.assign(1, 0);

        if (!dom_.in_bounds(start) || !dom_.is_collision_free(start)) {
            res.status = PlanStatus::InvalidQuery;
            return res;
        }

        QueryContext ctx{start, goal};
        seq_ = 0;
        SubGraph g(1, /*is_anchor=*/true, p_.epsilon, frontier_bucket(dom_), &seq_);
        g.root_config = start;
        g.root_key = dom_.key_of(start);

        SearchNode* root = g.ensure(g.root_key, start);
        root->g = 0.0;
        root->h = dom_.heuristic_admissible(start, goal);
        root->h_focal = dom_.heuristic_focal(start, goal);
        root->f = p_.weight * root->h;
        root->status = NodeStatus::Open;
        g.open.insert(root);
        root->queued = true;
        g.frontier.insert(root, dom_.workspace_project(start));

        std::vector<Transition> succs;
        while (!g.open.empty()) {
            if (p_.timeout_sec > 0.0) {
                double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                if (el > p_.timeout_sec) {
                    res.status = PlanStatus::Timeout;
                    break;
                }
            }
            if (p_.check_invariants) {
                res.stats.focal_violations += g.open.count_focal_violations();
            }
            SearchNode* n = g.open.pop_focal();
            n->queued = false;
            g.frontier.erase(n, dom_.workspace_project(n->config));

            if (dom_.is_goal(n->key, n->config, goal)) {
                n->status = NodeStatus::Closed;
                count_expansion(res, n, p_.record_trace);
                res.path = reconstruct_path(n->key, g.nodes);
                res.cost = n->g;
                res.status = PlanStatus::Success;
                break;
            }

            n->status = NodeStatus::Closed;
            count_expansion(res, n, p_.record_trace);
            succs.clear();
            dom_.successors(n->key, n->config, ctx, succs);
            for (const auto& t : succs) {
                g.add_edge(t.from, t.to, t.cost);
                anchor_push(g, dom_, ctx, p_.weight, t, n->key, n->g);
            }
            if (p_.check_invariants && g.frontier.size() != g.open.size()) {
                throw std::logic_error("frontier index out of sync with OPEN");
            }
        }

        res.stats.wall_time_sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.stats.expansions_per_subgraph[0] = res.stats.expansions;
        // Closed states are never reopened within a single search.
        res.stats.max_expansions_per_state = res.stats.expansions > 0 ? 1 : 0;
        return res;
    }

    static double frontier_bucket(const Domain& dom) {
        return 4.0 * dom.min_resolution();
    }

private:
    void count_expansion(PlanResult& res, SearchNode* n, bool trace) {
        ++res.stats.expansions;
        if (trace) res.trace.emplace_back(1, n->key);
    }

    const Domain& dom_;
    FocalParams p_;
    std::uint64_t seq_{0};
};

}  // namespace mgs
