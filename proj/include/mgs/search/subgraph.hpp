#pragma once

#include <cstdint>
#include <memory>
#include <queue>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "mgs/core/domain.hpp"
#include "mgs/search/focal_queue.hpp"
#include "mgs/search/frontier_index.hpp"
#include "mgs/search/node.hpp"

namespace mgs {

struct Edge {
    StateKey to;
    double cost;
};

/// One rooted search: node store, discovered edges, queue and frontier index.
/// The anchor (id 1) runs OPEN/FOCAL; connect searches run a single OPEN
/// ordered by h_connect. Each subgraph owns its own node records; duplicate
/// states across subgraphs are permitted until a merge unifies them.
class SubGraph {
public:
    SubGraph(int id_, bool is_anchor, double epsilon, double frontier_bucket,
             std::uint64_t* seq_counter)
        : id(id_),
          anchor(is_anchor),
          open(epsilon),
          frontier(frontier_bucket),
          seq_(seq_counter) {}

    int id;
    bool alive{true};
    bool anchor;
    Config root_config;
    StateKey root_key;

    NodeMap nodes;
    std::vector<StateKey> insertion_order;  // deterministic traversal for merges
    std::unordered_map<StateKey, std::vector<Edge>, StateKeyHash> adj;

    DualQueue open;  // anchor only
    std::set<std::tuple<double, std::uint64_t, SearchNode*>> copen;  // connect only
    FrontierIndex frontier;

    SearchNode* find(const StateKey& k) {
        auto it = nodes.find(k);
        return it == nodes.end() ? nullptr : &it->second;
    }
    const SearchNode* find(const StateKey& k) const {
        auto it = nodes.find(k);
        return it == nodes.end() ? nullptr : &it->second;
    }

    SearchNode* ensure(const StateKey& k, const Config& q) {
        auto [it, inserted] = nodes.try_emplace(k);
        if (inserted) {
            it->second.key = k;
            it->second.config = q;
            it->second.seq = ++(*seq_);
            insertion_order.push_back(k);
        }
        return &it->second;
    }

    /// Undirected edge; parallel discoveries keep the cheaper cost.
    void add_edge(const StateKey& u, const StateKey& v, double cost) {
        add_half_edge(u, v, cost);
        add_half_edge(v, u, cost);
    }

    void connect_queue_insert(SearchNode* n) {
        copen.emplace(n->h_connect, n->seq, n);
        n->queued = true;
    }
    void connect_queue_erase(SearchNode* n) {
        copen.erase({n->h_connect, n->seq, n});
        n->queued = false;
    }

    bool queue_empty() const { return anchor ? open.empty() : copen.empty(); }

    void release_storage() {
        nodes.clear();
        insertion_order.clear();
        adj.clear();
        copen.clear();
    }

private:
    void add_half_edge(const StateKey& u, const StateKey& v, double cost) {
        auto& edges = adj[u];
        for (auto& e : edges) {
            if (e.to == v) {
                if (cost < e.cost) e.cost = cost;
                return;
            }
        }
        edges.push_back(Edge{v, cost});
    }

    std::uint64_t* seq_;
};

enum class PushOutcome { Inserted, Improved, Ignored };

/// Propagate a g improvement through the discovered edges to quiescence,
/// keeping every (g, parent, parent_cost) chain sum-consistent. Statuses are
/// untouched: closed states stay closed, queued states get repositioned.
inline void cascade_improvements(SubGraph& g, double weight, SearchNode* src) {
    using QE = std::tuple<double, std::uint64_t, SearchNode*>;
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    pq.push({src->g, src->seq, src});
    while (!pq.empty()) {
        auto [gv, seq, n] = pq.top();
        pq.pop();
        if (gv != n->g) continue;
        auto it = g.adj.find(n->key);
        if (it == g.adj.end()) continue;
        for (const Edge& e : it->second) {
            SearchNode* m = g.find(e.to);
            const double cand = n->g + e.cost;
            if (cand < m->g) {
                const double old_f = m->f;
                m->g = cand;
                m->parent = n->key;
                m->parent_cost = e.cost;
                m->has_parent = true;
                if (g.anchor) {
                    m->f = m->g + weight * m->h;
                    if (m->queued) g.open.reposition(m, old_f);
                }
                pq.push({m->g, m->seq, m});
            }
        }
    }
}

/// Relax one transition into an anchor-style subgraph: insert unseen states
/// with f = g + w*h, improve OPEN states on a strictly smaller g, ignore the
/// rest. Closed states are never reopened here; only merges may resurrect
/// them. FOCAL membership is re-evaluated against the current f_min.
inline PushOutcome anchor_push(SubGraph& g, const Domain& dom, const QueryContext& ctx,
                               double weight, const Transition& t, const StateKey& parent_key,
                               double parent_g) {
    const double g_new = parent_g + t.cost;
    SearchNode* n = g.find(t.to);
    if (n == nullptr) {
        n = g.ensure(t.to, t.to_config);
        n->g = g_new;
        n->h = dom.heuristic_admissible(n->config, ctx.goal);
        n->h_focal = dom.heuristic_focal(n->config, ctx.goal);
        n->f = n->g + weight * n->h;
        n->parent = parent_key;
        n->parent_cost = t.cost;
        n->has_parent = true;
        n->status = NodeStatus::Open;
        g.open.insert(n);
        n->queued = true;
        g.frontier.insert(n, dom.workspace_project(n->config));
        return PushOutcome::Inserted;
    }
    if (n->status == NodeStatus::Closed) return PushOutcome::Ignored;
    if (g_new < n->g) {
        const double old_f = n->f;
        n->g = g_new;
        n->f = n->g + weight * n->h;
        n->parent = parent_key;
        n->parent_cost = t.cost;
        n->has_parent = true;
        if (n->queued) g.open.reposition(n, old_f);
        cascade_improvements(g, weight, n);
        return PushOutcome::Improved;
    }
    return PushOutcome::Ignored;
}

}  // namespace mgs
