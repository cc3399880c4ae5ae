#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "mgs/core/domain.hpp"
#include "mgs/search/focal_search.hpp"
#include "mgs/search/subgraph.hpp"

namespace mgs {

struct MgsParams {
    int max_subgraphs{10};        // m, anchor included
    double epsilon{5.0};          // focal band of the anchor
    double weight{10.0};          // admissible-heuristic inflation
    int connect_neighbors{1};     // k nearest frontier states per target
    double interpolation_step{0.0};  // <= 0: smallest domain resolution
    double timeout_sec{5.0};         // <= 0: unlimited
    bool record_trace{false};
    bool check_invariants{false};
};

/// A successful connection attempt: a collision-free interpolated path from a
/// state of one subgraph to a frontier state of another.
struct ConnectionRecord {
    StateKey from_state;
    StateKey to_state;
    int to_graph{0};
    std::vector<Config> path;  // waypoints, from_state config first
    double path_cost{0.0};
};

/// Multi-Graph Search: an anchor focal search from the start plus connect
/// searches rooted at key states. Connect searches expand toward the
/// frontiers of other subgraphs (front-to-front distance) and merge on
/// contact; only the anchor may declare a solution, which keeps the
/// epsilon * weight suboptimality bound of the anchor's focal search.
class MgsPlanner {
public:
    MgsPlanner(const Domain& domain, MgsParams params) : dom_(domain), p_(params) {
        if (p_.max_subgraphs < 1) throw std::invalid_argument("max_subgraphs must be >= 1");
        if (!(p_.epsilon >= 1.0)) throw std::invalid_argument("epsilon must be >= 1");
        if (!(p_.weight >= 1.0)) throw std::invalid_argument("weight must be >= 1");
        if (p_.connect_neighbors < 1) throw std::invalid_argument("connect_neighbors must be >= 1");
    }

    PlanResult plan(const Config& start, const GoalCondition& goal,
                    const std::vector<Config>& roots) {
        const auto t0 = std::chrono::steady_clock::now();
        PlanResult res;
        if (!init_query(start, goal, roots)) {
            res.status = PlanStatus::InvalidQuery;
            res.stats = stats_;
            return res;
        }
        deadline_active_ = p_.timeout_sec > 0.0;
        deadline_ = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(p_.timeout_sec));

        while (!anchor().open.empty()) {
            if (timed_out()) {
                res.status = PlanStatus::Timeout;
                break;
            }
            if (phase1(res)) break;
            phase2();
        }

        res.stats = stats_;
        res.stats.wall_time_sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        res.trace = std::move(trace_);
        return res;
    }

    // ------------------------------------------------------------------
    // Query lifecycle pieces, public so tests can drive them directly.
    // ------------------------------------------------------------------

    bool init_query(const Config& start, const GoalCondition& goal,
                    const std::vector<Config>& roots) {
        pool_.clear();
        home_.clear();
        pop_count_.clear();
        trace_.clear();
        stats_ = PlanStats{};
        seq_ = 0;

        if (!dom_.in_bounds(start) || !dom_.is_collision_free(start)) return false;
        for (const auto& r : roots) {
            if (!dom_.in_bounds(r) || !dom_.is_collision_free(r)) return false;
        }
        ctx_ = QueryContext{start, goal};
        interp_step_ = p_.interpolation_step > 0.0 ? p_.interpolation_step : dom_.min_resolution();
        const double bucket = FocalSearch::frontier_bucket(dom_);

        auto a = std::make_unique<SubGraph>(1, /*anchor=*/true, p_.epsilon, bucket, &seq_);
        a->root_config = start;
        a->root_key = dom_.key_of(start);
        SearchNode* root = a->ensure(a->root_key, start);
        root->g = 0.0;
        root->h = dom_.heuristic_admissible(start, goal);
        root->h_focal = dom_.heuristic_focal(start, goal);
        root->f = p_.weight * root->h;
        root->status = NodeStatus::Open;
        a->open.insert(root);
        root->queued = true;
        a->frontier.insert(root, dom_.workspace_project(start));
        pool_.push_back(std::move(a));

        // Connect searches, deduplicated by discrete key, capped at m - 1.
        std::vector<StateKey> seen{pool_[0]->root_key};
        for (const auto& r : roots) {
            if (static_cast<int>(pool_.size()) >= p_.max_subgraphs) break;
            StateKey k = dom_.key_of(r);
            bool dup = false;
            for (const auto& s : seen) dup = dup || (s == k);
            if (dup) continue;
            seen.push_back(k);
            int id = static_cast<int>(pool_.size()) + 1;
            auto g = std::make_unique<SubGraph>(id, /*anchor=*/false, 1.0, bucket, &seq_);
            g->root_config = r;
            g->root_key = k;
            SearchNode* rn = g->ensure(k, r);
            rn->g = 0.0;
            rn->status = NodeStatus::Open;
            g->frontier.insert(rn, dom_.workspace_project(r));
            pool_.push_back(std::move(g));
        }
        // Root h_connect values need every frontier in place first.
        for (std::size_t i = 1; i < pool_.size(); ++i) {
            SearchNode* rn = pool_[i]->find(pool_[i]->root_key);
            rn->h_connect = connect_heuristic(*rn, pool_[i]->id);
            pool_[i]->connect_queue_insert(rn);
        }
        stats_.expansions_per_subgraph.assign(pool_.size(), 0);
        return true;
    }

    SubGraph& graph(int id) { return *pool_[id - 1]; }
    SubGraph& anchor() { return *pool_[0]; }

    /// One main-loop iteration after init_query, without termination
    /// handling; returns false once the anchor is exhausted or a solution
    /// would have been emitted. Test hook.
    bool step_for_testing() {
        if (anchor().open.empty()) return false;
        deadline_active_ = false;
        PlanResult res;
        if (phase1(res)) return false;
        phase2();
        return true;
    }
    bool alive(int id) const {
        return id >= 1 && id <= static_cast<int>(pool_.size()) && pool_[id - 1]->alive;
    }
    std::size_t pool_size() const { return pool_.size(); }
    int live_subgraphs() const {
        int n = 0;
        for (const auto& g : pool_) n += g->alive ? 1 : 0;
        return n;
    }
    const PlanStats& stats() const { return stats_; }

    /// Invoked at the end of every merge with the receiver id and the keys
    /// transferred from the donor. Instrumentation hook for merge audits.
    std::function<void(MgsPlanner&, int, const std::vector<StateKey>&)> on_merge;

    /// Front-to-front heuristic: distance from s to the nearest frontier state
    /// of any other live subgraph; +inf when all other frontiers are empty.
    double connect_heuristic(const SearchNode& s, int owner_id) const {
        const auto proj = dom_.workspace_project(s.config);
        double best = kInf;
        for (const auto& up : pool_) {
            if (!up->alive || up->id == owner_id || up->frontier.empty()) continue;
            auto hit = up->frontier.nearest(proj);
            if (hit && hit->dist < best) best = hit->dist;
        }
        return best;
    }

    /// For each other subgraph, attempt the k = connect_neighbors nearest
    /// frontier states in distance order and record the first whose
    /// straight-line interpolation is collision-free. At most one record per
    /// target subgraph; a blocked interpolation simply yields none.
    std::vector<ConnectionRecord> try_to_connect(const SearchNode& q, int owner_id) {
        std::vector<ConnectionRecord> out;
        const auto proj = dom_.workspace_project(q.config);
        std::vector<FrontierIndex::Hit> hits;
        for (const auto& up : pool_) {
            if (!up->alive || up->id == owner_id || up->frontier.empty()) continue;
            up->frontier.k_nearest(proj, p_.connect_neighbors, hits);
            for (const auto& h : hits) {
                ++stats_.connect_attempts;
                if (!dom_.is_edge_collision_free(q.config, h.node->config, interp_step_)) continue;
                ConnectionRecord rec;
                rec.from_state = q.key;
                rec.to_state = h.node->key;
                rec.to_graph = up->id;
                rec.path = sample_path(q.config, h.node->config);
                rec.path_cost = 0.0;
                for (std::size_t i = 0; i + 1 < rec.path.size(); ++i) {
                    rec.path_cost += dom_.segment_cost(rec.path[i], rec.path[i + 1]);
                }
                ++stats_.connect_successes;
                out.push_back(std::move(rec));
                break;
            }
        }
        return out;
    }

    /// The anchor always receives; otherwise the subgraph whose root is
    /// closer to the start (admissible-heuristic distance) receives, ties to
    /// the lower id. Returns (receiver, donor).
    std::pair<int, int> choose_merging_order(int gi, int gj) const {
        if (gi == 1) return {gi, gj};
        if (gj == 1) return {gj, gi};
        const GoalCondition to_start = GoalCondition::exact(ctx_.start);
        double di = dom_.heuristic_admissible(pool_[gi - 1]->root_config, to_start);
        double dj = dom_.heuristic_admissible(pool_[gj - 1]->root_config, to_start);
        if (di < dj) return {gi, gj};
        if (dj < di) return {gj, gi};
        return gi < gj ? std::make_pair(gi, gj) : std::make_pair(gj, gi);
    }

    /// Absorb the donor into the receiver at merge_point. Donor states and
    /// edges transfer; g-values are then repaired to quiescence so every
    /// receiver g equals the shortest discovered-path cost given the
    /// receiver's seeds. When the receiver is the anchor, every transferred
    /// state enters OPEN (donor-closed ones included) so it may be
    /// re-expanded under the anchor's ordering; connect-connect merges
    /// preserve closed status.
    void merge_subgraphs(int recv_id, int donor_id, const StateKey& merge_point) {
        if (recv_id == donor_id) throw std::logic_error("merge: receiver == donor");
        SubGraph& R = graph(recv_id);
        SubGraph& D = graph(donor_id);
        if (!R.alive || !D.alive) throw std::logic_error("merge: dead subgraph");
        if (D.find(merge_point) == nullptr)
            throw std::logic_error("merge: merge point missing from donor");
        SearchNode* mp = R.find(merge_point);
        if (mp == nullptr || !(mp->g < kInf))
            throw std::logic_error("merge: merge point not finalized in receiver");
        ++stats_.merges;

        std::vector<SearchNode*> transferred;
        for (const StateKey& key : D.insertion_order) {
            SearchNode& dn = *D.find(key);
            SearchNode* rn = R.find(key);
            if (rn != nullptr) {
                // Duplicate: the receiver's record stands. A donor-closed copy
                // carries an expansion the receiver must not repeat, so a
                // connect receiver inherits the closure; the anchor keeps the
                // state open and may re-expand it once.
                if (dn.status == NodeStatus::Closed && rn->status == NodeStatus::Open &&
                    !R.anchor) {
                    if (rn->queued) R.connect_queue_erase(rn);
                    R.frontier.erase(rn, dom_.workspace_project(rn->config));
                    rn->status = NodeStatus::Closed;
                }
            } else {
                SearchNode* n = R.ensure(key, dn.config);
                n->g = kInf;
                if (R.anchor) {
                    n->h = dom_.heuristic_admissible(n->config, ctx_.goal);
                    n->h_focal = dom_.heuristic_focal(n->config, ctx_.goal);
                    n->f = kInf;
                    n->status = NodeStatus::Open;
                } else {
                    n->status = dn.status == NodeStatus::Closed ? NodeStatus::Closed
                                                                : NodeStatus::Open;
                }
                transferred.push_back(n);
            }
            auto hh = home_.find(key);
            if (hh != home_.end() && hh->second == donor_id) hh->second = recv_id;
        }
        for (const StateKey& key : D.insertion_order) {
            auto it = D.adj.find(key);
            if (it == D.adj.end()) continue;
            for (const Edge& e : it->second) R.add_edge(key, e.to, e.cost);
        }

        repair(R);

        for (SearchNode* n : transferred) {
            if (n->status != NodeStatus::Open) continue;
            if (!(n->g < kInf))
                throw std::logic_error("merge: transferred state unreachable after repair");
            if (R.anchor) {
                n->f = n->g + p_.weight * n->h;
                R.open.insert(n);
                n->queued = true;
            } else {
                n->h_connect = connect_heuristic(*n, recv_id);
                R.connect_queue_insert(n);
            }
            R.frontier.insert(n, dom_.workspace_project(n->config));
        }
        if (R.anchor) R.open.rebalance();

        D.alive = false;
        D.release_storage();

        if (on_merge) {
            std::vector<StateKey> keys;
            keys.reserve(transferred.size());
            for (const SearchNode* n : transferred) keys.push_back(n->key);
            on_merge(*this, recv_id, keys);
        }
    }

    /// Install the waypoints of a connecting path as receiver vertices and
    /// edges, relaxing g along the chain. path[0] must already be a receiver
    /// vertex with finite g. `in_flight` marks a node currently being
    /// processed by the main loop; it must not re-enter the queue here.
    void add_connection_path(SubGraph& R, const std::vector<Config>& path,
                             const SearchNode* in_flight = nullptr) {
        SearchNode* prev = nullptr;
        for (const Config& c : path) {
            StateKey k = dom_.key_of(c);
            if (prev != nullptr && k == prev->key) continue;
            SearchNode* n = R.find(k);
            if (n == nullptr) {
                n = R.ensure(k, c);
                n->g = kInf;
                n->status = NodeStatus::Open;
                if (R.anchor) {
                    n->h = dom_.heuristic_admissible(n->config, ctx_.goal);
                    n->h_focal = dom_.heuristic_focal(n->config, ctx_.goal);
                    n->f = kInf;
                }
            }
            if (prev == nullptr && !(n->g < kInf)) {
                throw std::logic_error("connection path must start at a finalized vertex");
            }
            if (prev != nullptr) {
                const double c_edge = dom_.segment_cost(prev->config, n->config);
                R.add_edge(prev->key, n->key, c_edge);
                if (prev->g + c_edge < n->g) {
                    const double old_f = n->f;
                    n->g = prev->g + c_edge;
                    n->parent = prev->key;
                    n->parent_cost = c_edge;
                    n->has_parent = true;
                    if (R.anchor) {
                        n->f = n->g + p_.weight * n->h;
                        if (n->queued) R.open.reposition(n, old_f);
                        cascade_improvements(R, p_.weight, n);
                    }
                }
            }
            if (n->status == NodeStatus::Open && !n->queued && n != in_flight) {
                if (R.anchor) {
                    R.open.insert(n);
                    n->queued = true;
                } else {
                    n->h_connect = connect_heuristic(*n, R.id);
                    R.connect_queue_insert(n);
                }
                R.frontier.insert(n, dom_.workspace_project(n->config));
            }
            prev = n;
        }
    }

private:
    // ---------------------------- main loop ----------------------------

    bool phase1(PlanResult& res) {
        SubGraph& A = anchor();
        if (p_.check_invariants) {
            stats_.focal_violations += A.open.count_focal_violations();
            if (A.frontier.size() != A.open.size())
                throw std::logic_error("anchor frontier out of sync with OPEN");
        }
        SearchNode* qa = A.open.pop_focal();
        qa->queued = false;
        A.frontier.erase(qa, dom_.workspace_project(qa->config));

        if (dom_.is_goal(qa->key, qa->config, ctx_.goal)) {
            qa->status = NodeStatus::Closed;
            home_[qa->key] = 1;
            bump_counters(A, qa);
            res.path = reconstruct_path(qa->key, A.nodes);
            res.cost = qa->g;
            res.status = PlanStatus::Success;
            return true;
        }

        auto records = try_to_connect(*qa, 1);
        for (const auto& rec : records) {
            if (!alive(rec.to_graph)) continue;
            add_connection_path(A, rec.path, qa);
            merge_subgraphs(1, rec.to_graph, rec.to_state);
        }

        auto hit = home_.find(qa->key);
        if (hit != home_.end() && hit->second != 1) {
            // Already expanded in another subgraph: merge instead of expanding.
            qa->status = NodeStatus::Closed;
            merge_subgraphs(1, hit->second, qa->key);
        } else {
            expand(A, qa);
        }
        return false;
    }

    void phase2() {
        for (std::size_t i = 1; i < pool_.size(); ++i) {
            if (timed_out()) return;
            SubGraph* G = pool_[i].get();
            if (!G->alive) continue;
            SearchNode* qc = pop_connect(*G);
            if (qc == nullptr) continue;

            int owner = G->id;
            auto records = try_to_connect(*qc, owner);
            for (const auto& rec : records) {
                if (!alive(rec.to_graph) || rec.to_graph == owner) continue;
                auto [recv, don] = choose_merging_order(owner, rec.to_graph);
                if (recv == owner) {
                    add_connection_path(graph(recv), rec.path, qc);
                    merge_subgraphs(recv, don, rec.to_state);
                } else {
                    std::vector<Config> rpath(rec.path.rbegin(), rec.path.rend());
                    add_connection_path(graph(recv), rpath);
                    merge_subgraphs(recv, don, rec.from_state);
                    owner = recv;
                }
            }
            if (owner != G->id) continue;  // absorbed; qc re-queued by the transfer

            auto hit = home_.find(qc->key);
            if (hit != home_.end() && hit->second != owner) {
                auto [recv, don] = choose_merging_order(owner, hit->second);
                qc->status = NodeStatus::Closed;
                merge_subgraphs(recv, don, qc->key);
                continue;
            }
            expand(*G, qc);
        }
    }

    SearchNode* pop_connect(SubGraph& G) {
        while (!G.copen.empty()) {
            auto it = G.copen.begin();
            SearchNode* n = std::get<2>(*it);
            const double recorded = std::get<0>(*it);
            // Frontiers move between insertion and pop; re-evaluate a stale
            // priority before committing to the expansion.
            const double now = connect_heuristic(*n, G.id);
            if (now > recorded) {
                G.copen.erase(it);
                n->h_connect = now;
                G.copen.emplace(now, n->seq, n);
                continue;
            }
            G.copen.erase(it);
            n->queued = false;
            G.frontier.erase(n, dom_.workspace_project(n->config));
            if (p_.check_invariants && G.frontier.size() != G.copen.size())
                throw std::logic_error("connect frontier out of sync with OPEN");
            return n;
        }
        return nullptr;
    }

    void expand(SubGraph& g, SearchNode* n) {
        n->status = NodeStatus::Closed;
        home_[n->key] = g.id;
        bump_counters(g, n);
        succs_.clear();
        dom_.successors(n->key, n->config, ctx_, succs_);
        for (const auto& t : succs_) {
            g.add_edge(t.from, t.to, t.cost);
            if (g.anchor) {
                anchor_push(g, dom_, ctx_, p_.weight, t, n->key, n->g);
            } else {
                connect_push(g, t, n->key, n->g);
            }
        }
    }

    void connect_push(SubGraph& g, const Transition& t, const StateKey& parent_key,
                      double parent_g) {
        const double g_new = parent_g + t.cost;
        SearchNode* n = g.find(t.to);
        if (n == nullptr) {
            n = g.ensure(t.to, t.to_config);
            n->g = g_new;
            n->parent = parent_key;
            n->parent_cost = t.cost;
            n->has_parent = true;
            n->status = NodeStatus::Open;
            n->h_connect = connect_heuristic(*n, g.id);
            g.connect_queue_insert(n);
            g.frontier.insert(n, dom_.workspace_project(n->config));
            return;
        }
        if (n->status == NodeStatus::Open && g_new < n->g) {
            n->g = g_new;  // ordering is h_connect only; no queue move needed
            n->parent = parent_key;
            n->parent_cost = t.cost;
            n->has_parent = true;
        }
    }

    /// Dijkstra relaxation to quiescence over the receiver's discovered
    /// edges, seeded with every finite g. Only lowers values; (g, parent)
    /// pairs stay chain-consistent so path reconstruction remains exact.
    void repair(SubGraph& R) {
        using QE = std::tuple<double, std::uint64_t, SearchNode*>;
        std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
        for (const StateKey& key : R.insertion_order) {
            SearchNode* n = R.find(key);
            if (n->g < kInf) pq.push({n->g, n->seq, n});
        }
        while (!pq.empty()) {
            auto [gv, seq, n] = pq.top();
            pq.pop();
            if (gv != n->g) continue;  // stale entry
            auto it = R.adj.find(n->key);
            if (it == R.adj.end()) continue;
            for (const Edge& e : it->second) {
                SearchNode* m = R.find(e.to);
                const double cand = n->g + e.cost;
                if (cand < m->g) {
                    const double old_f = m->f;
                    m->g = cand;
                    m->parent = n->key;
                    m->parent_cost = e.cost;
                    m->has_parent = true;
                    if (R.anchor) {
                        m->f = m->g + p_.weight * m->h;
                        if (m->queued) R.open.reposition(m, old_f);
                    }
                    pq.push({m->g, m->seq, m});
                }
            }
        }
    }

    std::vector<Config> sample_path(const Config& a, const Config& b) const {
        std::vector<Config> path;
        const double len = dom_.interpolation_norm(a, b);
        const int n = std::max(1, static_cast<int>(std::ceil(len / interp_step_)));
        path.push_back(a);
        for (int i = 1; i < n; ++i) {
            path.push_back(dom_.interpolate(a, b, static_cast<double>(i) / n));
        }
        path.push_back(b);
        return path;
    }

    void bump_counters(SubGraph& g, SearchNode* n) {
        int& c = pop_count_[n->key];
        ++c;
        if (c > stats_.max_expansions_per_state) stats_.max_expansions_per_state = c;
        if (c > 1) ++stats_.re_expansions;
        ++stats_.expansions;
        ++stats_.expansions_per_subgraph[g.id - 1];
        if (p_.record_trace) trace_.emplace_back(g.id, n->key);
    }

    bool timed_out() const {
        return deadline_active_ && std::chrono::steady_clock::now() > deadline_;
    }

    const Domain& dom_;
    MgsParams p_;
    QueryContext ctx_;
    double interp_step_{1.0};
    std::vector<std::unique_ptr<SubGraph>> pool_;
    /// State -> id of the live subgraph owning its (unique) historical
    /// expansion; rewritten to the receiver on merges, never erased. Backs
    /// the expanded-in-another-graph check and the <= 2 expansion bound.
    std::unordered_map<StateKey, int, StateKeyHash> home_;
    std::unordered_map<StateKey, int, StateKeyHash> pop_count_;
    std::vector<Transition> succs_;
    std::vector<std::pair<int, StateKey>> trace_;
    PlanStats stats_;
    std::uint64_t seq_{0};
    bool deadline_active_{false};
    std::chrono::steady_clock::time_point deadline_;
};

}  // namespace mgs
