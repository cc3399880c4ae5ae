#include <gtest/gtest.h>

#include "mgs/bench/mapgen.hpp"
#include "mgs/domains/grid_domain.hpp"
#include "mgs/roots/root_selection.hpp"
#include "mgs/search/focal_search.hpp"
#include "mgs/search/mgs.hpp"
#include "oracles.hpp"

using namespace mgs;

namespace {

Config cfg(const std::vector<int>& cell) {
    return Config{double(cell[0]), double(cell[1])};
}

MgsParams quiet_params(double eps = 2.0, double w = 5.0) {
    MgsParams p;
    p.epsilon = eps;
    p.weight = w;
    p.timeout_sec = 0.0;
    return p;
}

}  // namespace

// m = 1 degenerates to the focal search: identical expansion traces.
TEST(Mgs, DegeneratesToFocalSearchWithoutRoots) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto grid = random_grid(16, 16, 0.25, seed);
        Rng rng(seed * 31);
        auto query = sample_solvable_query(grid, rng);
        if (!query) continue;
        auto [s, t] = *query;
        GridDomain dom(grid);
        GoalCondition goal = GoalCondition::exact(cfg(t));

        MgsParams mp = quiet_params();
        mp.max_subgraphs = 1;
        mp.record_trace = true;
        auto mgs_res = MgsPlanner(dom, mp).plan(cfg(s), goal, {});

        FocalParams fp;
        fp.epsilon = mp.epsilon;
        fp.weight = mp.weight;
        fp.timeout_sec = 0.0;
        fp.record_trace = true;
        auto focal_res = FocalSearch(dom, fp).plan(cfg(s), goal);

        ASSERT_EQ(mgs_res.success(), focal_res.success()) << "seed " << seed;
        ASSERT_EQ(mgs_res.trace.size(), focal_res.trace.size()) << "seed " << seed;
        for (std::size_t i = 0; i < mgs_res.trace.size(); ++i) {
            EXPECT_EQ(mgs_res.trace[i].second, focal_res.trace[i].second);
        }
        if (mgs_res.success()) {
            EXPECT_DOUBLE_EQ(mgs_res.cost, focal_res.cost);
        }
    }
}

TEST(Mgs, StartSatisfiesGoal) {
    GridDomain dom(GridDomain::make_grid({8, 8}));
    auto res = MgsPlanner(dom, quiet_params()).plan({2.0, 2.0}, GoalCondition::exact({2.0, 2.0}),
                                                    {{5.0, 5.0}});
    ASSERT_TRUE(res.success());
    EXPECT_EQ(res.stats.expansions, 1);
    EXPECT_DOUBLE_EQ(res.cost, 0.0);
}

TEST(Mgs, InvalidRootRejected) {
    auto grid = oracle::grid_from_rows({"..", ".#"});
    GridDomain dom(grid);
    auto res = MgsPlanner(dom, quiet_params()).plan({0.0, 0.0}, GoalCondition::exact({1.0, 0.0}),
                                                    {{1.0, 1.0}});
    EXPECT_EQ(res.status, PlanStatus::InvalidQuery);
}

TEST(ChooseMergingOrder, AnchorAlwaysReceives) {
    GridDomain dom(GridDomain::make_grid({16, 16}));
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({0.0, 0.0}, GoalCondition::exact({15.0, 15.0}),
                             {{4.0, 4.0}, {10.0, 10.0}}));
    EXPECT_EQ(p.choose_merging_order(1, 2), (std::pair<int, int>{1, 2}));
    EXPECT_EQ(p.choose_merging_order(3, 1), (std::pair<int, int>{1, 3}));
}

TEST(ChooseMergingOrder, CloserRootToStartReceives) {
    GridDomain dom(GridDomain::make_grid({16, 16}));
    MgsPlanner p(dom, quiet_params());
    // Roots at distance 2 and 7 from the start.
    ASSERT_TRUE(p.init_query({0.0, 0.0}, GoalCondition::exact({15.0, 15.0}),
                             {{2.0, 0.0}, {7.0, 0.0}}));
    EXPECT_EQ(p.choose_merging_order(2, 3), (std::pair<int, int>{2, 3}));
    EXPECT_EQ(p.choose_merging_order(3, 2), (std::pair<int, int>{2, 3}));
}

TEST(ChooseMergingOrder, TieBreaksToLowerId) {
    GridDomain dom(GridDomain::make_grid({16, 16}));
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({0.0, 0.0}, GoalCondition::exact({15.0, 15.0}),
                             {{5.0, 0.0}, {0.0, 5.0}}));  // equal Euclidean distance
    EXPECT_EQ(p.choose_merging_order(3, 2), (std::pair<int, int>{2, 3}));
    auto again = p.choose_merging_order(3, 2);
    EXPECT_EQ(again, (std::pair<int, int>{2, 3}));
}

TEST(ConnectHeuristic, ZeroAtForeignFrontierState) {
    GridDomain dom(GridDomain::make_grid({16, 16}));
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({3.0, 3.0}, GoalCondition::exact({15.0, 15.0}), {{8.0, 8.0}}));
    // The connect root's own frontier excluded; anchor frontier holds (3,3).
    SearchNode probe;
    probe.config = {3.0, 3.0};
    EXPECT_DOUBLE_EQ(p.connect_heuristic(probe, 2), 0.0);
}

TEST(ConnectHeuristic, MinOverOtherFrontiers) {
    GridDomain dom(GridDomain::make_grid({32, 32}));
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({0.0, 0.0}, GoalCondition::exact({31.0, 31.0}),
                             {{10.0, 0.0}, {0.0, 4.2}}));
    SearchNode probe;
    probe.config = {0.0, 0.0};
    // Other frontiers for graph 2 (rooted at (10,0)): anchor (0,0) and (0,4.2).
    EXPECT_DOUBLE_EQ(p.connect_heuristic(probe, 2), 0.0);
    SearchNode probe2;
    probe2.config = {6.0, 0.0};
    // For graph 3: distances are 6 (anchor) and 4 (graph 2): min is 4.
    EXPECT_DOUBLE_EQ(p.connect_heuristic(probe2, 3), 4.0);
}

TEST(ConnectHeuristic, InfiniteWhenAllOtherFrontiersEmpty) {
    GridDomain dom(GridDomain::make_grid({8, 8}));
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({0.0, 0.0}, GoalCondition::exact({7.0, 7.0}), {{4.0, 4.0}}));
    // Drain the anchor's frontier by popping its only node.
    auto& anchor = p.anchor();
    SearchNode* n = anchor.open.pop_focal();
    anchor.frontier.erase(n, dom.workspace_project(n->config));
    SearchNode probe;
    probe.config = {4.0, 4.0};
    EXPECT_EQ(p.connect_heuristic(probe, 2), kInf);
}

// Exhaustive frontier scan equals the index answer on random configurations.
TEST(ConnectHeuristic, MatchesBruteForceScan) {
    auto grid = random_grid(24, 24, 0.2, 9);
    GridDomain dom(grid);
    MgsParams mp = quiet_params();
    mp.record_trace = false;
    MgsPlanner p(dom, mp);
    Rng rng(77);
    auto q = sample_solvable_query(grid, rng);
    ASSERT_TRUE(q.has_value());
    std::vector<Config> roots;
    for (int i = 0; i < 4; ++i) {
        auto c = random_free_cell(grid, rng);
        if (c) roots.push_back(cfg(*c));
    }
    ASSERT_TRUE(p.init_query(cfg(q->first), GoalCondition::exact(cfg(q->second)), roots));
    // Grow the searches a bit to populate frontiers.
    for (int step = 0; step < 40; ++step) p.step_for_testing();

    for (int trial = 0; trial < 100; ++trial) {
        SearchNode probe;
        probe.config = {rng.uniform(0.0, 23.0), rng.uniform(0.0, 23.0)};
        for (std::size_t gid = 1; gid <= p.pool_size(); ++gid) {
            if (!p.alive(int(gid))) continue;
            double got = p.connect_heuristic(probe, int(gid));
            double want = kInf;
            for (std::size_t other = 1; other <= p.pool_size(); ++other) {
                if (other == gid || !p.alive(int(other))) continue;
                p.graph(int(other)).frontier.for_each([&](const SearchNode*,
                                                          const std::vector<double>& proj) {
                    want = std::min(want, euclidean(proj, probe.config));
                });
            }
            if (want == kInf) {
                EXPECT_EQ(got, kInf);
            } else {
                EXPECT_NEAR(got, want, 1e-12);
            }
        }
    }
}

TEST(TryToConnect, EmptyFrontierYieldsNothing) {
    GridDomain dom(GridDomain::make_grid({8, 8}));
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({0.0, 0.0}, GoalCondition::exact({7.0, 7.0}), {{4.0, 4.0}}));
    auto& g2 = p.graph(2);
    SearchNode* root = g2.find(g2.root_key);
    g2.connect_queue_erase(root);
    g2.frontier.erase(root, dom.workspace_project(root->config));
    SearchNode probe;
    probe.key = {0, 0};
    probe.config = {0.0, 0.0};
    auto recs = p.try_to_connect(probe, 1);
    EXPECT_TRUE(recs.empty());
}

TEST(TryToConnect, AdjacentClearLineConnects) {
    GridDomain dom(GridDomain::make_grid({8, 8}));
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({3.0, 3.0}, GoalCondition::exact({7.0, 7.0}), {{4.0, 3.0}}));
    auto& anchor = p.anchor();
    SearchNode* qa = anchor.find(anchor.root_key);
    auto recs = p.try_to_connect(*qa, 1);
    ASSERT_EQ(recs.size(), 1u);
    EXPECT_EQ(recs[0].to_graph, 2);
    EXPECT_EQ(recs[0].path.front(), (Config{3.0, 3.0}));
    EXPECT_EQ(recs[0].path.back(), (Config{4.0, 3.0}));
}

TEST(TryToConnect, WallBlocksNearbyFrontier) {
    auto grid = oracle::grid_from_rows({
        ".#.",
        ".#.",
        ".#.",
    });
    GridDomain dom(grid);
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({0.0, 1.0}, GoalCondition::exact({0.0, 2.0}), {{2.0, 1.0}}));
    auto& anchor = p.anchor();
    SearchNode* qa = anchor.find(anchor.root_key);
    auto recs = p.try_to_connect(*qa, 1);  // distance 2, but the wall blocks
    EXPECT_TRUE(recs.empty());
    EXPECT_GT(p.stats().connect_attempts, 0);
}

TEST(MergeSubgraphs, SingleNodeDonor) {
    GridDomain dom(GridDomain::make_grid({8, 8}));
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({3.0, 3.0}, GoalCondition::exact({7.0, 7.0}), {{4.0, 3.0}}));
    auto& anchor = p.anchor();
    SearchNode* qa = anchor.find(anchor.root_key);
    auto recs = p.try_to_connect(*qa, 1);
    ASSERT_EQ(recs.size(), 1u);
    p.add_connection_path(anchor, recs[0].path);
    p.merge_subgraphs(1, 2, recs[0].to_state);
    EXPECT_FALSE(p.alive(2));
    EXPECT_EQ(p.live_subgraphs(), 1);
    SearchNode* merged = anchor.find({4, 3});
    ASSERT_NE(merged, nullptr);
    EXPECT_DOUBLE_EQ(merged->g, 1.0);
    EXPECT_EQ(merged->status, NodeStatus::Open);
}

// Donor is a 3-node chain r--a--b with unit edges, merged at b while the
// receiver holds g(b) = 10: propagation yields g(a) = 11, g(r) = 12.
TEST(MergeSubgraphs, ChainPropagation) {
    GridDomain dom(GridDomain::make_grid({16, 16}));
    MgsPlanner p(dom, quiet_params(2.0, 1.0));
    ASSERT_TRUE(p.init_query({0.0, 0.0}, GoalCondition::exact({15.0, 15.0}), {{10.0, 10.0}}));
    auto& donor = p.graph(2);
    // Build the chain r=(10,10), a=(11,10), b=(12,10) with unit edges.
    SearchNode* a = donor.ensure({11, 10}, {11.0, 10.0});
    a->g = 1.0;
    a->status = NodeStatus::Open;
    SearchNode* b = donor.ensure({12, 10}, {12.0, 10.0});
    b->g = 2.0;
    b->status = NodeStatus::Open;
    donor.add_edge({10, 10}, {11, 10}, 1.0);
    donor.add_edge({11, 10}, {12, 10}, 1.0);

    auto& anchor = p.anchor();
    SearchNode* mp = anchor.ensure({12, 10}, {12.0, 10.0});
    mp->g = 10.0;
    mp->h = dom.heuristic_admissible(mp->config, GoalCondition::exact({15.0, 15.0}));
    mp->h_focal = mp->h;
    mp->f = mp->g + mp->h;
    mp->status = NodeStatus::Open;
    anchor.open.insert(mp);
    mp->queued = true;
    anchor.frontier.insert(mp, dom.workspace_project(mp->config));

    p.merge_subgraphs(1, 2, {12, 10});
    EXPECT_DOUBLE_EQ(anchor.find({11, 10})->g, 11.0);
    EXPECT_DOUBLE_EQ(anchor.find({10, 10})->g, 12.0);
    EXPECT_EQ(anchor.find({11, 10})->status, NodeStatus::Open);
}

TEST(MergeSubgraphs, MissingMergePointThrows) {
    GridDomain dom(GridDomain::make_grid({8, 8}));
    MgsPlanner p(dom, quiet_params());
    ASSERT_TRUE(p.init_query({0.0, 0.0}, GoalCondition::exact({7.0, 7.0}), {{4.0, 4.0}}));
    EXPECT_THROW(p.merge_subgraphs(1, 2, {6, 6}), std::logic_error);
}

// Full planning runs against the suboptimality bound with roots in play.
TEST(Mgs, BoundedSuboptimalityWithAttractorRoots) {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto grid = random_grid(24, 24, 0.28, seed * 3 + 1);
        Rng rng(seed * 101);
        auto query = sample_solvable_query(grid, rng);
        if (!query) continue;
        auto [s, t] = *query;
        GridDomain dom(grid);
        GoalCondition goal = GoalCondition::exact(cfg(t));
        auto roots = get_roots(dom, cfg(s), goal, 9).roots;
        MgsParams mp = quiet_params(2.0, 5.0);
        mp.check_invariants = true;
        MgsPlanner planner(dom, mp);
        auto res = planner.plan(cfg(s), goal, roots);
        ASSERT_TRUE(res.success()) << "seed " << seed;
        EXPECT_EQ(res.stats.focal_violations, 0);
        EXPECT_LE(res.stats.max_expansions_per_state, 2);
        auto dist = oracle::grid_dijkstra(grid, s);
        double opt = oracle::grid_dist_at(grid, dist, t);
        EXPECT_LE(res.cost, 10.0 * opt + 1e-9) << "seed " << seed;
        // Reconstructed path cost equals the goal g: sum the stored edge
        // costs along the parent chain.
        auto& anchor = planner.anchor();
        const SearchNode* n = anchor.find(dom.key_of(res.path.back()));
        ASSERT_NE(n, nullptr);
        double sum = 0.0;
        while (n->has_parent) {
            sum += n->parent_cost;
            n = anchor.find(n->parent);
            ASSERT_NE(n, nullptr);
        }
        EXPECT_NEAR(sum, res.cost, 1e-9);
        ++checked;
    }
    EXPECT_GE(checked, 30);
}

TEST(Mgs, UnsolvableFailsAfterExhaustion) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto grid = multiroom_grid(24, 24, 3, 3, seed);
        std::vector<int> goal_cell{22, 22};
        if (grid.occupied(goal_cell)) continue;
        seal_cell(grid, goal_cell, 2);
        std::vector<int> start{1, 1};
        if (grid.occupied(start)) continue;
        auto reach = oracle::reachable_cells(grid, start);
        ASSERT_FALSE(reach[std::size_t(goal_cell[0]) * 24 + goal_cell[1]]);
        GridDomain dom(grid);
        GoalCondition goal = GoalCondition::exact(cfg(goal_cell));
        auto roots = get_roots(dom, cfg(start), goal, 9).roots;
        MgsParams mp = quiet_params();
        auto res = MgsPlanner(dom, mp).plan(cfg(start), goal, roots);
        EXPECT_EQ(res.status, PlanStatus::Exhausted);
    }
}

// Pool invariant: subgraph count only decreases, donor ids never reappear.
TEST(Mgs, PoolOnlyShrinks) {
    auto grid = multiroom_grid(32, 32, 3, 3, 4);
    std::vector<int> s{1, 1}, t{30, 30};
    ASSERT_FALSE(grid.occupied(s));
    ASSERT_FALSE(grid.occupied(t));
    auto reach = oracle::reachable_cells(grid, s);
    ASSERT_TRUE(reach[std::size_t(t[0]) * 32 + t[1]]);
    GridDomain dom(grid);
    GoalCondition goal = GoalCondition::exact(cfg(t));
    auto roots = get_roots(dom, cfg(s), goal, 9).roots;
    MgsParams mp = quiet_params();
    MgsPlanner p(dom, mp);
    auto res = p.plan(cfg(s), goal, roots);
    ASSERT_TRUE(res.success());
    EXPECT_GE(res.stats.merges, 1);
    EXPECT_EQ(p.live_subgraphs() + int(res.stats.merges), int(p.pool_size()));
}

// Determinism: identical runs produce identical traces and costs.
TEST(Mgs, DeterministicAcrossRuns) {
    auto grid = multiroom_grid(32, 32, 3, 3, 11);
    GridDomain dom(grid);
    std::vector<int> s{1, 1}, t{30, 30};
    ASSERT_FALSE(grid.occupied(s));
    ASSERT_FALSE(grid.occupied(t));
    GoalCondition goal = GoalCondition::exact(cfg(t));
    auto roots = get_roots(dom, cfg(s), goal, 9).roots;
    MgsParams mp = quiet_params();
    mp.record_trace = true;
    auto r1 = MgsPlanner(dom, mp).plan(cfg(s), goal, roots);
    auto r2 = MgsPlanner(dom, mp).plan(cfg(s), goal, roots);
    EXPECT_EQ(r1.trace, r2.trace);
    EXPECT_EQ(r1.cost, r2.cost);
    EXPECT_EQ(r1.stats.expansions, r2.stats.expansions);
}
