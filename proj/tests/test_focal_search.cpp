#include <gtest/gtest.h>

#include "mgs/bench/mapgen.hpp"
#include "mgs/domains/grid_domain.hpp"
#include "mgs/search/focal_search.hpp"
#include <set>

#include "oracles.hpp"

using namespace mgs;

namespace {

SearchNode make_node(StateKey key, double f, double hf, std::uint64_t seq) {
    SearchNode n;
    n.key = std::move(key);
    n.g = f;
    n.f = f;
    n.h_focal = hf;
    n.seq = seq;
    n.status = NodeStatus::Open;
    return n;
}

}  // namespace

TEST(DualQueue, PopsFocalByInadmissibleHeuristic) {
    // OPEN = {a: f=10, hf=9; b: f=12, hf=1}, eps=1.5: both within 1.5*10,
    // b has the smaller focal value.
    DualQueue q(1.5);
    SearchNode a = make_node({0}, 10.0, 9.0, 1);
    SearchNode b = make_node({1}, 12.0, 1.0, 2);
    q.insert(&a);
    q.insert(&b);
    EXPECT_EQ(q.focal_size(), 2u);
    EXPECT_EQ(q.pop_focal(), &b);
    EXPECT_EQ(q.pop_focal(), &a);
    EXPECT_TRUE(q.empty());
}

TEST(DualQueue, EpsilonOneCollapsesToAStarOrder) {
    DualQueue q(1.0);
    SearchNode a = make_node({0}, 10.0, 9.0, 1);
    SearchNode b = make_node({1}, 12.0, 1.0, 2);
    q.insert(&a);
    q.insert(&b);
    EXPECT_EQ(q.focal_size(), 1u);  // only the f_min node qualifies
    EXPECT_EQ(q.pop_focal(), &a);
    EXPECT_EQ(q.pop_focal(), &b);
}

TEST(DualQueue, SingleNodePops) {
    DualQueue q(2.0);
    SearchNode a = make_node({7}, 3.0, 5.0, 1);
    q.insert(&a);
    EXPECT_EQ(q.pop_focal(), &a);
    EXPECT_EQ(q.pop_focal(), nullptr);
}

TEST(DualQueue, FocalInvariantUnderChurn) {
    DualQueue q(1.3);
    Rng rng(42);
    std::vector<std::unique_ptr<SearchNode>> nodes;
    std::uint64_t seq = 0;
    for (int round = 0; round < 400; ++round) {
        double op = rng.uniform();
        if (op < 0.6 || q.empty()) {
            auto n = std::make_unique<SearchNode>();
            n->key = {round};
            n->g = rng.uniform(0.0, 50.0);
            n->h = rng.uniform(0.0, 20.0);
            n->h_focal = rng.uniform(0.0, 20.0);
            n->f = n->g + n->h;
            n->seq = ++seq;
            n->status = NodeStatus::Open;
            q.insert(n.get());
            nodes.push_back(std::move(n));
        } else {
            q.pop_focal();
        }
        EXPECT_EQ(q.count_focal_violations(), 0);
        EXPECT_TRUE(q.focal_size() > 0 || q.empty());
    }
}

TEST(AnchorPush, InsertImproveIgnore) {
    GridDomain dom(GridDomain::make_grid({8, 8}));
    QueryContext ctx{{0.0, 0.0}, GoalCondition::exact({7.0, 7.0})};
    std::uint64_t seq = 0;
    SubGraph g(1, true, 2.0, 4.0, &seq);

    Transition t;
    t.from = {0, 0};
    t.to = {1, 0};
    t.to_config = {1.0, 0.0};
    t.cost = 5.0;
    EXPECT_EQ(anchor_push(g, dom, ctx, 1.0, t, {0, 0}, 0.0), PushOutcome::Inserted);
    SearchNode* n = g.find({1, 0});
    ASSERT_NE(n, nullptr);
    EXPECT_DOUBLE_EQ(n->g, 5.0);
    EXPECT_DOUBLE_EQ(n->f, 5.0 + dom.heuristic_admissible({1.0, 0.0}, ctx.goal));

    // Worse offer ignored.
    t.cost = 7.0;
    EXPECT_EQ(anchor_push(g, dom, ctx, 1.0, t, {0, 0}, 0.0), PushOutcome::Ignored);
    EXPECT_DOUBLE_EQ(n->g, 5.0);

    // Better offer improves g, f, parent.
    t.cost = 3.0;
    EXPECT_EQ(anchor_push(g, dom, ctx, 1.0, t, {0, 0}, 0.0), PushOutcome::Improved);
    EXPECT_DOUBLE_EQ(n->g, 3.0);

    // Closed nodes are not reopened by pushes.
    n->status = NodeStatus::Closed;
    g.open.erase(n);
    n->queued = false;
    g.open.rebalance();
    t.cost = 1.0;
    EXPECT_EQ(anchor_push(g, dom, ctx, 1.0, t, {0, 0}, 0.0), PushOutcome::Ignored);
}

TEST(FocalSearch, StartSatisfiesGoal) {
    GridDomain dom(GridDomain::make_grid({4, 4}));
    FocalParams p;
    auto res = FocalSearch(dom, p).plan({1.0, 1.0}, GoalCondition::exact({1.0, 1.0}));
    ASSERT_TRUE(res.success());
    EXPECT_EQ(res.path.size(), 1u);
    EXPECT_DOUBLE_EQ(res.cost, 0.0);
    EXPECT_EQ(res.stats.expansions, 1);
}

TEST(FocalSearch, StraightLineOnEmptyGrid) {
    GridDomain dom(GridDomain::make_grid({8, 8}));
    FocalParams p;
    auto res = FocalSearch(dom, p).plan({0.0, 0.0}, GoalCondition::exact({3.0, 0.0}));
    ASSERT_TRUE(res.success());
    EXPECT_NEAR(res.cost, 3.0, 1e-12);
    ASSERT_EQ(res.path.size(), 4u);
}

TEST(FocalSearch, InvalidStart) {
    auto grid = oracle::grid_from_rows({"#.", ".."});
    GridDomain dom(std::move(grid));
    FocalParams p;
    auto res = FocalSearch(dom, p).plan({0.0, 0.0}, GoalCondition::exact({1.0, 1.0}));
    EXPECT_EQ(res.status, PlanStatus::InvalidQuery);
}

TEST(FocalSearch, ExhaustsOnUnreachableGoal) {
    auto grid = oracle::grid_from_rows({
        "..#.",
        "..#.",
        "..#.",
        "..#.",
    });
    GridDomain dom(std::move(grid));
    FocalParams p;
    p.timeout_sec = 0.0;
    auto res = FocalSearch(dom, p).plan({0.0, 0.0}, GoalCondition::exact({3.0, 0.0}));
    EXPECT_EQ(res.status, PlanStatus::Exhausted);
    EXPECT_GT(res.stats.expansions, 0);
}

// 100 random 32x32 grids at product epsilon * weight = 10: every returned
// cost within 10x the Dijkstra optimum.
TEST(FocalSearch, BoundedSuboptimalityOnRandomGrids) {
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto grid = random_grid(32, 32, 0.25, seed);
        Rng rng(seed * 1337);
        auto query = sample_solvable_query(grid, rng);
        if (!query) continue;
        auto [s, t] = *query;
        GridDomain dom(grid);
        FocalParams p;
        p.epsilon = 2.0;
        p.weight = 5.0;
        p.timeout_sec = 0.0;
        p.check_invariants = true;
        auto res = FocalSearch(dom, p).plan({double(s[0]), double(s[1])},
                                            GoalCondition::exact({double(t[0]), double(t[1])}));
        ASSERT_TRUE(res.success()) << "seed " << seed;
        EXPECT_EQ(res.stats.focal_violations, 0);
        auto dist = oracle::grid_dijkstra(grid, s);
        double opt = oracle::grid_dist_at(grid, dist, t);
        EXPECT_LE(res.cost, 10.0 * opt + 1e-9) << "seed " << seed;
        ++solved;
    }
    EXPECT_GE(solved, 90);
}

// epsilon = 1 with h_focal = h reproduces the reference A* pop order exactly.
TEST(FocalSearch, EpsilonOneMatchesAStarTrace) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto grid = random_grid(16, 16, 0.25, seed);
        Rng rng(seed * 7919);
        auto query = sample_solvable_query(grid, rng);
        if (!query) continue;
        auto [s, t] = *query;
        GridDomain dom(grid);
        GoalCondition goal = GoalCondition::exact({double(t[0]), double(t[1])});
        FocalParams p;
        p.epsilon = 1.0;
        p.weight = 1.0;
        p.timeout_sec = 0.0;
        p.record_trace = true;
        auto res = FocalSearch(dom, p).plan({double(s[0]), double(s[1])}, goal);
        ASSERT_TRUE(res.success());
        auto ref = oracle::ref_astar(dom, {double(s[0]), double(s[1])}, goal, 1.0);
        ASSERT_TRUE(ref.solved);
        EXPECT_NEAR(res.cost, ref.cost, 1e-9);
        ASSERT_EQ(res.trace.size(), ref.pops.size()) << "seed " << seed;
        for (std::size_t i = 0; i < ref.pops.size(); ++i) {
            EXPECT_EQ(res.trace[i].second, ref.pops[i]) << "seed " << seed << " pop " << i;
        }
        // Consistent h, single graph: no state expanded more than once.
        std::set<StateKey> seen;
        for (const auto& [gid, key] : res.trace) {
            EXPECT_TRUE(seen.insert(key).second) << "re-expansion at seed " << seed;
        }
        EXPECT_EQ(res.stats.max_expansions_per_state, 1);
    }
}

TEST(FocalSearch, RegionGoal) {
    GridDomain dom(GridDomain::make_grid({16, 16}));
    FocalParams p;
    auto res = FocalSearch(dom, p).plan({0.0, 0.0}, GoalCondition::region({10.0, 10.0}, 1.5));
    ASSERT_TRUE(res.success());
    EXPECT_LE(euclidean(res.path.back(), {10.0, 10.0}), 1.5);
}

TEST(FocalSearch, ThreeDimensionalGrid) {
    auto grid = GridDomain::make_grid({8, 8, 8});
    grid.set_occupied({4, 4, 4});
    GridDomain dom(std::move(grid));
    GoalCondition goal = GoalCondition::exact({7.0, 7.0, 7.0});
    FocalParams p;
    p.timeout_sec = 0.0;
    auto res = FocalSearch(dom, p).plan({0.0, 0.0, 0.0}, goal);
    ASSERT_TRUE(res.success());
    // Plain A* settings: the returned cost is optimal on the induced graph.
    QueryContext ctx{{0.0, 0.0, 0.0}, goal};
    auto dd = oracle::domain_dijkstra(dom, {0.0, 0.0, 0.0}, ctx);
    double opt = oracle::optimal_goal_cost(dom, dd, goal);
    EXPECT_NEAR(res.cost, opt, 1e-9);
}
