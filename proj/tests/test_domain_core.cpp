#include <gtest/gtest.h>

#include "mgs/bench/mapgen.hpp"
#include "mgs/core/domain.hpp"
#include "mgs/core/types.hpp"
#include "mgs/domains/grid_domain.hpp"
#include "mgs/search/node.hpp"
#include "oracles.hpp"

using namespace mgs;

TEST(Quantize, ZeroCase) {
    EXPECT_EQ(quantize({0.0, 0.0}, {1.0, 1.0}), (StateKey{0, 0}));
}

TEST(Quantize, Rounding) {
    EXPECT_EQ(quantize({2.4}, {1.0}), (StateKey{2}));
    EXPECT_EQ(quantize({2.5}, {1.0}), (StateKey{3}));   // half away from zero
    EXPECT_EQ(quantize({-2.5}, {1.0}), (StateKey{-3}));
}

TEST(Quantize, OneDegree) {
    // round(0.01745 / 0.01745) = 1
    EXPECT_EQ(quantize({0.01745}, {0.01745}), (StateKey{1}));
}

TEST(Quantize, KeyCenterIdentity) {
    std::vector<double> res{0.017453292519943295, 0.25, 1.0};
    for (int a = -50; a <= 50; a += 7) {
        StateKey key{a, -a * 3, a * 2};
        EXPECT_EQ(quantize(config_of_key(key, res), res), key);
    }
}

TEST(Quantize, BadInputs) {
    EXPECT_THROW(quantize({1.0}, {1.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(quantize({1.0}, {0.0}), std::invalid_argument);
}

TEST(KeyOf, OutOfBoundsThrows) {
    GridDomain dom(GridDomain::make_grid({4, 4}));
    EXPECT_THROW(dom.key_of({9.0, 0.0}), std::out_of_range);
    EXPECT_EQ(dom.key_of({1.2, 2.9}), (StateKey{1, 3}));
}

namespace {

struct Node {
    Config config;
    StateKey parent;
    bool has_parent{false};
};

}  // namespace

TEST(ReconstructPath, SingleNode) {
    std::unordered_map<StateKey, Node, StateKeyHash> nodes;
    nodes[{0, 0}] = Node{{0.0, 0.0}, {}, false};
    auto path = reconstruct_path({0, 0}, nodes);
    ASSERT_EQ(path.size(), 1u);
    EXPECT_EQ(path[0], (Config{0.0, 0.0}));
}

TEST(ReconstructPath, ThreeNodeChain) {
    std::unordered_map<StateKey, Node, StateKeyHash> nodes;
    nodes[{0}] = Node{{0.0}, {}, false};
    nodes[{1}] = Node{{1.0}, {0}, true};
    nodes[{2}] = Node{{2.0}, {1}, true};
    auto path = reconstruct_path({2}, nodes);
    ASSERT_EQ(path.size(), 3u);
    EXPECT_EQ(path[0], (Config{0.0}));
    EXPECT_EQ(path[1], (Config{1.0}));
    EXPECT_EQ(path[2], (Config{2.0}));
}

TEST(ReconstructPath, BrokenChainThrows) {
    std::unordered_map<StateKey, Node, StateKeyHash> nodes;
    nodes[{2}] = Node{{2.0}, {1}, true};  // parent {1} missing
    EXPECT_THROW(reconstruct_path({2}, nodes), std::logic_error);
}

TEST(GridDomain, SuccessorsAreFreeNeighbors) {
    auto grid = oracle::grid_from_rows({
        "....",
        ".#..",
        "....",
    });
    GridDomain dom(std::move(grid));
    QueryContext ctx{{0.0, 0.0}, GoalCondition::exact({3.0, 2.0})};
    std::vector<Transition> succs;
    dom.successors({0, 0}, {0.0, 0.0}, ctx, succs);
    // Neighbors of corner (0,0): (0,1), (1,0) free; (1,1) occupied.
    ASSERT_EQ(succs.size(), 2u);
    for (const auto& t : succs) {
        EXPECT_TRUE((t.to == StateKey{0, 1}) || (t.to == StateKey{1, 0}));
        EXPECT_DOUBLE_EQ(t.cost, 1.0);
    }
}

TEST(GridDomain, UndirectedTransitions) {
    auto grid = oracle::grid_from_rows({
        "...",
        ".#.",
        "...",
    });
    GridDomain dom(std::move(grid));
    QueryContext ctx{{0.0, 0.0}, GoalCondition::exact({2.0, 2.0})};
    std::vector<Transition> fw, bw;
    for (int x = 0; x < 3; ++x) {
        for (int y = 0; y < 3; ++y) {
            if (x == 1 && y == 1) continue;
            fw.clear();
            dom.successors({x, y}, {double(x), double(y)}, ctx, fw);
            for (const auto& t : fw) {
                bw.clear();
                dom.successors(t.to, t.to_config, ctx, bw);
                bool reverse_found = false;
                for (const auto& r : bw) {
                    if (r.to == t.from) {
                        reverse_found = true;
                        EXPECT_DOUBLE_EQ(r.cost, t.cost);
                    }
                }
                EXPECT_TRUE(reverse_found);
            }
        }
    }
}

TEST(GridDomain, PairwiseDistanceSymmetricZeroIffEqual) {
    GridDomain dom(GridDomain::make_grid({8, 8}));
    Config a{1.0, 2.0}, b{5.0, 7.0};
    EXPECT_DOUBLE_EQ(dom.pairwise_distance(a, b), dom.pairwise_distance(b, a));
    EXPECT_GT(dom.pairwise_distance(a, b), 0.0);
    EXPECT_DOUBLE_EQ(dom.pairwise_distance(a, a), 0.0);
}

// Admissibility against an exhaustive Dijkstra oracle on small instances.
TEST(GridDomain, HeuristicAdmissibleOnRandomGrids) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto grid = random_grid(12, 12, 0.25, seed);
        Rng rng(seed * 17);
        auto goal_cell = random_free_cell(grid, rng);
        ASSERT_TRUE(goal_cell.has_value());
        GridDomain dom(grid);
        auto dist = oracle::grid_dijkstra(grid, *goal_cell);  // symmetric costs
        GoalCondition goal =
            GoalCondition::exact({double((*goal_cell)[0]), double((*goal_cell)[1])});
        for (int x = 0; x < 12; ++x) {
            for (int y = 0; y < 12; ++y) {
                double d = oracle::grid_dist_at(grid, dist, {x, y});
                if (d == oracle::kInf) continue;
                double h = dom.heuristic_admissible({double(x), double(y)}, goal);
                EXPECT_LE(h, d + 1e-9) << "at (" << x << "," << y << ")";
            }
        }
    }
}

TEST(GoalCondition, RegionValidation) {
    EXPECT_THROW(GoalCondition::region({1.0, 1.0}, 0.0), std::invalid_argument);
    auto g = GoalCondition::region({1.0, 1.0}, 0.5);
    EXPECT_EQ(g.kind, GoalCondition::Kind::WorkspaceRegion);
}
