#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgs {

/// Discrete state identity: per-dimension lattice indices.
using StateKey = std::vector<int>;

/// Continuous configuration (radians for joints, cells/meters for positions).
using Config = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const noexcept {
        // FNV-1a over the raw indices.
        std::uint64_t h = 1469598103934665603ull;
        for (int v : k) {
            std::uint64_t x = static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Round-half-away-from-zero quantization, fixed for determinism.
inline StateKey quantize(const Config& values, const std::vector<double>& resolution) {
    if (values.size() != resolution.size()) {
        throw std::invalid_argument("quantize: dimension mismatch");
    }
    StateKey key(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(resolution[i] > 0.0)) {
            throw std::invalid_argument("quantize: resolution must be positive");
        }
        key[i] = static_cast<int>(std::llround(values[i] / resolution[i]));
    }
    return key;
}

/// Lattice center of a key.
inline Config config_of_key(const StateKey& key, const std::vector<double>& resolution) {
    Config q(key.size());
    for (std::size_t i = 0; i < key.size(); ++i) q[i] = key[i] * resolution[i];
    return q;
}

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double max_norm(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

struct GoalCondition {
    enum class Kind { ExactConfig, WorkspaceRegion };

    Kind kind{Kind::ExactConfig};
    Config target;                 // ExactConfig
    std::vector<double> center;    // WorkspaceRegion, workspace coordinates
    double radius{0.0};

    static GoalCondition exact(Config q) {
        GoalCondition g;
        g.kind = Kind::ExactConfig;
        g.target = std::move(q);
        return g;
    }
    static GoalCondition region(std::vector<double> c, double r) {
        if (!(r > 0.0)) throw std::invalid_argument("goal region radius must be positive");
        GoalCondition g;
        g.kind = Kind::WorkspaceRegion;
        g.center = std::move(c);
        g.radius = r;
        return g;
    }
};

/// One collision-checked edge of the implicit graph. Graphs are undirected:
/// domains generate primitive sets closed under negation, so the reverse
/// transition always exists with equal cost.
struct Transition {
    StateKey from;
    StateKey to;
    Config to_config;   // continuous configuration of the successor
    double cost{0.0};
};

enum class PlanStatus { Success, Timeout, Exhausted, InvalidQuery };

inline const char* to_string(PlanStatus s) {
    switch (s) {
        case PlanStatus::Success: return "success";
        case PlanStatus::Timeout: return "timeout";
        case PlanStatus::Exhausted: return "exhausted";
        case PlanStatus::InvalidQuery: return "invalid_query";
    }
    return "?";
}

struct PlanStats {
    std::int64_t expansions{0};
    std::int64_t re_expansions{0};
    std::int64_t merges{0};
    std::int64_t connect_attempts{0};
    std::int64_t connect_successes{0};
    int max_expansions_per_state{0};
    std::vector<std::int64_t> expansions_per_subgraph;  // index 0 = anchor
    std::int64_t focal_violations{0};   // populated when invariant checks are on
    double wall_time_sec{0.0};
};

struct PlanResult {
    PlanStatus status{PlanStatus::Exhausted};
    std::vector<Config> path;   // root..goal inclusive, empty on failure
    double cost{kInf};          // graph cost (g of the goal state)
    PlanStats stats;
    /// Expansion trace (subgraph id, key), recorded only on request.
    std::vector<std::pair<int, StateKey>> trace;

    bool success() const { return status == PlanStatus::Success; }
};

}  // namespace mgs
