#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "mgs/core/types.hpp"

namespace mgs {

enum class NodeStatus : std::uint8_t { New, Open, Closed };

/// Per-state search record. f = g + w*h holds at all times for anchor nodes;
/// connect searches order by h_connect and track g only for merging.
struct SearchNode {
    StateKey key;
    Config config;
    double g{kInf};
    double h{0.0};
    double h_focal{0.0};
    double f{kInf};
    double h_connect{0.0};
    StateKey parent;
    double parent_cost{0.0};  // edge cost used when g was last set
    bool has_parent{false};
    NodeStatus status{NodeStatus::New};
    bool in_focal{false};
    bool queued{false};
    std::uint64_t seq{0};  // insertion sequence, fixed tie-break
};

/// unordered_map is node-based: references stay valid across rehash, so the
/// queues can hold raw pointers into the store.
using NodeMap = std::unordered_map<StateKey, SearchNode, StateKeyHash>;

}  // namespace mgs
