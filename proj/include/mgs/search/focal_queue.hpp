#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <tuple>

#include "mgs/search/node.hpp"

namespace mgs {

/// OPEN/FOCAL pair for bounded-suboptimal focal search.
///
/// OPEN is ordered by (f, seq). FOCAL holds exactly the states with
/// f <= epsilon * f_min; in (f, seq) order that set is a prefix of OPEN, so
/// membership is maintained incrementally by walking the prefix boundary as
/// the threshold moves. FOCAL pops by (h_focal, f, seq).
///
/// seq values are unique per node, which makes every ordering total and runs
/// bit-reproducible.
class DualQueue {
public:
    explicit DualQueue(double epsilon) : epsilon_(epsilon) {
        if (!(epsilon >= 1.0)) throw std::invalid_argument("epsilon must be >= 1");
    }

    bool empty() const { return open_.empty(); }
    std::size_t size() const { return open_.size(); }
    std::size_t focal_size() const { return focal_hf_.size(); }

    double f_min() const { return open_.empty() ? kInf : std::get<0>(*open_.begin()); }
    double epsilon() const { return epsilon_; }

    void insert(SearchNode* n) {
        open_.emplace(n->f, n->seq, n);
        if (n->f <= threshold_) add_focal(n);
        rebalance();
    }

    /// Remove a node wherever it lives. Callers doing batch removals should
    /// call rebalance() once afterwards.
    void erase(SearchNode* n) {
        open_.erase({n->f, n->seq, n});
        if (n->in_focal) remove_focal(n);
    }

    /// Re-key a node after the caller changed its f (g improvement, merge repair).
    void reposition(SearchNode* n, double old_f) {
        open_.erase({old_f, n->seq, n});
        if (n->in_focal) {
            focal_hf_.erase({n->h_focal, old_f, n->seq, n});
            focal_f_.erase({old_f, n->seq, n});
            n->in_focal = false;
        }
        open_.emplace(n->f, n->seq, n);
        if (n->f <= threshold_) add_focal(n);
        rebalance();
    }

    /// Minimum-h_focal state, removed from both queues. Never null while OPEN
    /// is nonempty: the f_min state always qualifies for FOCAL.
    SearchNode* pop_focal() {
        if (open_.empty()) return nullptr;
        SearchNode* n = std::get<3>(*focal_hf_.begin());
        erase(n);
        rebalance();
        return n;
    }

    /// Restore FOCAL = { s in OPEN : f(s) <= epsilon * f_min } after the
    /// threshold moved. Amortized cost is one set operation per migration.
    void rebalance() {
        if (open_.empty()) {
            threshold_ = -kInf;
            return;  // FOCAL is a subset of OPEN, already empty
        }
        const double t = epsilon_ * f_min();
        if (t > threshold_) {
            // Admit newly qualifying states: the slice (threshold_, t] of OPEN.
            auto it = open_.upper_bound({threshold_, UINT64_MAX, nullptr});
            for (; it != open_.end(); ++it) {
                SearchNode* n = std::get<2>(*it);
                if (n->f > t) break;
                if (!n->in_focal) add_focal(n);
            }
        } else if (t < threshold_) {
            // Evict from the high-f end of FOCAL.
            while (!focal_f_.empty()) {
                auto last = std::prev(focal_f_.end());
                SearchNode* n = std::get<2>(*last);
                if (n->f <= t) break;
                remove_focal(n);
            }
        }
        threshold_ = t;
    }

    /// Invariant audit: number of FOCAL members beyond the epsilon band.
    std::int64_t count_focal_violations(double slack = 1e-9) const {
        if (open_.empty()) return 0;
        const double bound = epsilon_ * f_min() + slack;
        std::int64_t bad = 0;
        for (const auto& e : focal_f_) {
            if (std::get<0>(e) > bound) ++bad;
        }
        return bad;
    }

    template <typename F>
    void for_each_open(F&& fn) const {
        for (const auto& e : open_) fn(std::get<2>(e));
    }

private:
    void add_focal(SearchNode* n) {
        focal_hf_.emplace(n->h_focal, n->f, n->seq, n);
        focal_f_.emplace(n->f, n->seq, n);
        n->in_focal = true;
    }
    void remove_focal(SearchNode* n) {
        focal_hf_.erase({n->h_focal, n->f, n->seq, n});
        focal_f_.erase({n->f, n->seq, n});
        n->in_focal = false;
    }

    double epsilon_;
    double threshold_{-kInf};
    std::set<std::tuple<double, std::uint64_t, SearchNode*>> open_;
    std::set<std::tuple<double, double, std::uint64_t, SearchNode*>> focal_hf_;
    std::set<std::tuple<double, std::uint64_t, SearchNode*>> focal_f_;
};

}  // namespace mgs
