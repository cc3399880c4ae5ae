#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mgs/core/types.hpp"
#include "mgs/search/node.hpp"

namespace mgs {

/// Spatial index over the workspace projections of a subgraph's OPEN states.
/// Uniform bucket grid with ring search: exact nearest neighbours, fully
/// deterministic via the (distance^2, seq) tie-break.
class FrontierIndex {
public:
    explicit FrontierIndex(double bucket_size = 1.0)
        : bucket_(bucket_size > 0.0 ? bucket_size : 1.0) {}

    struct Hit {
        SearchNode* node{nullptr};
        double dist{kInf};
    };

    void insert(SearchNode* n, const std::vector<double>& proj) {
        Cell c = cell_of(proj);
        buckets_[c].push_back(Entry{n, proj});
        ++count_;
        if (count_ == 1) {
            lo_ = hi_ = c;
        } else {
            for (std::size_t i = 0; i < c.size(); ++i) {
                lo_[i] = std::min(lo_[i], c[i]);
                hi_[i] = std::max(hi_[i], c[i]);
            }
        }
    }

    void erase(SearchNode* n, const std::vector<double>& proj) {
        auto it = buckets_.find(cell_of(proj));
        if (it == buckets_.end()) return;
        auto& v = it->second;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i].node == n) {
                v[i] = v.back();
                v.pop_back();
                --count_;
                break;
            }
        }
        if (v.empty()) buckets_.erase(it);
        // lo_/hi_ kept conservative; only ring bounds depend on them.
    }

    std::size_t size() const { return count_; }
    bool empty() const { return count_ == 0; }

    std::optional<Hit> nearest(const std::vector<double>& q) const {
        std::vector<Hit> out;
        k_nearest(q, 1, out);
        if (out.empty()) return std::nullopt;
        return out.front();
    }

    /// k nearest entries by (distance, seq), ascending.
    void k_nearest(const std::vector<double>& q, int k, std::vector<Hit>& out) const {
        out.clear();
        if (count_ == 0 || k <= 0) return;
        Cell qc = cell_of(q);
        int max_ring = 0;
        for (std::size_t i = 0; i < qc.size(); ++i) {
            max_ring = std::max({max_ring, std::abs(qc[i] - lo_[i]), std::abs(hi_[i] - qc[i])});
        }
        // (d^2, seq, node): total deterministic order.
        std::vector<std::tuple<double, std::uint64_t, SearchNode*>> best;
        for (int r = 0;; ++r) {
            if (r >= 1 && static_cast<int>(best.size()) >= k) {
                // Rings 0..r-1 are scanned; anything in ring >= r lies at
                // distance >= (r-1) * bucket from q.
                double kth = std::get<0>(best[k - 1]);
                double lb = static_cast<double>(r - 1) * bucket_;
                if (lb * lb >= kth) break;
            }
            if (r > max_ring) break;
            scan_ring(qc, r, q, k, best);
        }
        for (int i = 0; i < k && i < static_cast<int>(best.size()); ++i) {
            out.push_back(Hit{std::get<2>(best[i]), std::sqrt(std::get<0>(best[i]))});
        }
    }

    template <typename F>
    void for_each(F&& fn) const {
        for (const auto& [cell, entries] : buckets_) {
            for (const auto& e : entries) fn(e.node, e.proj);
        }
    }

private:
    using Cell = std::vector<int>;

    struct Entry {
        SearchNode* node;
        std::vector<double> proj;
    };

    Cell cell_of(const std::vector<double>& p) const {
        Cell c(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            c[i] = static_cast<int>(std::floor(p[i] / bucket_));
        }
        return c;
    }

    static double dist2(const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            double d = a[i] - b[i];
            s += d * d;
        }
        return s;
    }

    void consider(const Cell& c, const std::vector<double>& q, int k,
                  std::vector<std::tuple<double, std::uint64_t, SearchNode*>>& best) const {
        auto it = buckets_.find(c);
        if (it == buckets_.end()) return;
        for (const auto& e : it->second) {
            best.emplace_back(dist2(q, e.proj), e.node->seq, e.node);
        }
        std::sort(best.begin(), best.end());
        if (static_cast<int>(best.size()) > k) best.resize(k);
    }

    void scan_ring(const Cell& qc, int r, const std::vector<double>& q, int k,
                   std::vector<std::tuple<double, std::uint64_t, SearchNode*>>& best) const {
        const int dims = static_cast<int>(qc.size());
        Cell c(dims);
        if (r == 0) {
            consider(qc, q, k, best);
            return;
        }
        if (dims == 2) {
            for (int dx = -r; dx <= r; ++dx) {
                for (int dy = -r; dy <= r; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
                    c[0] = qc[0] + dx;
                    c[1] = qc[1] + dy;
                    consider(c, q, k, best);
                }
            }
        } else {
            for (int dx = -r; dx <= r; ++dx) {
                for (int dy = -r; dy <= r; ++dy) {
                    for (int dz = -r; dz <= r; ++dz) {
                        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != r) continue;
                        c[0] = qc[0] + dx;
                        c[1] = qc[1] + dy;
                        c[2] = qc[2] + dz;
                        consider(c, q, k, best);
                    }
                }
            }
        }
    }

    double bucket_;
    std::size_t count_{0};
    Cell lo_, hi_;
    std::unordered_map<Cell, std::vector<Entry>, StateKeyHash> buckets_;
};

}  // namespace mgs
