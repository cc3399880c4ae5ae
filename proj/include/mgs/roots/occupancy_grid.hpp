#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "mgs/core/types.hpp"

namespace mgs {

/// 2D or 3D discretized workspace with raw and inflated occupancy.
/// Inflated occupancy is always a superset of raw occupancy; inflation is a
/// Euclidean dilation by inflation_radius (world units).
class OccupancyGrid {
public:
    OccupancyGrid() = default;

    OccupancyGrid(std::vector<int> dims, double cell_size, double inflation_radius = 0.0,
                  std::vector<double> origin = {})
        : dims_(std::move(dims)), cell_size_(cell_size), inflation_(inflation_radius) {
        if (dims_.size() != 2 && dims_.size() != 3)
            throw std::invalid_argument("occupancy grid must be 2D or 3D");
        if (!(cell_size_ > 0.0)) throw std::invalid_argument("cell size must be positive");
        origin_ = origin.empty() ? std::vector<double>(dims_.size(), 0.0) : std::move(origin);
        std::size_t n = 1;
        for (int d : dims_) {
            if (d <= 0) throw std::invalid_argument("grid dims must be positive");
            n *= static_cast<std::size_t>(d);
        }
        occupied_.assign(n, 0);
        inflated_.assign(n, 0);
    }

    // Copies share no state; the refresh lock is per-instance.
    OccupancyGrid(const OccupancyGrid& o)
        : dims_(o.dims_),
          cell_size_(o.cell_size_),
          inflation_(o.inflation_),
          origin_(o.origin_),
          occupied_(o.occupied_),
          inflated_(o.inflated_),
          dirty_(o.dirty_),
          offsets_(o.offsets_) {}
    OccupancyGrid& operator=(const OccupancyGrid& o) {
        if (this != &o) {
            dims_ = o.dims_;
            cell_size_ = o.cell_size_;
            inflation_ = o.inflation_;
            origin_ = o.origin_;
            occupied_ = o.occupied_;
            inflated_ = o.inflated_;
            dirty_ = o.dirty_;
            offsets_ = o.offsets_;
        }
        return *this;
    }
    OccupancyGrid(OccupancyGrid&& o) noexcept
        : dims_(std::move(o.dims_)),
          cell_size_(o.cell_size_),
          inflation_(o.inflation_),
          origin_(std::move(o.origin_)),
          occupied_(std::move(o.occupied_)),
          inflated_(std::move(o.inflated_)),
          dirty_(o.dirty_),
          offsets_(std::move(o.offsets_)) {}
    OccupancyGrid& operator=(OccupancyGrid&& o) noexcept {
        dims_ = std::move(o.dims_);
        cell_size_ = o.cell_size_;
        inflation_ = o.inflation_;
        origin_ = std::move(o.origin_);
        occupied_ = std::move(o.occupied_);
        inflated_ = std::move(o.inflated_);
        dirty_ = o.dirty_;
        offsets_ = std::move(o.offsets_);
        return *this;
    }

    int ndims() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    double cell_size() const { return cell_size_; }
    double inflation_radius() const { return inflation_; }
    const std::vector<double>& origin() const { return origin_; }
    std::size_t cell_count() const { return occupied_.size(); }

    bool in_grid(const std::vector<int>& c) const {
        if (c.size() != dims_.size()) return false;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] < 0 || c[i] >= dims_[i]) return false;
        }
        return true;
    }

    std::size_t index_of(const std::vector<int>& c) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            idx = idx * static_cast<std::size_t>(dims_[i]) + static_cast<std::size_t>(c[i]);
        }
        return idx;
    }

    std::vector<int> cell_at(std::size_t idx) const {
        std::vector<int> c(dims_.size());
        for (std::size_t i = dims_.size(); i-- > 0;) {
            c[i] = static_cast<int>(idx % static_cast<std::size_t>(dims_[i]));
            idx /= static_cast<std::size_t>(dims_[i]);
        }
        return c;
    }

    void set_occupied(const std::vector<int>& c, bool v = true) {
        occupied_[index_of(c)] = v ? 1 : 0;
        dirty_ = true;
    }

    bool occupied(const std::vector<int>& c) const { return occupied_[index_of(c)] != 0; }
    bool occupied_raw(std::size_t idx) const { return occupied_[idx] != 0; }

    bool occupied_inflated(const std::vector<int>& c) const {
        refresh();
        return inflated_[index_of(c)] != 0;
    }
    bool occupied_inflated(std::size_t idx) const {
        refresh();
        return inflated_[idx] != 0;
    }
    bool free_inflated(const std::vector<int>& c) const {
        return in_grid(c) && !occupied_inflated(c);
    }

    std::vector<int> cell_of(const std::vector<double>& p) const {
        std::vector<int> c(dims_.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = static_cast<int>(std::floor((p[i] - origin_[i]) / cell_size_));
        }
        return c;
    }

    std::vector<double> center_of(const std::vector<int>& c) const {
        std::vector<double> p(dims_.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            p[i] = origin_[i] + (c[i] + 0.5) * cell_size_;
        }
        return p;
    }

    /// Neighbor offsets in fixed lexicographic order; the enumeration index is
    /// the tie-break for greedy-predecessor selection. 8-connected in 2D,
    /// 26-connected in 3D.
    const std::vector<std::vector<int>>& neighbor_offsets() const {
        if (offsets_.empty()) {
            if (ndims() == 2) {
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy) {
                        if (dx == 0 && dy == 0) continue;
                        offsets_.push_back({dx, dy});
                    }
            } else {
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy)
                        for (int dz = -1; dz <= 1; ++dz) {
                            if (dx == 0 && dy == 0 && dz == 0) continue;
                            offsets_.push_back({dx, dy, dz});
                        }
            }
        }
        return offsets_;
    }

private:
    // Inflation is computed lazily; the lock keeps concurrent read-only use
    // safe (the domain concurrency contract). Mutation after construction is
    // not supported concurrently.
    void refresh() const {
        if (!dirty_) return;
        std::lock_guard<std::mutex> lock(refresh_mu_);
        if (!dirty_) return;
        dirty_ = false;
        inflated_ = occupied_;
        if (!(inflation_ > 0.0)) return;
        const int rad = static_cast<int>(std::ceil(inflation_ / cell_size_));
        const double r2 = inflation_ * inflation_;
        // Dilate: a cell is inflated-occupied if any raw-occupied cell center
        // lies within inflation_radius of its center.
        for (std::size_t idx = 0; idx < occupied_.size(); ++idx) {
            if (!occupied_[idx]) continue;
            std::vector<int> c = cell_at(idx);
            std::vector<int> n(c.size());
            stamp(c, n, 0, rad, r2);
        }
    }

    void stamp(const std::vector<int>& c, std::vector<int>& n, std::size_t dim, int rad,
               double r2) const {
        if (dim == c.size()) {
            if (!in_grid(n)) return;
            double d2 = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) {
                double d = (n[i] - c[i]) * cell_size_;
                d2 += d * d;
            }
            if (d2 <= r2) inflated_[index_of(n)] = 1;
            return;
        }
        for (int d = -rad; d <= rad; ++d) {
            n[dim] = c[dim] + d;
            stamp(c, n, dim + 1, rad, r2);
        }
    }

    std::vector<int> dims_;
    double cell_size_{1.0};
    double inflation_{0.0};
    std::vector<double> origin_;
    std::vector<std::uint8_t> occupied_;
    mutable std::vector<std::uint8_t> inflated_;
    mutable bool dirty_{false};
    mutable std::mutex refresh_mu_;
    mutable std::vector<std::vector<int>> offsets_;
};

}  // namespace mgs
