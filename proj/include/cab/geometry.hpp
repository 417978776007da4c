#pragma once

// Finite point configurations in the affine plane, organized by fibers: all
// points sharing an x-coordinate form the fiber over it. Encoders walk the
// x-support once per row and each fiber once per point, so both views are
// cached here.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cab/field.hpp"

namespace cab {

struct AffinePoint {
    FieldElement x, y;

    bool operator==(const AffinePoint& o) const { return x == o.x && y == o.y; }
    bool operator!=(const AffinePoint& o) const { return !(*this == o); }
};

/// An ordered, duplicate-free list of affine points. The order is part of
/// the value: evaluation vectors and codewords align with it. The canonical
/// order is ascending (to_int(x), to_int(y)); construct via canonical() to
/// sort, or pass an explicit order to the constructor to keep it.
class PointSet {
public:
    PointSet(const Field& f, std::vector<AffinePoint> points)
        : f_(&f), pts_(std::move(points)) {
        if (pts_.empty()) throw std::invalid_argument("point set: empty");
        for (const AffinePoint& p : pts_)
            if (!f.compatible(p.x.field()) || !f.compatible(p.y.field()))
                throw std::invalid_argument("point set: mixed fields");
        index_fibers();
    }

    static PointSet canonical(const Field& f, std::vector<AffinePoint> points) {
        std::sort(points.begin(), points.end(),
                  [](const AffinePoint& p, const AffinePoint& q) {
                      if (p.x.raw() != q.x.raw()) return p.x.raw() < q.x.raw();
                      return p.y.raw() < q.y.raw();
                  });
        return PointSet(f, std::move(points));
    }

    const Field& field() const { return *f_; }
    size_t size() const { return pts_.size(); }
    const std::vector<AffinePoint>& points() const { return pts_; }
    const AffinePoint& operator[](size_t t) const { return pts_[t]; }

    /// Distinct x-coordinates, ascending.
    std::vector<FieldElement> x_support() const {
        std::vector<FieldElement> out;
        out.reserve(xs_.size());
        for (uint32_t v : xs_) out.emplace_back(*f_, v);
        return out;
    }

    size_t n_x() const { return xs_.size(); }

    /// Largest fiber size.
    size_t nu_y() const { return nu_y_; }

    /// The y-values over alpha, ascending; empty when alpha is not in the
    /// x-support.
    std::vector<FieldElement> y_fiber(const FieldElement& alpha) const {
        std::vector<FieldElement> out;
        const auto it = std::lower_bound(xs_.begin(), xs_.end(), alpha.raw());
        if (it == xs_.end() || *it != alpha.raw()) return out;
        for (const auto& [y, idx] : fibers_[it - xs_.begin()])
            out.emplace_back(*f_, y);
        return out;
    }

    /// Every non-empty fiber has the same size.
    bool is_semi_grid() const {
        for (const auto& fib : fibers_)
            if (fib.size() != nu_y_) return false;
        return true;
    }

    // Raw views used by the evaluation and interpolation pipelines; fiber
    // entries pair a y-encoding with the index of that point in the ambient
    // order.
    const std::vector<uint32_t>& xs_raw() const { return xs_; }
    const std::vector<std::vector<std::pair<uint32_t, size_t>>>& fibers_raw()
        const {
        return fibers_;
    }

private:
    void index_fibers() {
        std::vector<size_t> order(pts_.size());
        for (size_t t = 0; t < order.size(); ++t) order[t] = t;
        std::sort(order.begin(), order.end(), [&](size_t s, size_t t) {
            if (pts_[s].x.raw() != pts_[t].x.raw())
                return pts_[s].x.raw() < pts_[t].x.raw();
            return pts_[s].y.raw() < pts_[t].y.raw();
        });
        for (size_t t = 0; t < order.size(); ++t) {
            const AffinePoint& p = pts_[order[t]];
            if (t > 0) {
                const AffinePoint& prev = pts_[order[t - 1]];
                if (prev.x.raw() == p.x.raw() && prev.y.raw() == p.y.raw())
                    throw std::invalid_argument("point set: duplicate point");
            }
            if (xs_.empty() || xs_.back() != p.x.raw()) {
                xs_.push_back(p.x.raw());
                fibers_.emplace_back();
            }
            fibers_.back().emplace_back(p.y.raw(), order[t]);
        }
        nu_y_ = 0;
        for (const auto& fib : fibers_) nu_y_ = std::max(nu_y_, fib.size());
    }

    const Field* f_;
    std::vector<AffinePoint> pts_;
    std::vector<uint32_t> xs_;
    std::vector<std::vector<std::pair<uint32_t, size_t>>> fibers_;
    size_t nu_y_ = 0;
};

}  // namespace cab
