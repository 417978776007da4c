#pragma once

// Bivariate interpolation on fibered point sets, inverse to the fast
// evaluation pipeline. Each fiber is interpolated in Y on its own, the
// results are scaled by Lagrange denominators read off the derivative of the
// x-support's vanishing polynomial, and a divide-and-conquer combine stitches
// the fiber polynomials together along the subproduct tree.

#include <vector>

#include "cab/bivar.hpp"
#include "cab/geometry.hpp"
#include "cab/upoly.hpp"

namespace cab {

namespace detail {

inline BiPoly combine_walk(const PartitionTree& T, const std::vector<UniPoly>& U,
                           size_t id, const std::vector<UniPoly>& V) {
    const auto& n = T.nodes()[id];
    if (n.is_leaf()) return BiPoly::from_y_poly(V[n.begin]);
    return combine_walk(T, U, n.left, V).mul_by_x_poly(U[n.right]) +
           combine_walk(T, U, n.right, V).mul_by_x_poly(U[n.left]);
}

}  // namespace detail

/// h(X,Y) = sum over alpha in S of V[alpha] * prod over other points of
/// (X - alpha'). V[t] belongs to S[t]; S must coincide with one node of T
/// (typically the root), with U the tree's vanishing polynomials.
inline BiPoly combine(const std::vector<FieldElement>& S,
                      const std::vector<UniPoly>& V, const PartitionTree& T,
                      const std::vector<UniPoly>& U) {
    if (S.size() != V.size())
        throw std::invalid_argument("combine: |S| != |V|");
    if (S.empty()) throw std::invalid_argument("combine: empty set");
    const Field& k = T.field();

    // Locate S inside the tree's sorted ground set; it must be a node.
    const auto& pts = T.points();
    size_t lo = pts.size(), hi = 0;
    std::vector<UniPoly> by_pos(pts.size(), UniPoly(k));
    for (size_t t = 0; t < S.size(); ++t) {
        const auto it =
            std::lower_bound(pts.begin(), pts.end(), S[t].raw());
        if (it == pts.end() || *it != S[t].raw())
            throw std::invalid_argument("combine: S is not a node of the tree");
        const size_t pos = it - pts.begin();
        lo = std::min(lo, pos);
        hi = std::max(hi, pos + 1);
        by_pos[pos] = V[t];
    }
    if (hi - lo != S.size() || T.find_node(lo, hi) < 0)
        throw std::invalid_argument("combine: S is not a node of the tree");
    return detail::combine_walk(T, U, T.find_node(lo, hi), by_pos);
}

/// The polynomial with deg_X < n_X and deg_Y < nu_Y taking value F[t] at
/// P[t]. On semi-grids those bounds make it unique; on other sets it still
/// matches F everywhere.
inline BiPoly bivariate_interp(const PointSet& P,
                               const std::vector<FieldElement>& F) {
    if (F.size() != P.size())
        throw std::invalid_argument("interp: |F| != |P|");
    const Field& k = P.field();

    PartitionTree T(k, P.xs_raw());
    std::vector<UniPoly> U = tree_vanish(T);
    std::vector<UniPoly> I = tree_inverses(T, U);

    // Lagrange denominators over the x-support.
    std::vector<FieldElement> denom =
        univariate_mpe(formal_derivative(U[0]), T, U, I);

    const auto& fibers = P.fibers_raw();
    std::vector<UniPoly> V(fibers.size(), UniPoly(k));
    for (size_t xi = 0; xi < fibers.size(); ++xi) {
        std::vector<FieldElement> ys, vals;
        ys.reserve(fibers[xi].size());
        vals.reserve(fibers[xi].size());
        for (const auto& [y, idx] : fibers[xi]) {
            ys.emplace_back(k, y);
            vals.push_back(F[idx]);
        }
        UniPoly fiber_poly = univariate_interp(ys, vals);
        if (denom[xi].is_zero())
            throw std::logic_error("interp: vanishing Lagrange denominator");
        V[xi] = fiber_poly.scaled(denom[xi].inv());
    }
    return detail::combine_walk(T, U, 0, V);
}

}  // namespace cab
