#pragma once

// Fast bivariate multipoint evaluation. Each Y-row of the input is a
// polynomial in X and gets evaluated over the x-support with one shared
// subproduct tree; the per-x results then form a small polynomial in Y for
// each fiber, evaluated at that fiber's y-values. Cost is soft-linear in the
// point count once the row degrees are in range, against quadratic for the
// per-point Horner baseline.

#include <vector>

#include "cab/bivar.hpp"
#include "cab/geometry.hpp"
#include "cab/upoly.hpp"

namespace cab {

/// Values of f at every point of P, aligned with P's point order.
inline std::vector<FieldElement> bivariate_mpe(const BiPoly& f,
                                               const PointSet& P) {
    const Field& k = P.field();
    if (!k.compatible(f.field()))
        throw std::invalid_argument("mpe: polynomial and points over mixed fields");

    std::vector<FieldElement> out(P.size(), k.zero());
    if (f.is_zero()) return out;

    PartitionTree T(k, P.xs_raw());  // x-support is already sorted, distinct
    std::vector<UniPoly> U = tree_vanish(T);
    std::vector<UniPoly> I = tree_inverses(T, U);

    // Row values: row_vals[j][xi] = f_j(alpha_xi).
    const auto& rows = f.rows();
    std::vector<std::vector<FieldElement>> row_vals;
    row_vals.reserve(rows.size());
    for (const UniPoly& r : rows)
        row_vals.push_back(univariate_mpe(r, T, U, I));

    const auto& fibers = P.fibers_raw();
    for (size_t xi = 0; xi < fibers.size(); ++xi) {
        // g(Y) = f(alpha, Y)
        std::vector<uint32_t> g_coeffs(rows.size());
        for (size_t j = 0; j < rows.size(); ++j)
            g_coeffs[j] = row_vals[j][xi].raw();
        UniPoly g(k, std::move(g_coeffs));

        const auto& fib = fibers[xi];
        if (fib.size() > detail::kHornerCutoff) {
            std::vector<FieldElement> ys;
            ys.reserve(fib.size());
            for (const auto& [y, idx] : fib) ys.emplace_back(k, y);
            std::vector<FieldElement> vals = univariate_mpe(g, ys);
            for (size_t t = 0; t < fib.size(); ++t) out[fib[t].second] = vals[t];
        } else {
            for (const auto& [y, idx] : fib)
                out[idx] = g.eval(FieldElement(k, y));
        }
    }
    return out;
}

}  // namespace cab
