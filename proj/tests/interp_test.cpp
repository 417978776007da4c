#include "cab/interp.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "cab/mpeval.hpp"
#include "oracles.hpp"

namespace cab {
namespace {

BiPoly random_bipoly(const Field& f, uint32_t dx, uint32_t dy,
                     std::mt19937& rng) {
    std::uniform_int_distribution<uint64_t> dist(0, f.order() - 1);
    BiPoly p(f);
    for (uint32_t j = 0; j <= dy; ++j)
        for (uint32_t i = 0; i <= dx; ++i)
            p.set_coeff({i, j}, f.from_int(dist(rng)));
    return p;
}

std::vector<uint32_t> sample_distinct(uint64_t bound, size_t n,
                                      std::mt19937& rng) {
    std::vector<uint32_t> pool(bound);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(n);
    return pool;
}

// Every fiber gets the same size but its own y-values: a random semi-grid.
PointSet random_semi_grid(const Field& f, size_t nx, size_t nu,
                          std::mt19937& rng) {
    std::vector<AffinePoint> pts;
    for (uint32_t x : sample_distinct(f.order(), nx, rng))
        for (uint32_t y : sample_distinct(f.order(), nu, rng))
            pts.push_back({f.from_int(x), f.from_int(y)});
    return PointSet(f, std::move(pts));
}

PointSet random_point_set(const Field& f, size_t n, std::mt19937& rng) {
    std::vector<AffinePoint> pts;
    for (uint32_t code : sample_distinct(f.order() * f.order(), n, rng))
        pts.push_back({f.from_int(code % f.order()),
                       f.from_int(code / f.order())});
    return PointSet(f, std::move(pts));
}

std::vector<FieldElement> random_values(const Field& f, size_t n,
                                        std::mt19937& rng) {
    std::uniform_int_distribution<uint64_t> dist(0, f.order() - 1);
    std::vector<FieldElement> out;
    for (size_t t = 0; t < n; ++t) out.push_back(f.from_int(dist(rng)));
    return out;
}

TEST(Combine, BaseCaseReturnsFiberPolynomial) {
    Field f(7, 1, Field::default_modulus(7, 1));
    PartitionTree T(f, {4});
    auto U = tree_vanish(T);
    UniPoly v(f, {2, 0, 5});  // 2 + 5Y^2
    BiPoly h = combine({f.from_int(4)}, {v}, T, U);
    EXPECT_EQ(h, BiPoly::from_y_poly(v));
}

TEST(Combine, PinnedPairExample) {
    // S = {0, 1} over GF(7) with both values 1:
    // h = (X - 1) + (X - 0) = 2X + 6.
    Field f(7, 1, Field::default_modulus(7, 1));
    PartitionTree T(f, {0, 1});
    auto U = tree_vanish(T);
    std::vector<FieldElement> S{f.from_int(0), f.from_int(1)};
    std::vector<UniPoly> V{UniPoly(f, {1}), UniPoly(f, {1})};
    BiPoly h = combine(S, V, T, U);
    EXPECT_EQ(h, BiPoly::from_x_poly(UniPoly(f, {6, 2})));
}

TEST(Combine, AgreesWithDirectLagrangeSum) {
    std::mt19937 rng(401);
    Field f(2, 4, Field::default_modulus(2, 4));
    auto xs = sample_distinct(f.order(), 9, rng);
    std::sort(xs.begin(), xs.end());
    PartitionTree T(f, std::vector<uint32_t>(xs.begin(), xs.end()));
    auto U = tree_vanish(T);
    std::vector<FieldElement> S;
    std::vector<UniPoly> V;
    for (uint32_t x : xs) {
        S.emplace_back(f, x);
        V.push_back(UniPoly(f, {static_cast<uint32_t>(rng() % f.order()),
                                static_cast<uint32_t>(rng() % f.order())}));
    }
    BiPoly fast = combine(S, V, T, U);
    BiPoly slow(f);
    for (size_t t = 0; t < S.size(); ++t) {
        UniPoly prod(f, {1});
        for (size_t s = 0; s < S.size(); ++s)
            if (s != t) prod = prod * UniPoly(f, {f.raw_neg(S[s].raw()), 1});
        slow = slow + BiPoly::from_y_poly(V[t]).mul_by_x_poly(prod);
    }
    EXPECT_EQ(fast, slow);
}

TEST(Combine, SubtreeNodesAndErrors) {
    Field f(7, 1, Field::default_modulus(7, 1));
    PartitionTree T(f, {0, 1, 2, 3, 4});
    auto U = tree_vanish(T);
    // Left child of the root covers {0,1,2}.
    std::vector<FieldElement> S{f.from_int(0), f.from_int(1), f.from_int(2)};
    std::vector<UniPoly> V(3, UniPoly(f, {1}));
    BiPoly h = combine(S, V, T, U);
    // Direct sum over the three-point set.
    BiPoly want(f);
    for (size_t t = 0; t < 3; ++t) {
        UniPoly prod(f, {1});
        for (size_t s = 0; s < 3; ++s)
            if (s != t) prod = prod * UniPoly(f, {f.raw_neg(S[s].raw()), 1});
        want = want + BiPoly::from_x_poly(prod);
    }
    EXPECT_EQ(h, want);

    // {1,2} is a contiguous range but not a node; {0,3} is not contiguous.
    std::vector<UniPoly> V2(2, UniPoly(f, {1}));
    EXPECT_THROW(combine({f.from_int(1), f.from_int(2)}, V2, T, U),
                 std::invalid_argument);
    EXPECT_THROW(combine({f.from_int(0), f.from_int(3)}, V2, T, U),
                 std::invalid_argument);
    EXPECT_THROW(combine({f.from_int(5)}, {UniPoly(f, {1})}, T, U),
                 std::invalid_argument);
}

TEST(BivariateInterp, RecoversGridPolynomial) {
    // Values of XY on the grid {0,1}^2 over GF(7).
    Field f(7, 1, Field::default_modulus(7, 1));
    std::vector<AffinePoint> pts;
    for (uint32_t x : {0u, 1u})
        for (uint32_t y : {0u, 1u})
            pts.push_back({f.from_int(x), f.from_int(y)});
    PointSet P(f, std::move(pts));
    std::vector<FieldElement> F;
    for (size_t t = 0; t < 4; ++t) F.push_back(P[t].x * P[t].y);
    EXPECT_EQ(bivariate_interp(P, F), BiPoly::from_term(f.one(), {1, 1}));
}

TEST(BivariateInterp, MatchesGaussianEliminationOnSemiGrids) {
    std::mt19937 rng(402);
    for (auto [p, m] : {std::pair<uint32_t, uint32_t>{5, 2}, {2, 8}}) {
        Field f(p, m, Field::default_modulus(p, m));
        for (auto [nx, nu] : {std::pair<size_t, size_t>{4, 3},
                              {7, 2},
                              {1, 5},
                              {10, 1},
                              {6, 6}}) {
            PointSet P = random_semi_grid(f, nx, nu, rng);
            auto F = random_values(f, P.size(), rng);
            BiPoly fast = bivariate_interp(P, F);
            BiPoly slow = testing::interp_gauss(P, F, nx, nu);
            EXPECT_EQ(fast, slow);
        }
    }
}

TEST(BivariateInterp, InterpolatesArbitraryPointSets) {
    std::mt19937 rng(403);
    Field f(5, 2, Field::default_modulus(5, 2));
    for (int t = 0; t < 10; ++t) {
        PointSet P = random_point_set(f, 50, rng);
        auto F = random_values(f, P.size(), rng);
        BiPoly h = bivariate_interp(P, F);
        EXPECT_LT(h.deg_x(), static_cast<int64_t>(P.n_x()));
        EXPECT_LT(h.deg_y(), static_cast<int64_t>(P.nu_y()));
        for (size_t s = 0; s < P.size(); ++s)
            EXPECT_EQ(h.evaluate_naive(P[s].x, P[s].y), F[s]);
    }
}

TEST(BivariateInterp, InvertsEvaluationOnSemiGrids) {
    std::mt19937 rng(404);
    Field f(2, 8, Field::default_modulus(2, 8));
    for (auto [nx, nu] : {std::pair<size_t, size_t>{12, 4}, {30, 2}, {5, 5}}) {
        PointSet P = random_semi_grid(f, nx, nu, rng);
        BiPoly g = random_bipoly(f, static_cast<uint32_t>(nx) - 1,
                                 static_cast<uint32_t>(nu) - 1, rng);
        EXPECT_EQ(bivariate_interp(P, bivariate_mpe(g, P)), g);
    }
}

TEST(BivariateInterp, SizeMismatchRejected) {
    Field f(7, 1, Field::default_modulus(7, 1));
    std::vector<AffinePoint> pts{{f.zero(), f.zero()}, {f.one(), f.one()}};
    PointSet P(f, std::move(pts));
    EXPECT_THROW(bivariate_interp(P, {f.one()}), std::invalid_argument);
}

}  // namespace
}  // namespace cab
