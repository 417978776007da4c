#include "cab/vanish.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"

namespace cab {
namespace {

Field gf4() { return Field(2, 2, Field::default_modulus(2, 2)); }
Field gf7() { return Field(7, 1, Field::default_modulus(7, 1)); }
Field gf9() { return Field(3, 2, Field::default_modulus(3, 2)); }

// y^2 + y = x^3 over GF(4); the eight solutions, canonical order, raw
// encodings (2 and 3 are the two roots of z^2 + z + 1).
PointSet hermitian2_points(const Field& f) {
    std::vector<AffinePoint> pts;
    const uint32_t raw[8][2] = {{0, 0}, {0, 1}, {1, 2}, {1, 3},
                                {2, 2}, {2, 3}, {3, 2}, {3, 3}};
    for (auto& p : raw)
        pts.push_back({FieldElement(f, p[0]), FieldElement(f, p[1])});
    return PointSet(f, pts);
}

BiPoly from_terms(const Field& f,
                  std::vector<std::pair<Monomial, uint32_t>> terms) {
    BiPoly out(f);
    for (auto& [m, c] : terms) out.set_coeff(m, FieldElement(f, c));
    return out;
}

PointSet random_subset(const PointSet& P, size_t k, std::mt19937& rng) {
    std::vector<size_t> idx(P.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<AffinePoint> pts;
    for (size_t t = 0; t < k; ++t) pts.push_back(P[idx[t]]);
    return PointSet(P.field(), pts);
}

TEST(VanishingBasis, PinnedHermitianFull) {
    Field f = gf4();
    PointSet P = hermitian2_points(f);
    GroebnerBasis G = vanishing_gb(P, {2, 3});

    ASSERT_EQ(G.size(), 2u);
    EXPECT_EQ(G.elements()[0], from_terms(f, {{{4, 0}, 1}, {{1, 0}, 1}}));
    EXPECT_EQ(G.elements()[1],
              from_terms(f, {{{0, 2}, 1}, {{0, 1}, 1}, {{3, 0}, 1}}));
    EXPECT_EQ(G.pure_x_degree(), 4);
    EXPECT_EQ(G.pure_y_degree(), 2);
    EXPECT_EQ(staircase_size(G), 8u);
}

TEST(VanishingBasis, PinnedTinySets) {
    Field f = gf7();
    PointSet one(f, {{f.from_int(3), f.from_int(4)}});
    GroebnerBasis G1 = vanishing_gb(one, {2, 3});
    ASSERT_EQ(G1.size(), 2u);
    EXPECT_EQ(G1.elements()[0], from_terms(f, {{{1, 0}, 1}, {{0, 0}, 4}}));
    EXPECT_EQ(G1.elements()[1], from_terms(f, {{{0, 1}, 1}, {{0, 0}, 3}}));

    PointSet two(f, {{f.from_int(0), f.from_int(0)},
                     {f.from_int(1), f.from_int(1)}});
    GroebnerBasis G2 = vanishing_gb(two, {2, 3});
    ASSERT_EQ(G2.size(), 2u);
    EXPECT_EQ(G2.elements()[0], from_terms(f, {{{2, 0}, 1}, {{1, 0}, 6}}));
    EXPECT_EQ(G2.elements()[1], from_terms(f, {{{0, 1}, 1}, {{1, 0}, 6}}));
    EXPECT_EQ(staircase_size(G2), 2u);
}

// A non-semi-grid subset whose basis leads with X^3 even though four
// distinct x's appear, and whose first element carries an XY term. Derived
// by hand: x^3 + wx^2 + wx + w^2 xy vanishes on all five points (w = raw 2).
TEST(VanishingBasis, SubsetWithShortPureXLead) {
    Field f = gf4();
    PointSet P(f, {{FieldElement(f, 0), FieldElement(f, 0)},
                   {FieldElement(f, 0), FieldElement(f, 1)},
                   {FieldElement(f, 1), FieldElement(f, 2)},
                   {FieldElement(f, 2), FieldElement(f, 3)},
                   {FieldElement(f, 3), FieldElement(f, 2)}});
    EXPECT_EQ(P.n_x(), 4u);
    GroebnerBasis G = vanishing_gb(P, {2, 3});
    EXPECT_EQ(G.pure_x_degree(), 3);
    EXPECT_EQ(G.elements()[0],
              from_terms(f, {{{3, 0}, 1}, {{2, 0}, 2}, {{1, 0}, 2}, {{1, 1}, 3}}));
    EXPECT_EQ(staircase_size(G), P.size());
    ASSERT_EQ(G.size(), 3u);
    EXPECT_EQ(G.elements()[2].leading_monomial(G.order()), (Monomial{2, 1}));
}

TEST(VanishingBasis, PropertiesOnRandomSubsets) {
    Field f = gf9();
    std::vector<AffinePoint> plane;
    for (const FieldElement& x : f.elements())
        for (const FieldElement& y : f.elements()) plane.push_back({x, y});
    PointSet whole(f, plane);

    std::mt19937 rng(77);
    const WeightedOrder orders[] = {{2, 3}, {3, 4}, {4, 3}};
    for (const WeightedOrder& ord : orders)
        for (size_t n : {1u, 2u, 5u, 9u, 17u, 30u}) {
            PointSet P = random_subset(whole, n, rng);
            GroebnerBasis G = vanishing_gb(P, ord);
            EXPECT_EQ(staircase_size(G), P.size());
            for (const BiPoly& g : G.elements()) {
                EXPECT_EQ(g.leading_coeff(ord), f.one());
                for (size_t t = 0; t < P.size(); ++t)
                    EXPECT_TRUE(g.evaluate_naive(P[t].x, P[t].y).is_zero());
            }
            for (size_t i = 0; i < G.size(); ++i)
                for (size_t j = 0; j < G.size(); ++j) {
                    if (i == j) continue;
                    const Monomial mi =
                        G.elements()[i].leading_monomial(ord);
                    EXPECT_NE(mi.j, G.elements()[j].leading_monomial(ord).j);
                    // reduced: no term anywhere divisible by another lead
                    for (const Monomial& t : G.elements()[j].support())
                        EXPECT_FALSE(mi.divides(t));
                }
        }
}

TEST(VanishingBasis, SPolynomialsReduceToZero) {
    Field f = gf4();
    PointSet P = hermitian2_points(f);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        PointSet S = trial == 0 ? P : random_subset(P, 2 + trial, rng);
        const WeightedOrder ord{2, 3};
        GroebnerBasis G = vanishing_gb(S, ord);
        const auto& E = G.elements();
        for (size_t i = 0; i < E.size(); ++i)
            for (size_t j = i + 1; j < E.size(); ++j) {
                const Monomial mi = E[i].leading_monomial(ord);
                const Monomial mj = E[j].leading_monomial(ord);
                const Monomial l{std::max(mi.i, mj.i), std::max(mi.j, mj.j)};
                BiPoly s =
                    E[i].mul_by_term(f.one(), {l.i - mi.i, l.j - mi.j}) -
                    E[j].mul_by_term(f.one(), {l.i - mj.i, l.j - mj.j});
                EXPECT_TRUE(testing::remainder_textbook(s, E, ord).is_zero());
            }
    }
}

TEST(IndependentMonomials, HermitianExamples) {
    Field f = gf4();
    PointSet P = hermitian2_points(f);
    const WeightedOrder ord{2, 3};

    EXPECT_EQ(compute_Bhat(P, ord, 0), (std::vector<Monomial>{{0, 0}}));
    EXPECT_EQ(compute_Bhat(P, ord, 4),
              (std::vector<Monomial>{{0, 0}, {1, 0}, {0, 1}, {2, 0}}));
    EXPECT_EQ(compute_Bhat(P, ord, 7),
              (std::vector<Monomial>{
                  {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {3, 0}, {2, 1}}));
    // at m = 9 the box holds x^4 (weight 8), but x^4 = x on the points
    EXPECT_EQ(compute_Bhat(P, ord, 9),
              (std::vector<Monomial>{{0, 0},
                                     {1, 0},
                                     {0, 1},
                                     {2, 0},
                                     {1, 1},
                                     {3, 0},
                                     {2, 1},
                                     {3, 1}}));
}

TEST(IndependentMonomials, CountMatchesRankAboveN) {
    Field f = gf9();
    std::vector<AffinePoint> plane;
    for (const FieldElement& x : f.elements())
        for (const FieldElement& y : f.elements()) plane.push_back({x, y});
    std::mt19937 rng(11);
    PointSet P = random_subset(PointSet(f, plane), 12, rng);
    const WeightedOrder ord{3, 4};
    // far above n: every fresh monomial is dependent, so exactly n survive
    auto bhat = compute_Bhat(P, ord, 200);
    EXPECT_EQ(bhat.size(), P.size());
}

TEST(Reduce, PinnedHermitianExamples) {
    Field f = gf4();
    GroebnerBasis G = vanishing_gb(hermitian2_points(f), {2, 3});

    BiPoly ysq = from_terms(f, {{{0, 2}, 1}});
    EXPECT_EQ(reduce(ysq, G),
              from_terms(f, {{{3, 0}, 1}, {{0, 1}, 1}}));

    BiPoly xq = from_terms(f, {{{4, 0}, 1}, {{1, 0}, 1}});
    EXPECT_TRUE(reduce(xq, G).is_zero());

    BiPoly standard =
        from_terms(f, {{{3, 1}, 2}, {{2, 0}, 3}, {{0, 0}, 1}});
    EXPECT_EQ(reduce(standard, G), standard);
}

TEST(Reduce, MatchesTextbookOracleAndVanishes) {
    Field f = gf4();
    PointSet full = hermitian2_points(f);
    const WeightedOrder ord{2, 3};
    std::mt19937 rng(123);
    std::uniform_int_distribution<uint32_t> coeff(0, f.order() - 1);

    for (int trial = 0; trial < 100; ++trial) {
        PointSet P =
            trial % 4 == 0 ? full : random_subset(full, 2 + trial % 7, rng);
        GroebnerBasis G = vanishing_gb(P, ord);
        const int64_t xcap = std::max<int64_t>(
            G.pure_x_degree(), static_cast<int64_t>(staircase_size(G)) - 1);
        BiPoly fhat(f);
        for (int64_t i = 0; i <= xcap; ++i)
            for (int64_t j = 0; j <= G.pure_y_degree(); ++j)
                fhat.set_coeff({static_cast<uint32_t>(i),
                                static_cast<uint32_t>(j)},
                               FieldElement(f, coeff(rng)));
        BiPoly r = reduce(fhat, G);
        EXPECT_EQ(r, testing::remainder_textbook(fhat, G.elements(), ord));
        // difference lies in the ideal
        BiPoly diff = fhat - r;
        for (size_t t = 0; t < P.size(); ++t)
            EXPECT_TRUE(diff.evaluate_naive(P[t].x, P[t].y).is_zero());
        // no reducible monomial survives
        for (const Monomial& m : r.support())
            for (const BiPoly& g : G.elements())
                EXPECT_FALSE(g.leading_monomial(ord).divides(m));
    }
}

TEST(Reduce, InputGates) {
    Field f = gf4();
    GroebnerBasis G = vanishing_gb(hermitian2_points(f), {2, 3});
    // staircase has 8 cells, pure powers X^4 and Y^2: x cap is 7, y cap is 2
    EXPECT_NO_THROW(reduce(from_terms(f, {{{7, 0}, 1}}), G));
    EXPECT_THROW(reduce(from_terms(f, {{{8, 0}, 1}}), G),
                 std::invalid_argument);
    EXPECT_THROW(reduce(from_terms(f, {{{0, 3}, 1}}), G),
                 std::invalid_argument);

    GroebnerBasis no_pure({2, 3}, {from_terms(f, {{{1, 1}, 1}})});
    EXPECT_THROW(reduce(from_terms(f, {{{0, 1}, 1}}), no_pure),
                 std::invalid_argument);

    Field g7 = gf7();
    EXPECT_THROW(reduce(BiPoly::from_term(g7.one(), {1, 0}), G),
                 std::invalid_argument);
}

TEST(Buchberger, UnitAndNonUnitIdeals) {
    Field f = gf4();
    const WeightedOrder ord{2, 3};

    // y^2 + x^3 is singular at the origin: partials are x^2 and 0
    BiPoly cusp = from_terms(f, {{{0, 2}, 1}, {{3, 0}, 1}});
    auto gb = buchberger({cusp, cusp.derivative_x(), cusp.derivative_y()}, ord);
    ASSERT_EQ(gb.size(), 2u);
    EXPECT_EQ(gb[0], from_terms(f, {{{2, 0}, 1}}));
    EXPECT_EQ(gb[1], from_terms(f, {{{0, 2}, 1}}));
    EXPECT_FALSE(ideal_is_unit({cusp, cusp.derivative_x(), cusp.derivative_y()},
                               ord));

    // x and x+1 have no common zero anywhere
    BiPoly x = BiPoly::from_term(f.one(), {1, 0});
    BiPoly x1 = from_terms(f, {{{1, 0}, 1}, {{0, 0}, 1}});
    EXPECT_TRUE(ideal_is_unit({x, x1}, ord));

    // the smooth curve equation: unit because d/dY gives a constant
    BiPoly h = from_terms(f, {{{0, 2}, 1}, {{0, 1}, 1}, {{3, 0}, 1}});
    EXPECT_TRUE(ideal_is_unit({h, h.derivative_x(), h.derivative_y()}, ord));
}

TEST(Buchberger, CompletionIsGroebner) {
    Field f = gf9();
    const WeightedOrder ord{2, 3};
    // start from generators that are not a basis: S-pair needed
    BiPoly g1 = from_terms(f, {{{0, 2}, 1}, {{1, 0}, 1}});   // y^2 + x
    BiPoly g2 = from_terms(f, {{{1, 1}, 1}, {{0, 0}, 2}});   // xy + 2
    auto gb = buchberger({g1, g2}, ord);
    ASSERT_FALSE(gb.empty());
    for (size_t i = 0; i < gb.size(); ++i)
        for (size_t j = i + 1; j < gb.size(); ++j) {
            const Monomial mi = gb[i].leading_monomial(ord);
            const Monomial mj = gb[j].leading_monomial(ord);
            const Monomial l{std::max(mi.i, mj.i), std::max(mi.j, mj.j)};
            BiPoly s = gb[i].mul_by_term(f.one(), {l.i - mi.i, l.j - mi.j}) -
                       gb[j].mul_by_term(f.one(), {l.i - mj.i, l.j - mj.j});
            EXPECT_TRUE(testing::remainder_textbook(s, gb, ord).is_zero());
        }
    // both original generators reduce to zero modulo the completion
    EXPECT_TRUE(testing::remainder_textbook(g1, gb, ord).is_zero());
    EXPECT_TRUE(testing::remainder_textbook(g2, gb, ord).is_zero());
}

}  // namespace
}  // namespace cab
