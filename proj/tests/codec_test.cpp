#include "cab/codec.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

namespace cab {
namespace {

struct Fixture {
    CurveBundle hb = hermitian(2);
    PointSet points = rational_points(hb.curve);
};

Message random_message(const Field& f, size_t k, std::mt19937& rng) {
    std::uniform_int_distribution<uint32_t> d(0, f.order() - 1);
    Message m;
    for (size_t i = 0; i < k; ++i) m.emplace_back(f, d(rng));
    return m;
}

PointSet take(const PointSet& P, std::vector<size_t> idx) {
    std::vector<AffinePoint> pts;
    for (size_t t : idx) pts.push_back(P[t]);
    return PointSet(P.field(), pts);
}

Codeword naive_encode(const CabCode& code, const Message& msg) {
    const PointSet& P = code.points();
    Codeword out;
    for (size_t t = 0; t < P.size(); ++t) {
        FieldElement acc = code.field().zero();
        for (size_t i = 0; i < msg.size(); ++i) {
            const Monomial m = code.bhat()[i];
            acc += msg[i] * P[t].x.pow(m.i) * P[t].y.pow(m.j);
        }
        out.push_back(acc);
    }
    return out;
}

TEST(NewCode, ParametersAndFlag) {
    Fixture fx;
    CabCode c4 = new_code(fx.hb.curve, fx.points, 4);
    EXPECT_EQ(c4.n(), 8u);
    EXPECT_EQ(c4.k(), 4u);  // m + 1 - g with genus 1
    EXPECT_TRUE(is_maximal_semigrid(c4));

    CabCode c9 = new_code(fx.hb.curve, fx.points, 9);  // m = n + 2g - 1
    EXPECT_EQ(c9.k(), 8u);
    EXPECT_FALSE(is_maximal_semigrid(c9));  // m >= n

    CabCode c7 = new_code(fx.hb.curve,
                          take(fx.points, {0, 1, 2, 3, 4, 5, 6}), 4);
    EXPECT_FALSE(is_maximal_semigrid(c7));  // one fiber lost a point

    EXPECT_THROW(new_code(fx.hb.curve, fx.points, 10), std::invalid_argument);

    const Field& f = *fx.hb.field;
    PointSet off(f, {{FieldElement(f, 1), FieldElement(f, 1)}});
    EXPECT_THROW(new_code(fx.hb.curve, off, 2), std::domain_error);
}

TEST(NewCode, MessagePolynomialMap) {
    Fixture fx;
    const Field& f = *fx.hb.field;
    CabCode code = new_code(fx.hb.curve, fx.points, 4);

    Message unit_x = {f.zero(), f.one(), f.zero(), f.zero()};
    EXPECT_EQ(message_to_poly(code, unit_x), BiPoly::from_term(f.one(), {1, 0}));

    Message zero(4, f.zero());
    EXPECT_TRUE(message_to_poly(code, zero).is_zero());

    Message ones(4, f.one());
    BiPoly want(f);
    want.set_coeff({0, 0}, f.one());
    want.set_coeff({1, 0}, f.one());
    want.set_coeff({0, 1}, f.one());
    want.set_coeff({2, 0}, f.one());
    EXPECT_EQ(message_to_poly(code, ones), want);

    EXPECT_THROW(message_to_poly(code, Message(3, f.zero())),
                 std::invalid_argument);
}

TEST(Encode, PinnedCoordinateVectors) {
    Fixture fx;
    const Field& f = *fx.hb.field;
    CabCode code = new_code(fx.hb.curve, fx.points, 4);

    Message unit_x = {f.zero(), f.one(), f.zero(), f.zero()};
    const uint32_t want_x[8] = {0, 0, 1, 1, 2, 2, 3, 3};
    Codeword cx = encode(code, unit_x);
    for (size_t t = 0; t < 8; ++t) EXPECT_EQ(cx[t].raw(), want_x[t]);

    Message unit_y = {f.zero(), f.zero(), f.one(), f.zero()};
    const uint32_t want_y[8] = {0, 1, 2, 3, 2, 3, 2, 3};
    Codeword cy = encode(code, unit_y);
    for (size_t t = 0; t < 8; ++t) EXPECT_EQ(cy[t].raw(), want_y[t]);

    Codeword cz = encode(code, Message(4, f.zero()));
    for (const FieldElement& v : cz) EXPECT_TRUE(v.is_zero());
}

TEST(Encode, MatchesGeneratorMatrixAndLinearity) {
    Fixture fx;
    SemiGridBundle like = hermitian_like(3, 2, 2);
    std::vector<CabCode> codes;
    codes.push_back(new_code(fx.hb.curve, fx.points, 4));
    codes.push_back(new_code(fx.hb.curve, fx.points, 9));
    codes.push_back(
        new_code(fx.hb.curve, take(fx.points, {0, 1, 2, 3, 4, 6}), 4));
    codes.push_back(new_code(like.curve, like.semi_grid, 6));

    std::mt19937 rng(31);
    for (const CabCode& code : codes) {
        const Field& kf = code.field();
        for (int trial = 0; trial < 10; ++trial) {
            Message m1 = random_message(kf, code.k(), rng);
            Message m2 = random_message(kf, code.k(), rng);
            Codeword c1 = encode(code, m1);
            EXPECT_EQ(c1, naive_encode(code, m1));
            Codeword c2 = encode(code, m2);
            Message sum;
            for (size_t i = 0; i < m1.size(); ++i) sum.push_back(m1[i] + m2[i]);
            Codeword csum = encode(code, sum);
            for (size_t t = 0; t < c1.size(); ++t)
                EXPECT_EQ(csum[t], c1[t] + c2[t]);
        }
    }
}

TEST(Unencode, FastPathRoundTripAndPinnedInterpolant) {
    Fixture fx;
    const Field& f = *fx.hb.field;
    CabCode code = new_code(fx.hb.curve, fx.points, 4);

    Message unit_x2 = {f.zero(), f.zero(), f.zero(), f.one()};
    Codeword cw = encode(code, unit_x2);
    // on this maximal semi-grid the interpolant is the monomial itself
    EXPECT_EQ(bivariate_interp(code.points(), cw),
              BiPoly::from_term(f.one(), {2, 0}));
    EXPECT_EQ(unencode(code, cw), unit_x2);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Message msg = random_message(f, code.k(), rng);
        EXPECT_EQ(unencode(code, encode(code, msg)), msg);
    }

    Codeword zeros(code.n(), f.zero());
    Message zmsg = unencode(code, zeros);
    for (const FieldElement& v : zmsg) EXPECT_TRUE(v.is_zero());
}

TEST(Unencode, GeneralPathAgreesWithFastPath) {
    Fixture fx;
    const Field& f = *fx.hb.field;
    CabCode code = new_code(fx.hb.curve, fx.points, 4);
    code.attach_groebner(vanishing_gb(code.points(), fx.hb.curve.order()));

    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        Message msg = random_message(f, code.k(), rng);
        Codeword cw = encode(code, msg);
        EXPECT_EQ(unencode(code, cw, /*force_general=*/true), msg);
        EXPECT_EQ(unencode(code, cw), msg);
    }
}

TEST(Unencode, GeneralPathConfigurations) {
    Fixture fx;
    std::mt19937 rng(29);

    // m >= n: the basis is a strict subset of the weight box
    CabCode c9 = new_code(fx.hb.curve, fx.points, 9);
    c9.attach_groebner(vanishing_gb(c9.points(), fx.hb.curve.order()));
    for (int trial = 0; trial < 50; ++trial) {
        Message msg = random_message(*fx.hb.field, c9.k(), rng);
        EXPECT_EQ(unencode(c9, encode(c9, msg)), msg);
    }

    // broken fibers (2,2,1,1)
    CabCode c6 = new_code(fx.hb.curve,
                          take(fx.points, {0, 1, 2, 3, 4, 6}), 4);
    c6.attach_groebner(vanishing_gb(c6.points(), fx.hb.curve.order()));
    for (int trial = 0; trial < 50; ++trial) {
        Message msg = random_message(*fx.hb.field, c6.k(), rng);
        EXPECT_EQ(unencode(c6, encode(c6, msg)), msg);
    }

    // the five-point set whose basis leads with X^3 despite four x's:
    // interpolants here reach x-degree past the pure-X lead
    CabCode c5 = new_code(fx.hb.curve,
                          take(fx.points, {0, 1, 2, 5, 6}), 4);
    c5.attach_groebner(vanishing_gb(c5.points(), fx.hb.curve.order()));
    EXPECT_EQ(c5.groebner().pure_x_degree(), 3);
    for (int trial = 0; trial < 50; ++trial) {
        Message msg = random_message(*fx.hb.field, c5.k(), rng);
        EXPECT_EQ(unencode(c5, encode(c5, msg)), msg);
    }
}

TEST(Unencode, TransposedOrientationCodes) {
    SemiGridBundle like = hermitian_like(2, 3, 7);  // a = 7 > b = 4
    std::mt19937 rng(41);

    CabCode fast = new_code(like.curve, like.semi_grid, 10);
    EXPECT_TRUE(is_maximal_semigrid(fast));
    EXPECT_EQ(fast.k(), 4u);  // 1, y, x, y^2 under weights (7, 4)
    fast.attach_groebner(vanishing_gb(fast.points(), like.curve.order()));
    for (int trial = 0; trial < 30; ++trial) {
        Message msg = random_message(*like.field, fast.k(), rng);
        Codeword cw = encode(fast, msg);
        EXPECT_EQ(unencode(fast, cw), msg);
        EXPECT_EQ(unencode(fast, cw, /*force_general=*/true), msg);
    }

    // semi-grid plus one trace-zero singleton: general path on a > b
    std::vector<AffinePoint> pts;
    for (size_t t = 0; t < like.semi_grid.size(); ++t)
        pts.push_back(like.semi_grid[t]);
    for (size_t t = 0; t < like.all_points.size(); ++t)
        if (like.all_points[t].y.is_zero()) {
            pts.push_back(like.all_points[t]);
            break;
        }
    PointSet mixed(*like.field, pts);
    EXPECT_FALSE(mixed.is_semi_grid());
    CabCode gen = new_code(like.curve, mixed, 20);
    gen.attach_groebner(vanishing_gb(gen.points(), like.curve.order()));
    for (int trial = 0; trial < 20; ++trial) {
        Message msg = random_message(*like.field, gen.k(), rng);
        EXPECT_EQ(unencode(gen, encode(gen, msg)), msg);
    }
}

TEST(Unencode, DetectsNonCodewords) {
    Fixture fx;
    const Field& f = *fx.hb.field;
    CabCode code = new_code(fx.hb.curve, fx.points, 4);
    code.attach_groebner(vanishing_gb(code.points(), fx.hb.curve.order()));

    std::mt19937 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        Codeword cw = encode(code, random_message(f, code.k(), rng));
        // distance is at least n - m = 4, so one flipped coordinate can
        // never land on another codeword
        cw[trial % cw.size()] += f.one();
        EXPECT_THROW(unencode(code, cw), std::domain_error);
        EXPECT_THROW(unencode(code, cw, /*force_general=*/true),
                     std::domain_error);
    }
}

TEST(Unencode, WeightMeetsGoppaBound) {
    Fixture fx;
    const Field& f = *fx.hb.field;
    CabCode code = new_code(fx.hb.curve, fx.points, 4);
    std::mt19937 rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        Message msg = random_message(f, code.k(), rng);
        bool zero = true;
        for (const FieldElement& v : msg) zero = zero && v.is_zero();
        if (zero) msg[0] = f.one();
        size_t weight = 0;
        for (const FieldElement& v : encode(code, msg))
            if (!v.is_zero()) ++weight;
        EXPECT_GE(weight, code.n() - code.m());
    }
}

TEST(Unencode, GuardsAndAttachRules) {
    Fixture fx;
    const Field& f = *fx.hb.field;
    CabCode c6 = new_code(fx.hb.curve,
                          take(fx.points, {0, 1, 2, 3, 4, 6}), 4);
    Codeword cw = encode(c6, Message(c6.k(), f.zero()));
    EXPECT_THROW(unencode(c6, cw), std::logic_error);  // no basis attached

    EXPECT_THROW(c6.attach_groebner(vanishing_gb(c6.points(), {3, 2})),
                 std::invalid_argument);  // wrong order
    c6.attach_groebner(vanishing_gb(c6.points(), fx.hb.curve.order()));
    EXPECT_THROW(c6.attach_groebner(vanishing_gb(c6.points(), {2, 3})),
                 std::logic_error);  // second attach

    EXPECT_THROW(unencode(c6, Codeword(3, f.zero())), std::invalid_argument);
    EXPECT_THROW(encode(c6, Message(1, f.zero())), std::invalid_argument);
}

}  // namespace
}  // namespace cab
