#pragma once

// Plane curves of the C_ab kind: a bivariate equation whose two pure powers
// X^b and Y^a dominate the support under the (a, b) weighting, with coprime
// a and b and no affine singular points. Validation, rational point
// enumeration, the classical point-count bound, and the stock families used
// throughout the tests and the CLI live here.

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cab/bivar.hpp"
#include "cab/geometry.hpp"
#include "cab/vanish.hpp"

namespace cab {

/// A validated curve. Construct through validate_cab or a family helper so
/// the invariants actually hold.
class CabCurve {
public:
    CabCurve(BiPoly equation, uint32_t a, uint32_t b)
        : h_(std::move(equation)), a_(a), b_(b) {}

    const Field& field() const { return h_.field(); }
    const BiPoly& equation() const { return h_; }
    uint32_t a() const { return a_; }
    uint32_t b() const { return b_; }
    WeightedOrder order() const { return {a_, b_}; }

    uint64_t genus() const {
        return static_cast<uint64_t>(a_ - 1) * (b_ - 1) / 2;
    }

    bool contains(const AffinePoint& p) const {
        return h_.evaluate_naive(p.x, p.y).is_zero();
    }

private:
    BiPoly h_;
    uint32_t a_, b_;
};

/// Checks every defining condition and hands back the curve; throws
/// std::domain_error naming the first violated condition.
inline CabCurve validate_cab(const BiPoly& h) {
    if (h.deg_y() < 1 || h.deg_x() < 1)
        throw std::domain_error("curve: equation must involve both variables");
    const uint32_t a = static_cast<uint32_t>(h.deg_y());
    const uint32_t b = static_cast<uint32_t>(h.deg_x());
    if (std::gcd(a, b) != 1)
        throw std::domain_error("curve: degrees share a factor");
    if (h.coeff({b, 0}).is_zero())
        throw std::domain_error("curve: pure X power of full degree missing");
    if (h.coeff({0, a}).is_zero())
        throw std::domain_error("curve: pure Y power of full degree missing");
    const WeightedOrder ord{a, b};
    const uint64_t cap = static_cast<uint64_t>(a) * b;
    for (const Monomial& m : h.support())
        if (ord.weight(m) > cap)
            throw std::domain_error("curve: support exceeds the weight cap");
    if (!ideal_is_unit({h, h.derivative_x(), h.derivative_y()}, ord))
        throw std::domain_error("curve: affine singular point exists");
    return CabCurve(h, a, b);
}

/// Same curve with the variables swapped (and the weights with them).
inline CabCurve transpose(const CabCurve& c) {
    BiPoly flipped(c.field());
    for (const Monomial& m : c.equation().support())
        flipped.set_coeff({m.j, m.i}, c.equation().coeff(m));
    return validate_cab(flipped);
}

/// All points of the base field plane lying on the curve, in canonical
/// order (x then y, by encoding).
inline PointSet rational_points(const CabCurve& c) {
    const Field& f = c.field();
    const BiPoly& h = c.equation();
    std::vector<AffinePoint> pts;
    std::vector<uint32_t> fiber_poly(h.deg_y() + 1);
    for (uint32_t alpha = 0; alpha < f.order(); ++alpha) {
        for (int64_t j = 0; j <= h.deg_y(); ++j)
            fiber_poly[j] = h.row(j).eval(FieldElement(f, alpha)).raw();
        for (uint32_t beta = 0; beta < f.order(); ++beta) {
            uint32_t acc = 0;
            for (size_t j = fiber_poly.size(); j-- > 0;)
                acc = f.raw_add(f.raw_mul(acc, beta), fiber_poly[j]);
            if (acc == 0)
                pts.push_back({FieldElement(f, alpha), FieldElement(f, beta)});
        }
    }
    if (pts.empty())
        throw std::domain_error("curve: no rational points over this field");
    return PointSet(f, std::move(pts));
}

/// Upper bound floor(2g sqrt(q)) + q on the number of affine rational
/// points.
inline uint64_t hasse_weil_bound(const CabCurve& c) {
    const uint64_t q = c.field().order();
    const uint64_t twice_genus =
        static_cast<uint64_t>(c.a() - 1) * (c.b() - 1);
    const uint64_t v = twice_genus * twice_genus * q;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r + q;
}

namespace detail {

inline std::pair<uint32_t, uint32_t> prime_power_split(uint32_t q) {
    if (q < 2) throw std::invalid_argument("family: size must be at least 2");
    uint32_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;  // q itself is prime
    uint32_t s = 0, rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++s;
    }
    if (rest != 1)
        throw std::invalid_argument("family: size is not a prime power");
    return {p, s};
}

inline std::shared_ptr<const Field> make_field(uint32_t p, uint32_t m) {
    return std::make_shared<const Field>(p, m, Field::default_modulus(p, m));
}

}  // namespace detail

/// A curve bundled with the field it owns.
struct CurveBundle {
    std::shared_ptr<const Field> field;
    CabCurve curve;
};

/// Y^q + Y = X^{q+1} over the field with q^2 elements: q^3 points arranged
/// as a maximal semi-grid (q^2 full fibers of size q).
inline CurveBundle hermitian(uint32_t q) {
    const auto [p, s] = detail::prime_power_split(q);
    auto field = detail::make_field(p, 2 * s);
    BiPoly h(*field);
    h.set_coeff({0, q}, field->one());
    h.set_coeff({0, 1}, field->one());
    h.set_coeff({q + 1, 0}, -field->one());
    return {field, validate_cab(h)};
}

/// Y^{q^{r-1}} + ... + Y^q + Y = X^e over the field with q^r elements,
/// e = (q^r - 1)/(q - 1): the additive form is the full trace to the
/// subfield with q elements, so every x-fiber has exactly q^{r-1} points and
/// the q^{2r-1} points form a maximal semi-grid. r = 2 recovers hermitian.
inline CurveBundle norm_trace(uint32_t q, uint32_t r) {
    if (r < 2) throw std::invalid_argument("norm_trace: need r >= 2");
    const auto [p, s] = detail::prime_power_split(q);
    auto field = detail::make_field(p, s * r);
    const uint32_t e =
        static_cast<uint32_t>((field->order() - 1) / (q - 1));
    BiPoly h(*field);
    uint32_t qpow = 1;
    for (uint32_t i = 0; i < r; ++i) {
        h.set_coeff({0, qpow}, field->one());
        qpow *= q;
    }
    h.set_coeff({e, 0}, -field->one());
    return {field, validate_cab(h)};
}

/// A curve plus its rational points and the largest semi-grid inside them.
struct SemiGridBundle {
    std::shared_ptr<const Field> field;
    CabCurve curve;
    PointSet all_points;
    PointSet semi_grid;
};

/// X^{q^{r-1}} + ... + X^q + X = Y^e over the field with q^r elements, for
/// any e >= 2 dividing (q^r - 1)/(q - 1). Fibers over trace-zero x values
/// hold the single point y = 0; the others hold exactly e points and
/// together form a semi-grid of e q^{r-1} (q - 1) points.
inline SemiGridBundle hermitian_like(uint32_t q, uint32_t r, uint32_t e) {
    if (r < 2) throw std::invalid_argument("hermitian_like: need r >= 2");
    const auto [p, s] = detail::prime_power_split(q);
    auto field = detail::make_field(p, s * r);
    const uint64_t emax = (field->order() - 1) / (q - 1);
    if (e < 2 || emax % e != 0)
        throw std::invalid_argument(
            "hermitian_like: exponent must divide (q^r-1)/(q-1)");
    BiPoly h(*field);
    uint32_t qpow = 1;
    for (uint32_t i = 0; i < r; ++i) {
        h.set_coeff({qpow, 0}, field->one());
        qpow *= q;
    }
    h.set_coeff({0, e}, -field->one());
    CabCurve curve = validate_cab(h);

    PointSet all = rational_points(curve);
    std::vector<AffinePoint> grid;
    for (const FieldElement& alpha : all.x_support()) {
        const auto fiber = all.y_fiber(alpha);
        if (fiber.size() != e) continue;
        for (const FieldElement& beta : fiber) grid.push_back({alpha, beta});
    }
    return {field, std::move(curve), std::move(all),
            PointSet(*field, std::move(grid))};
}

}  // namespace cab
