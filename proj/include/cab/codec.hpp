#pragma once

// Evaluation codes on a curve: messages are coefficient vectors over the
// independent monomials of weight at most m, codewords their values at the
// chosen points. Encoding is fast multipoint evaluation; unencoding is fast
// interpolation, followed on general point sets by division against the
// vanishing ideal's basis to push the interpolant back onto the message
// monomials.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cab/curve.hpp"
#include "cab/geometry.hpp"
#include "cab/interp.hpp"
#include "cab/mpeval.hpp"
#include "cab/vanish.hpp"

namespace cab {

using Message = std::vector<FieldElement>;
using Codeword = std::vector<FieldElement>;

/// Code parameters, frozen at construction: curve, evaluation points in the
/// order that defines codeword coordinates, weighted-degree cap m, and the
/// monomial basis of the message space. The vanishing basis for the general
/// unencode path is attached separately (it is a precomputation with its own
/// serialization) and at most once.
class CabCode {
public:
    CabCode(CabCurve curve, PointSet points, uint64_t m,
            std::vector<Monomial> bhat, bool maximal_semigrid)
        : curve_(std::move(curve)),
          points_(std::move(points)),
          m_(m),
          bhat_(std::move(bhat)),
          maximal_semigrid_(maximal_semigrid) {}

    const CabCurve& curve() const { return curve_; }
    const PointSet& points() const { return points_; }
    const Field& field() const { return points_.field(); }
    uint64_t m() const { return m_; }
    size_t n() const { return points_.size(); }
    size_t k() const { return bhat_.size(); }
    const std::vector<Monomial>& bhat() const { return bhat_; }
    bool maximal_semigrid() const { return maximal_semigrid_; }

    bool has_groebner() const { return gb_.has_value(); }
    const GroebnerBasis& groebner() const {
        if (!gb_) throw std::logic_error("code: groebner basis not attached");
        return *gb_;
    }
    void attach_groebner(GroebnerBasis g) {
        if (gb_) throw std::logic_error("code: groebner basis already attached");
        if (!(g.order().a == curve_.a() && g.order().b == curve_.b()))
            throw std::invalid_argument("code: basis under the wrong order");
        gb_ = std::move(g);
    }

private:
    CabCurve curve_;
    PointSet points_;
    uint64_t m_;
    std::vector<Monomial> bhat_;
    std::optional<GroebnerBasis> gb_;
    bool maximal_semigrid_;
};

/// Builds the code of order m on the given points. The cap m <= n + 2g - 1
/// is where the dimension stops growing; beyond it every choice is the same
/// code, so larger m is rejected as a parameter mistake.
inline CabCode new_code(const CabCurve& curve, const PointSet& points,
                        uint64_t m) {
    if (!curve.field().compatible(points.field()))
        throw std::invalid_argument("code: curve and points over mixed fields");
    const uint64_t cap = points.size() + 2 * curve.genus() - 1;
    if (m > cap)
        throw std::invalid_argument("code: order exceeds n + 2g - 1");
    for (size_t t = 0; t < points.size(); ++t)
        if (!curve.contains(points[t]))
            throw std::domain_error("code: point off the curve");
    std::vector<Monomial> bhat = compute_Bhat(points, curve.order(), m);
    const bool maximal = points.is_semi_grid() &&
                         points.nu_y() == curve.a() && m < points.size();
    return CabCode(curve, points, m, std::move(bhat), maximal);
}

/// True when unencoding needs no division step: the points form a semi-grid
/// with full fibers of size a and m stays below n.
inline bool is_maximal_semigrid(const CabCode& code) {
    return code.maximal_semigrid();
}

/// The polynomial whose coefficient over basis monomial i is msg[i].
inline BiPoly message_to_poly(const CabCode& code, const Message& msg) {
    if (msg.size() != code.k())
        throw std::invalid_argument("encode: message length is not k");
    const Field& f = code.field();
    BiPoly out(f);
    for (size_t i = 0; i < msg.size(); ++i) {
        if (!f.compatible(msg[i].field()))
            throw std::invalid_argument("encode: message over a mixed field");
        if (!msg[i].is_zero()) out.set_coeff(code.bhat()[i], msg[i]);
    }
    return out;
}

/// Codeword of msg: the message polynomial evaluated at every point, in
/// point order.
inline Codeword encode(const CabCode& code, const Message& msg) {
    return bivariate_mpe(message_to_poly(code, msg), code.points());
}

namespace detail {

inline Message poly_to_message(const CabCode& code, const BiPoly& f) {
    // Any support outside the basis means no message evaluates to the given
    // word: interpolants of codewords land inside the basis on both paths
    // (for maximal semi-grids because interpolation is a bijection onto the
    // degree box, in general by the support theorem for reduced forms), and
    // a word whose interpolant escapes therefore is not a codeword.
    std::set<std::pair<uint32_t, uint32_t>> allowed;
    for (const Monomial& m : code.bhat()) allowed.insert({m.i, m.j});
    for (const Monomial& m : f.support())
        if (!allowed.count({m.i, m.j}))
            throw std::domain_error("unencode: word is not a codeword");
    Message msg;
    msg.reserve(code.k());
    for (const Monomial& m : code.bhat()) msg.push_back(f.coeff(m));
    return msg;
}

}  // namespace detail

/// Recovers the message whose encoding is cw. On a maximal semi-grid the
/// interpolant is the message polynomial itself; otherwise it is divided
/// against the vanishing basis first (attach_groebner beforehand).
/// force_general runs the division path even where the fast path applies,
/// for cross-checking.
///
/// For m >= n distinct messages never collide: any polynomial vanishing on
/// all points has a reducible leading monomial, so two basis-supported
/// interpolants of the same word would differ by an element of the vanishing
/// ideal that the basis support cannot carry.
inline Message unencode(const CabCode& code, const Codeword& cw,
                        bool force_general = false) {
    if (cw.size() != code.n())
        throw std::invalid_argument("unencode: word length is not n");
    for (const FieldElement& v : cw)
        if (!code.field().compatible(v.field()))
            throw std::invalid_argument("unencode: word over a mixed field");
    const BiPoly fhat = bivariate_interp(code.points(), cw);
    if (code.maximal_semigrid() && !force_general)
        return detail::poly_to_message(code, fhat);
    if (!code.has_groebner())
        throw std::logic_error(
            "unencode: general path needs the precomputed groebner basis");
    return detail::poly_to_message(code, reduce(fhat, code.groebner()));
}

}  // namespace cab
