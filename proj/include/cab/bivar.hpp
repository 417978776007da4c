#pragma once

// Bivariate polynomials stored row-major in Y: rows_[j] is the univariate
// coefficient of Y^j as a polynomial in X. All comparisons of monomials go
// through WeightedOrder, the (a,b)-weighted degree order with ties broken
// toward the higher Y exponent.

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "cab/upoly.hpp"

namespace cab {

struct Monomial {
    uint32_t i = 0;  // X exponent
    uint32_t j = 0;  // Y exponent

    bool operator==(const Monomial& o) const { return i == o.i && j == o.j; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    bool divides(const Monomial& o) const { return i <= o.i && j <= o.j; }

    friend std::ostream& operator<<(std::ostream& os, const Monomial& m) {
        return os << "x^" << m.i << "y^" << m.j;
    }
};

/// Weighted monomial order: X^i Y^j is graded by a*i + b*j, and equal
/// weights compare by j (so among monomials of one weight, the one with the
/// larger Y exponent is the larger, putting X^b below Y^a). With gcd(a,b)=1
/// the pair (weight, j) identifies the monomial, so this is a total order.
struct WeightedOrder {
    uint32_t a = 1;
    uint32_t b = 1;

    uint64_t weight(const Monomial& m) const {
        return static_cast<uint64_t>(a) * m.i + static_cast<uint64_t>(b) * m.j;
    }

    bool less(const Monomial& x, const Monomial& y) const {
        const uint64_t wx = weight(x), wy = weight(y);
        if (wx != wy) return wx < wy;
        return x.j < y.j;
    }
};

class BiPoly {
public:
    explicit BiPoly(const Field& f) : f_(&f) {}

    static BiPoly from_term(const FieldElement& c, const Monomial& m) {
        BiPoly p(c.field());
        p.set_coeff(m, c);
        return p;
    }

    static BiPoly constant(const FieldElement& c) {
        return from_term(c, {0, 0});
    }

    /// Lift a polynomial in X alone (row j = 0).
    static BiPoly from_x_poly(const UniPoly& p) {
        BiPoly out(p.field());
        if (!p.is_zero()) out.rows_.push_back(p);
        return out;
    }

    /// Lift a polynomial in Y alone: coefficient k becomes row k.
    static BiPoly from_y_poly(const UniPoly& p) {
        const Field& f = p.field();
        BiPoly out(f);
        out.rows_.reserve(p.raw().size());
        for (uint32_t c : p.raw()) out.rows_.push_back(UniPoly(f, {c}));
        out.trim();
        return out;
    }

    const Field& field() const { return *f_; }
    bool is_zero() const { return rows_.empty(); }

    /// -1 when zero.
    int64_t deg_y() const { return static_cast<int64_t>(rows_.size()) - 1; }

    int64_t deg_x() const {
        int64_t d = -1;
        for (const UniPoly& r : rows_) d = std::max(d, r.degree());
        return d;
    }

    const std::vector<UniPoly>& rows() const { return rows_; }

    const UniPoly& row(size_t j) const {
        if (j >= rows_.size()) throw std::out_of_range("bipoly: row beyond deg_y");
        return rows_[j];
    }

    FieldElement coeff(const Monomial& m) const {
        if (m.j >= rows_.size()) return f_->zero();
        return rows_[m.j].coeff(m.i);
    }

    void set_coeff(const Monomial& m, const FieldElement& c) {
        if (m.j >= rows_.size()) {
            if (c.is_zero()) return;
            rows_.resize(m.j + 1, UniPoly(*f_));
        }
        rows_[m.j].set_coeff(m.i, c);
        trim();
    }

    /// Nonzero terms sorted by (j, i), the serialization order.
    std::vector<Monomial> support() const {
        std::vector<Monomial> out;
        for (size_t j = 0; j < rows_.size(); ++j)
            for (int64_t i = 0; i <= rows_[j].degree(); ++i)
                if (!rows_[j].coeff(i).is_zero())
                    out.push_back({static_cast<uint32_t>(i),
                                   static_cast<uint32_t>(j)});
        return out;
    }

    size_t term_count() const {
        size_t n = 0;
        for (const UniPoly& r : rows_)
            for (int64_t i = 0; i <= r.degree(); ++i)
                if (!r.coeff(i).is_zero()) ++n;
        return n;
    }

    int64_t weighted_degree(const WeightedOrder& ord) const {
        int64_t best = -1;
        for (const Monomial& m : support())
            best = std::max(best, static_cast<int64_t>(ord.weight(m)));
        return best;
    }

    Monomial leading_monomial(const WeightedOrder& ord) const {
        if (is_zero())
            throw std::domain_error("bipoly: zero has no leading monomial");
        bool first = true;
        Monomial best{};
        for (const Monomial& m : support())
            if (first || ord.less(best, m)) {
                best = m;
                first = false;
            }
        return best;
    }

    FieldElement leading_coeff(const WeightedOrder& ord) const {
        return coeff(leading_monomial(ord));
    }

    /// Horner in both variables; the per-point reference that the fast
    /// evaluation path is measured against.
    FieldElement evaluate_naive(const FieldElement& x,
                                const FieldElement& y) const {
        uint32_t acc = 0;
        for (size_t j = rows_.size(); j-- > 0;)
            acc = f_->raw_add(f_->raw_mul(acc, y.raw()),
                              rows_[j].eval(x).raw());
        return {*f_, acc};
    }

    BiPoly operator+(const BiPoly& o) const {
        check(o);
        BiPoly out(*f_);
        const size_t n = std::max(rows_.size(), o.rows_.size());
        out.rows_.reserve(n);
        for (size_t j = 0; j < n; ++j) out.rows_.push_back(row_or_zero(j) + o.row_or_zero(j));
        out.trim();
        return out;
    }

    BiPoly operator-(const BiPoly& o) const {
        check(o);
        BiPoly out(*f_);
        const size_t n = std::max(rows_.size(), o.rows_.size());
        out.rows_.reserve(n);
        for (size_t j = 0; j < n; ++j) out.rows_.push_back(row_or_zero(j) - o.row_or_zero(j));
        out.trim();
        return out;
    }

    BiPoly operator*(const BiPoly& o) const {
        check(o);
        BiPoly out(*f_);
        if (is_zero() || o.is_zero()) return out;
        out.rows_.assign(rows_.size() + o.rows_.size() - 1, UniPoly(*f_));
        for (size_t j1 = 0; j1 < rows_.size(); ++j1) {
            if (rows_[j1].is_zero()) continue;
            for (size_t j2 = 0; j2 < o.rows_.size(); ++j2)
                out.rows_[j1 + j2] =
                    out.rows_[j1 + j2] + rows_[j1] * o.rows_[j2];
        }
        out.trim();
        return out;
    }

    BiPoly scaled(const FieldElement& c) const {
        BiPoly out(*f_);
        if (c.is_zero()) return out;
        out.rows_.reserve(rows_.size());
        for (const UniPoly& r : rows_) out.rows_.push_back(r.scaled(c));
        out.trim();
        return out;
    }

    /// Multiply by the term c * X^i Y^j.
    BiPoly mul_by_term(const FieldElement& c, const Monomial& m) const {
        BiPoly out(*f_);
        if (c.is_zero() || is_zero()) return out;
        out.rows_.assign(rows_.size() + m.j, UniPoly(*f_));
        for (size_t j = 0; j < rows_.size(); ++j)
            out.rows_[j + m.j] = rows_[j].scaled(c).shifted(m.i);
        out.trim();
        return out;
    }

    /// Multiply every row by a polynomial in X alone.
    BiPoly mul_by_x_poly(const UniPoly& p) const {
        BiPoly out(*f_);
        for (const UniPoly& r : rows_) out.rows_.push_back(r * p);
        out.trim();
        return out;
    }

    BiPoly derivative_x() const {
        BiPoly out(*f_);
        for (const UniPoly& r : rows_) out.rows_.push_back(formal_derivative(r));
        out.trim();
        return out;
    }

    BiPoly derivative_y() const {
        BiPoly out(*f_);
        for (size_t j = 1; j < rows_.size(); ++j) {
            const uint32_t s = static_cast<uint32_t>(j % f_->characteristic());
            out.rows_.push_back(rows_[j].scaled(FieldElement(*f_, s)));
        }
        out.trim();
        return out;
    }

    bool operator==(const BiPoly& o) const {
        return rows_ == o.rows_ && f_->compatible(*o.f_);
    }
    bool operator!=(const BiPoly& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const BiPoly& p) {
        os << "{";
        bool first = true;
        for (const Monomial& m : p.support()) {
            if (!first) os << ", ";
            os << p.coeff(m).to_int() << "*" << m;
            first = false;
        }
        return os << "}";
    }

private:
    UniPoly row_or_zero(size_t j) const {
        return j < rows_.size() ? rows_[j] : UniPoly(*f_);
    }

    void check(const BiPoly& o) const {
        if (f_ != o.f_ && !f_->compatible(*o.f_))
            throw std::invalid_argument("bipoly: mixed fields");
    }

    void trim() {
        while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
    }

    const Field* f_;
    std::vector<UniPoly> rows_;
};

}  // namespace cab
