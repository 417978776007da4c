#pragma once

// Univariate polynomials over a Field, plus the subproduct-tree toolkit:
// balanced partition trees, vanishing polynomials, multipoint evaluation by
// remaindering down the tree, and interpolation by combining up it.
// Multiplication switches from schoolbook to Karatsuba at ~32 coefficients;
// division with remainder switches to Newton (power-series) inversion at 64,
// where the two half-size products start beating the cache-friendly long
// division. Both keep evaluation and interpolation soft-linear.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cab/field.hpp"

namespace cab {

namespace detail {

constexpr size_t kKaratsubaCutoff = 32;
constexpr size_t kNewtonCutoff = 64;
constexpr size_t kHornerCutoff = 16;

inline std::vector<uint32_t> mul_schoolbook(const Field& f, const uint32_t* a,
                                            size_t na, const uint32_t* b,
                                            size_t nb) {
    std::vector<uint32_t> out(na + nb - 1, 0);
    for (size_t i = 0; i < na; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < nb; ++j)
            out[i + j] = f.raw_add(out[i + j], f.raw_mul(a[i], b[j]));
    }
    return out;
}

// Both operands have length n; result has length 2n-1.
inline std::vector<uint32_t> mul_karatsuba(const Field& f, const uint32_t* a,
                                           const uint32_t* b, size_t n) {
    if (n <= kKaratsubaCutoff) return mul_schoolbook(f, a, n, b, n);
    const size_t h = n / 2;
    const size_t hi = n - h;
    std::vector<uint32_t> z0 = mul_karatsuba(f, a, b, h);
    std::vector<uint32_t> z2 = mul_karatsuba(f, a + h, b + h, hi);
    std::vector<uint32_t> sa(a + h, a + n), sb(b + h, b + n);
    for (size_t i = 0; i < h; ++i) {
        sa[i] = f.raw_add(sa[i], a[i]);
        sb[i] = f.raw_add(sb[i], b[i]);
    }
    std::vector<uint32_t> z1 = mul_karatsuba(f, sa.data(), sb.data(), hi);
    for (size_t i = 0; i < z0.size(); ++i) z1[i] = f.raw_sub(z1[i], z0[i]);
    for (size_t i = 0; i < z2.size(); ++i) z1[i] = f.raw_sub(z1[i], z2[i]);
    std::vector<uint32_t> out(2 * n - 1, 0);
    std::copy(z0.begin(), z0.end(), out.begin());
    for (size_t i = 0; i < z1.size(); ++i)
        out[h + i] = f.raw_add(out[h + i], z1[i]);
    for (size_t i = 0; i < z2.size(); ++i)
        out[2 * h + i] = f.raw_add(out[2 * h + i], z2[i]);
    return out;
}

inline std::vector<uint32_t> mul_raw(const Field& f, const uint32_t* a,
                                     size_t na, const uint32_t* b, size_t nb) {
    if (na == 0 || nb == 0) return {};
    if (na < nb) {
        std::swap(a, b);
        std::swap(na, nb);
    }
    if (nb <= kKaratsubaCutoff) return mul_schoolbook(f, a, na, b, nb);
    if (na > 2 * nb) {
        // Long-by-short: multiply block by block so each product is balanced.
        std::vector<uint32_t> out(na + nb - 1, 0);
        for (size_t off = 0; off < na; off += nb) {
            const size_t len = std::min(nb, na - off);
            std::vector<uint32_t> part = mul_raw(f, a + off, len, b, nb);
            for (size_t i = 0; i < part.size(); ++i)
                out[off + i] = f.raw_add(out[off + i], part[i]);
        }
        return out;
    }
    std::vector<uint32_t> pa(a, a + na), pb(b, b + nb);
    pb.resize(na, 0);
    std::vector<uint32_t> out = mul_karatsuba(f, pa.data(), pb.data(), na);
    out.resize(na + nb - 1);
    return out;
}

// Inverse of g as a power series mod X^l; g must have constant term 1.
inline std::vector<uint32_t> series_inverse(const Field& f,
                                            const std::vector<uint32_t>& g,
                                            size_t l) {
    assert(!g.empty() && g[0] == 1);
    const uint32_t two = f.raw_add(1, 1);
    std::vector<uint32_t> h{1};
    size_t prec = 1;
    while (prec < l) {
        prec = std::min(2 * prec, l);
        const size_t gl = std::min(g.size(), prec);
        std::vector<uint32_t> t = mul_raw(f, g.data(), gl, h.data(), h.size());
        t.resize(prec, 0);
        for (auto& c : t) c = f.raw_neg(c);
        t[0] = f.raw_add(t[0], two);  // t = 2 - g*h
        h = mul_raw(f, h.data(), h.size(), t.data(), t.size());
        h.resize(prec, 0);
    }
    return h;
}

}  // namespace detail

/// Dense univariate polynomial; coeffs_[i] is the packed coefficient of X^i.
/// Canonical form keeps no trailing zeros, so the zero polynomial is empty
/// and degree() reports -1 for it.
class UniPoly {
public:
    explicit UniPoly(const Field& f) : f_(&f) {}

    UniPoly(const Field& f, std::vector<uint32_t> coeffs)
        : f_(&f), coeffs_(std::move(coeffs)) {
        for ([[maybe_unused]] uint32_t c : coeffs_) assert(c < f.order());
        trim();
    }

    static UniPoly constant(const FieldElement& c) {
        return UniPoly(c.field(), {c.raw()});
    }

    /// The monomial c * X^k.
    static UniPoly term(const FieldElement& c, size_t k) {
        if (c.is_zero()) return UniPoly(c.field());
        std::vector<uint32_t> v(k + 1, 0);
        v[k] = c.raw();
        return UniPoly(c.field(), std::move(v));
    }

    const Field& field() const { return *f_; }
    bool is_zero() const { return coeffs_.empty(); }
    int64_t degree() const { return static_cast<int64_t>(coeffs_.size()) - 1; }
    const std::vector<uint32_t>& raw() const { return coeffs_; }

    FieldElement coeff(size_t i) const {
        return {*f_, i < coeffs_.size() ? coeffs_[i] : 0};
    }

    void set_coeff(size_t i, const FieldElement& c) {
        if (i >= coeffs_.size()) {
            if (c.is_zero()) return;
            coeffs_.resize(i + 1, 0);
        }
        coeffs_[i] = c.raw();
        trim();
    }

    FieldElement leading_coeff() const {
        if (is_zero()) throw std::domain_error("upoly: zero has no leading coefficient");
        return {*f_, coeffs_.back()};
    }

    FieldElement eval(const FieldElement& x) const {
        uint32_t acc = 0;
        for (size_t i = coeffs_.size(); i-- > 0;)
            acc = f_->raw_add(f_->raw_mul(acc, x.raw()), coeffs_[i]);
        return {*f_, acc};
    }

    UniPoly operator+(const UniPoly& o) const {
        check(o);
        std::vector<uint32_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
        for (size_t i = 0; i < out.size(); ++i)
            out[i] = f_->raw_add(i < coeffs_.size() ? coeffs_[i] : 0,
                                 i < o.coeffs_.size() ? o.coeffs_[i] : 0);
        return UniPoly(*f_, std::move(out));
    }

    UniPoly operator-(const UniPoly& o) const {
        check(o);
        std::vector<uint32_t> out(std::max(coeffs_.size(), o.coeffs_.size()), 0);
        for (size_t i = 0; i < out.size(); ++i)
            out[i] = f_->raw_sub(i < coeffs_.size() ? coeffs_[i] : 0,
                                 i < o.coeffs_.size() ? o.coeffs_[i] : 0);
        return UniPoly(*f_, std::move(out));
    }

    UniPoly operator*(const UniPoly& o) const {
        check(o);
        return UniPoly(*f_, detail::mul_raw(*f_, coeffs_.data(), coeffs_.size(),
                                            o.coeffs_.data(), o.coeffs_.size()));
    }

    UniPoly scaled(const FieldElement& c) const {
        std::vector<uint32_t> out(coeffs_);
        for (auto& v : out) v = f_->raw_mul(v, c.raw());
        return UniPoly(*f_, std::move(out));
    }

    /// Multiply by X^k.
    UniPoly shifted(size_t k) const {
        if (is_zero()) return *this;
        std::vector<uint32_t> out(coeffs_.size() + k, 0);
        std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + k);
        return UniPoly(*f_, std::move(out));
    }

    bool operator==(const UniPoly& o) const {
        return coeffs_ == o.coeffs_ && f_->compatible(*o.f_);
    }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
        os << "[";
        for (size_t i = 0; i < p.coeffs_.size(); ++i)
            os << (i ? " " : "") << p.coeffs_[i];
        return os << "]";
    }

private:
    void check(const UniPoly& o) const {
        if (f_ != o.f_ && !f_->compatible(*o.f_))
            throw std::invalid_argument("upoly: mixed fields");
    }

    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    const Field* f_;
    std::vector<uint32_t> coeffs_;
};

/// Quotient and remainder with deg(r) < deg(den). Newton inversion of the
/// reversed divisor once the quotient is long enough to pay for it.
inline std::pair<UniPoly, UniPoly> divrem(const UniPoly& num,
                                          const UniPoly& den) {
    if (den.is_zero()) throw std::domain_error("upoly: division by zero");
    const Field& f = num.field();
    if (!f.compatible(den.field()))
        throw std::invalid_argument("upoly: mixed fields");
    if (num.degree() < den.degree()) return {UniPoly(f), num};

    const FieldElement lc = den.leading_coeff();
    if (!(lc == f.one())) {
        auto [q, r] = divrem(num, den.scaled(lc.inv()));
        return {q.scaled(lc.inv()), r};
    }

    const std::vector<uint32_t>& n = num.raw();
    const std::vector<uint32_t>& d = den.raw();
    const size_t e = d.size() - 1;             // divisor degree
    const size_t l = n.size() - d.size() + 1;  // quotient length

    if (e == 0) return {num, UniPoly(f)};  // monic constant: q = num

    if (l <= detail::kNewtonCutoff || e <= detail::kNewtonCutoff) {
        std::vector<uint32_t> r(n);
        std::vector<uint32_t> q(l, 0);
        for (size_t k = n.size(); k-- > e;) {
            const uint32_t c = r[k];
            if (c == 0) continue;
            q[k - e] = c;
            r[k] = 0;
            for (size_t s = 0; s < e; ++s)
                r[k - e + s] = f.raw_sub(r[k - e + s], f.raw_mul(c, d[s]));
        }
        r.resize(e);
        return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
    }

    std::vector<uint32_t> drev(d.rbegin(), d.rend());
    std::vector<uint32_t> nrev(n.rbegin(), n.rend());
    std::vector<uint32_t> hinv = detail::series_inverse(f, drev, l);
    std::vector<uint32_t> qrev =
        detail::mul_raw(f, nrev.data(), std::min(nrev.size(), l), hinv.data(),
                        hinv.size());
    qrev.resize(l, 0);
    std::vector<uint32_t> q(qrev.rbegin(), qrev.rend());
    // Remainder needs only the low e coefficients of num - q*den.
    std::vector<uint32_t> t = detail::mul_raw(
        f, q.data(), std::min(q.size(), e), d.data(), std::min(d.size(), e));
    std::vector<uint32_t> r(e, 0);
    for (size_t i = 0; i < e; ++i)
        r[i] = f.raw_sub(i < n.size() ? n[i] : 0, i < t.size() ? t[i] : 0);
    return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
}

inline UniPoly rem(const UniPoly& num, const UniPoly& den) {
    return divrem(num, den).second;
}

inline UniPoly formal_derivative(const UniPoly& p) {
    const Field& f = p.field();
    if (p.degree() < 1) return UniPoly(f);
    const std::vector<uint32_t>& c = p.raw();
    std::vector<uint32_t> out(c.size() - 1, 0);
    for (size_t k = 1; k < c.size(); ++k) {
        const uint32_t scalar = static_cast<uint32_t>(k % f.characteristic());
        out[k - 1] = f.raw_mul(c[k], scalar);
    }
    return UniPoly(f, std::move(out));
}

/// Balanced binary partition of a duplicate-free point list. Points are held
/// sorted ascending by packed encoding; node i covers the half-open range
/// [begin, end) of that array, and splits put ceil(size/2) points on the
/// left. Node 0 is the root, children precede siblings (preorder).
class PartitionTree {
public:
    struct Node {
        size_t begin, end;
        int32_t left = -1, right = -1;
        size_t size() const { return end - begin; }
        bool is_leaf() const { return left < 0; }
    };

    PartitionTree(const Field& f, std::vector<uint32_t> sorted_points)
        : f_(&f), points_(std::move(sorted_points)) {
        if (points_.empty())
            throw std::invalid_argument("partition tree: empty point set");
        for (size_t i = 0; i + 1 < points_.size(); ++i)
            if (points_[i] >= points_[i + 1])
                throw std::invalid_argument(
                    "partition tree: points must be distinct");
        nodes_.reserve(2 * points_.size());
        build(0, points_.size());
    }

    const Field& field() const { return *f_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<uint32_t>& points() const { return points_; }
    size_t size() const { return points_.size(); }

    /// Node index whose range is exactly [begin, end), or -1.
    int32_t find_node(size_t begin, size_t end) const {
        int32_t id = 0;
        while (true) {
            const Node& n = nodes_[id];
            if (n.begin == begin && n.end == end) return id;
            if (n.is_leaf()) return -1;
            if (end <= nodes_[n.left].end)
                id = n.left;
            else if (begin >= nodes_[n.right].begin)
                id = n.right;
            else
                return -1;
        }
    }

private:
    int32_t build(size_t begin, size_t end) {
        const int32_t id = static_cast<int32_t>(nodes_.size());
        nodes_.push_back({begin, end, -1, -1});
        if (end - begin > 1) {
            const size_t mid = begin + (end - begin + 1) / 2;
            nodes_[id].left = build(begin, mid);
            nodes_[id].right = build(mid, end);
        }
        return id;
    }

    const Field* f_;
    std::vector<uint32_t> points_;
    std::vector<Node> nodes_;
};

inline PartitionTree build_partition_tree(const Field& f,
                                          const std::vector<FieldElement>& S) {
    std::vector<uint32_t> pts;
    pts.reserve(S.size());
    for (const FieldElement& x : S) {
        if (!f.compatible(x.field()))
            throw std::invalid_argument("partition tree: mixed fields");
        pts.push_back(x.raw());
    }
    std::sort(pts.begin(), pts.end());
    return PartitionTree(f, std::move(pts));
}

/// Vanishing polynomial prod (X - alpha) over each node's subset, indexed by
/// node id. The root entry vanishes on the whole set.
inline std::vector<UniPoly> tree_vanish(const PartitionTree& T) {
    const Field& f = T.field();
    const auto& nodes = T.nodes();
    std::vector<UniPoly> out(nodes.size(), UniPoly(f));
    // Children have larger ids than their parent, so fill in reverse.
    for (size_t id = nodes.size(); id-- > 0;) {
        const auto& n = nodes[id];
        if (n.is_leaf())
            out[id] = UniPoly(f, {f.raw_neg(T.points()[n.begin]), 1});
        else
            out[id] = out[n.left] * out[n.right];
    }
    return out;
}

/// Series inverse of each node's reversed vanishing polynomial, to the
/// precision the walk divisions need. Building these once per tree keeps
/// repeated walks (one per row in the bivariate case) from redoing the
/// Newton iteration at every node. Nodes small enough for schoolbook
/// division stay empty.
inline std::vector<UniPoly> tree_inverses(const PartitionTree& T,
                                          const std::vector<UniPoly>& U) {
    const Field& f = T.field();
    const auto& nodes = T.nodes();
    std::vector<UniPoly> out(nodes.size(), UniPoly(f));
    for (size_t id = 0; id < nodes.size(); ++id) {
        if (nodes[id].size() <= detail::kNewtonCutoff) continue;
        const std::vector<uint32_t>& d = U[id].raw();
        std::vector<uint32_t> drev(d.rbegin(), d.rend());
        out[id] =
            UniPoly(f, detail::series_inverse(f, drev, nodes[id].size() + 1));
    }
    return out;
}

namespace detail {

/// Remainder by a monic divisor whose reversal's series inverse is already
/// known. Callers guarantee hinv covers precision deg(num) - deg(den) + 1;
/// an empty hinv means the divisor is small enough that schoolbook wins.
inline UniPoly rem_cached(const UniPoly& num, const UniPoly& den,
                          const UniPoly& hinv) {
    if (num.degree() < den.degree()) return num;
    if (hinv.is_zero()) return rem(num, den);
    const Field& f = num.field();
    const std::vector<uint32_t>& n = num.raw();
    const std::vector<uint32_t>& d = den.raw();
    const size_t e = d.size() - 1;
    const size_t l = n.size() - d.size() + 1;
    std::vector<uint32_t> nrev(n.rbegin(), n.rend());
    std::vector<uint32_t> qrev =
        mul_raw(f, nrev.data(), std::min(nrev.size(), l), hinv.raw().data(),
                std::min(hinv.raw().size(), l));
    qrev.resize(l, 0);
    std::vector<uint32_t> q(qrev.rbegin(), qrev.rend());
    std::vector<uint32_t> t = mul_raw(f, q.data(), std::min(q.size(), e),
                                      d.data(), std::min(d.size(), e));
    std::vector<uint32_t> r(e, 0);
    for (size_t i = 0; i < e; ++i)
        r[i] = f.raw_sub(i < n.size() ? n[i] : 0, i < t.size() ? t[i] : 0);
    return UniPoly(f, std::move(r));
}

inline void mpe_walk(const PartitionTree& T, const std::vector<UniPoly>& U,
                     const std::vector<UniPoly>& I, const UniPoly& r,
                     size_t id, std::vector<uint32_t>& out) {
    const Field& f = T.field();
    const auto& n = T.nodes()[id];
    if (n.size() <= kHornerCutoff) {
        for (size_t i = n.begin; i < n.end; ++i)
            out[i] = r.eval(FieldElement(f, T.points()[i])).raw();
        return;
    }
    mpe_walk(T, U, I, rem_cached(r, U[n.left], I[n.left]), n.left, out);
    mpe_walk(T, U, I, rem_cached(r, U[n.right], I[n.right]), n.right, out);
}

}  // namespace detail

/// Evaluate h at every tree point; results align with T.points() order.
inline std::vector<FieldElement> univariate_mpe(const UniPoly& h,
                                                const PartitionTree& T,
                                                const std::vector<UniPoly>& U,
                                                const std::vector<UniPoly>& I) {
    const Field& f = T.field();
    std::vector<uint32_t> raw(T.size(), 0);
    if (!h.is_zero()) {
        const UniPoly* r = &h;
        UniPoly reduced(f);
        if (h.degree() >= static_cast<int64_t>(T.size())) {
            reduced = rem(h, U[0]);
            r = &reduced;
        }
        detail::mpe_walk(T, U, I, *r, 0, raw);
    }
    std::vector<FieldElement> out;
    out.reserve(raw.size());
    for (uint32_t v : raw) out.emplace_back(f, v);
    return out;
}

/// Evaluate h at each point of S; results align with S's order.
inline std::vector<FieldElement> univariate_mpe(
    const UniPoly& h, const std::vector<FieldElement>& S) {
    const Field& f = h.field();
    PartitionTree T = build_partition_tree(f, S);
    std::vector<UniPoly> U = tree_vanish(T);
    std::vector<UniPoly> I = tree_inverses(T, U);
    std::vector<FieldElement> sorted_vals = univariate_mpe(h, T, U, I);
    std::vector<FieldElement> out;
    out.reserve(S.size());
    for (const FieldElement& x : S) {
        const auto& pts = T.points();
        const size_t idx =
            std::lower_bound(pts.begin(), pts.end(), x.raw()) - pts.begin();
        out.push_back(sorted_vals[idx]);
    }
    return out;
}

namespace detail {

inline UniPoly interp_combine(const PartitionTree& T,
                              const std::vector<UniPoly>& U, size_t id,
                              const std::vector<uint32_t>& scaled) {
    const Field& f = T.field();
    const auto& n = T.nodes()[id];
    if (n.is_leaf()) return UniPoly(f, {scaled[n.begin]});
    return interp_combine(T, U, n.left, scaled) * U[n.right] +
           interp_combine(T, U, n.right, scaled) * U[n.left];
}

}  // namespace detail

/// Unique polynomial of degree < |S| with h(S[i]) = values[i]. Lagrange via
/// the subproduct tree: the derivative of the root vanishing polynomial,
/// evaluated over S, yields the denominators.
inline UniPoly univariate_interp(const std::vector<FieldElement>& S,
                                 const std::vector<FieldElement>& values) {
    if (S.size() != values.size())
        throw std::invalid_argument("interp: |S| != |values|");
    if (S.empty()) throw std::invalid_argument("interp: empty point set");
    const Field& f = S.front().field();
    PartitionTree T = build_partition_tree(f, S);
    std::vector<UniPoly> U = tree_vanish(T);
    std::vector<UniPoly> I = tree_inverses(T, U);
    std::vector<FieldElement> denom =
        univariate_mpe(formal_derivative(U[0]), T, U, I);
    std::vector<uint32_t> scaled(T.size(), 0);
    const auto& pts = T.points();
    for (size_t i = 0; i < S.size(); ++i) {
        const size_t idx =
            std::lower_bound(pts.begin(), pts.end(), S[i].raw()) - pts.begin();
        scaled[idx] = f.raw_div(values[i].raw(), denom[idx].raw());
    }
    return detail::interp_combine(T, U, 0, scaled);
}

}  // namespace cab
