#pragma once

// Arithmetic in GF(p^m) with a runtime-chosen prime p and monic irreducible
// modulus. An element is a coefficient vector (c_0, ..., c_{m-1}) over GF(p)
// packed into the integer sum c_s * p^s, so encoded values range over
// [0, p^m) and the packing is a bijection.

#include <array>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cab {

namespace detail {

constexpr uint32_t kMaxFieldDigits = 24;

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint32_t d = 3; static_cast<uint64_t>(d) * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// Dense little-endian polynomials over GF(p), used only while validating or
// searching for moduli. Hot-path arithmetic lives in Field itself.
inline void gfp_trim(std::vector<uint32_t>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<uint32_t> gfp_rem(std::vector<uint32_t> num,
                                     const std::vector<uint32_t>& den,
                                     uint32_t p) {
    assert(!den.empty() && den.back() == 1);  // monic
    const size_t dd = den.size() - 1;
    while (num.size() > dd) {
        uint64_t c = num.back();
        num.pop_back();
        if (c == 0) continue;
        const size_t shift = num.size() - dd;
        for (size_t s = 0; s < dd; ++s)
            num[shift + s] = static_cast<uint32_t>(
                (num[shift + s] + (p - den[s]) * c) % p);
    }
    gfp_trim(num);
    return num;
}

inline bool gfp_is_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
    const size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    if (f[0] == 0) return false;  // divisible by X
    // Trial division by every monic polynomial of degree up to m/2.
    for (size_t d = 1; 2 * d <= m; ++d) {
        uint64_t count = 1;
        for (size_t s = 0; s < d; ++s) count *= p;
        std::vector<uint32_t> cand(d + 1, 0);
        cand[d] = 1;
        for (uint64_t t = 0; t < count; ++t) {
            uint64_t v = t;
            for (size_t s = 0; s < d; ++s) {
                cand[s] = static_cast<uint32_t>(v % p);
                v /= p;
            }
            if (gfp_rem(f, cand, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

class FieldElement;

/// GF(p^m) for a runtime-chosen modulus. Immutable once constructed.
/// FieldElement values and the polynomial/point containers in this library
/// keep plain pointers back to their Field, which must outlive them.
///
/// Multiplication and inversion go through discrete-log tables when the
/// field is small enough (q <= 2^16, built once at construction); otherwise
/// they fall back to coefficient arithmetic modulo the modulus.
class Field {
public:
    Field(uint32_t p, uint32_t m, std::vector<uint32_t> modulus,
          bool enable_log_tables = true)
        : p_(p), m_(m), modulus_(std::move(modulus)) {
        if (!detail::is_prime_u32(p_))
            throw std::invalid_argument("field: characteristic " +
                                        std::to_string(p_) + " is not prime");
        if (m_ == 0 || m_ > detail::kMaxFieldDigits)
            throw std::invalid_argument("field: extension degree out of range");
        uint64_t q = 1;
        for (uint32_t s = 0; s < m_; ++s) {
            q *= p_;
            if (q > kMaxOrder)
                throw std::invalid_argument(
                    "field: order p^m exceeds supported bound 2^20");
        }
        q_ = q;
        if (modulus_.size() != m_ + 1)
            throw std::invalid_argument("field: modulus must have degree m");
        for (uint32_t c : modulus_)
            if (c >= p_)
                throw std::invalid_argument(
                    "field: modulus coefficient out of range");
        if (modulus_.back() != 1)
            throw std::invalid_argument("field: modulus must be monic");
        if (m_ > 1 && !detail::gfp_is_irreducible(modulus_, p_))
            throw std::invalid_argument("field: modulus is reducible");
        if (enable_log_tables && q_ <= kMaxTabledOrder) build_log_tables();
    }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    uint32_t characteristic() const { return p_; }
    uint32_t degree() const { return m_; }
    uint64_t order() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }
    bool log_tables_enabled() const { return !log_.empty(); }

    /// Structural equality; elements of two same-structure Fields invoke
    /// interchangeably.
    bool compatible(const Field& other) const {
        return this == &other ||
               (p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_);
    }

    /// The modulus shipped for common small fields (Conway polynomials for
    /// GF(4), GF(8), GF(9), GF(16), GF(25), GF(27), GF(64), GF(256)); for
    /// anything else the lexicographically smallest monic irreducible of the
    /// right degree, found by search. Prime fields get the polynomial X.
    static std::vector<uint32_t> default_modulus(uint32_t p, uint32_t m);

    // ---- element construction ----

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(uint64_t value) const;
    std::vector<FieldElement> elements() const;  // all q, ascending encoding

    // ---- arithmetic on packed encodings ----
    // These are the hot-path entry points; FieldElement wraps them.

    uint32_t raw_add(uint32_t x, uint32_t y) const {
        if (p_ == 2) return x ^ y;
        uint32_t r = 0, place = 1;
        for (uint32_t s = 0; s < m_; ++s) {
            uint32_t d = x % p_ + y % p_;
            if (d >= p_) d -= p_;
            r += d * place;
            x /= p_;
            y /= p_;
            place *= p_;
        }
        return r;
    }

    uint32_t raw_neg(uint32_t x) const {
        if (p_ == 2) return x;
        uint32_t r = 0, place = 1;
        for (uint32_t s = 0; s < m_; ++s) {
            uint32_t d = x % p_;
            r += (d == 0 ? 0 : p_ - d) * place;
            x /= p_;
            place *= p_;
        }
        return r;
    }

    uint32_t raw_sub(uint32_t x, uint32_t y) const {
        if (p_ == 2) return x ^ y;
        return raw_add(x, raw_neg(y));
    }

    uint32_t raw_mul(uint32_t x, uint32_t y) const {
        if (!log_.empty()) {
            if (x == 0 || y == 0) return 0;
            return exp_[log_[x] + log_[y]];
        }
        return mul_generic(x, y);
    }

    uint32_t raw_inv(uint32_t x) const {
        if (x == 0) throw std::domain_error("field: inverse of zero");
        if (!log_.empty()) return exp_[q_ - 1 - log_[x]];
        return pow_generic(x, q_ - 2);
    }

    uint32_t raw_div(uint32_t x, uint32_t y) const {
        return raw_mul(x, raw_inv(y));
    }

    uint32_t raw_pow(uint32_t x, uint64_t e) const {
        if (x == 0) return e == 0 ? 1u : 0u;
        if (!log_.empty())
            return exp_[static_cast<uint64_t>(log_[x]) * (e % (q_ - 1)) %
                        (q_ - 1)];
        return pow_generic(x, e);
    }

    std::vector<uint32_t> raw_coeffs(uint32_t x) const {
        std::vector<uint32_t> c(m_);
        for (uint32_t s = 0; s < m_; ++s) {
            c[s] = x % p_;
            x /= p_;
        }
        return c;
    }

    static constexpr uint64_t kMaxOrder = 1u << 20;
    static constexpr uint64_t kMaxTabledOrder = 1u << 16;

private:
    uint32_t mul_generic(uint32_t x, uint32_t y) const {
        uint64_t prod[2 * detail::kMaxFieldDigits - 1] = {};
        uint32_t dx[detail::kMaxFieldDigits], dy[detail::kMaxFieldDigits];
        decode(x, dx);
        decode(y, dy);
        for (uint32_t i = 0; i < m_; ++i) {
            if (dx[i] == 0) continue;
            for (uint32_t j = 0; j < m_; ++j)
                prod[i + j] += static_cast<uint64_t>(dx[i]) * dy[j];
        }
        for (uint32_t k = 0; k < 2 * m_ - 1; ++k) prod[k] %= p_;
        for (uint32_t k = 2 * m_ - 2; k >= m_ && k < 2 * m_; --k) {
            uint64_t c = prod[k];
            if (c == 0) continue;
            prod[k] = 0;
            for (uint32_t s = 0; s < m_; ++s)
                prod[k - m_ + s] =
                    (prod[k - m_ + s] + (p_ - modulus_[s]) * c) % p_;
        }
        uint32_t r = 0, place = 1;
        for (uint32_t s = 0; s < m_; ++s) {
            r += static_cast<uint32_t>(prod[s]) * place;
            place *= p_;
        }
        return r;
    }

    uint32_t pow_generic(uint32_t x, uint64_t e) const {
        uint32_t acc = 1;
        while (e > 0) {
            if (e & 1) acc = mul_generic(acc, x);
            x = mul_generic(x, x);
            e >>= 1;
        }
        return acc;
    }

    void decode(uint32_t v, uint32_t* digits) const {
        for (uint32_t s = 0; s < m_; ++s) {
            digits[s] = v % p_;
            v /= p_;
        }
    }

    void build_log_tables() {
        const uint64_t n = q_ - 1;
        // Factor q-1, then find the least encoded generator.
        std::vector<uint64_t> primes;
        uint64_t rest = n;
        for (uint64_t d = 2; d * d <= rest; ++d)
            if (rest % d == 0) {
                primes.push_back(d);
                while (rest % d == 0) rest /= d;
            }
        if (rest > 1) primes.push_back(rest);
        uint32_t gen = 1;
        for (uint32_t cand = 1; cand < q_; ++cand) {
            bool ok = true;
            for (uint64_t r : primes)
                if (pow_generic(cand, n / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                gen = cand;
                break;
            }
        }
        exp_.resize(2 * n);
        log_.assign(q_, 0);
        uint32_t acc = 1;
        for (uint64_t i = 0; i < n; ++i) {
            exp_[i] = acc;
            exp_[i + n] = acc;
            log_[acc] = static_cast<uint32_t>(i);
            acc = mul_generic(acc, gen);
        }
        assert(acc == 1);
    }

    uint32_t p_;
    uint32_t m_;
    uint64_t q_;
    std::vector<uint32_t> modulus_;
    std::vector<uint32_t> exp_;  // doubled so index log x + log y never wraps
    std::vector<uint32_t> log_;
};

/// One element of a Field, stored as its packed integer encoding.
class FieldElement {
public:
    FieldElement(const Field& field, uint32_t raw) : f_(&field), v_(raw) {
        assert(raw < field.order());
    }

    const Field& field() const { return *f_; }
    uint64_t to_int() const { return v_; }
    uint32_t raw() const { return v_; }
    std::vector<uint32_t> coeffs() const { return f_->raw_coeffs(v_); }
    bool is_zero() const { return v_ == 0; }

    FieldElement operator+(const FieldElement& o) const {
        return with(*this, o, f_->raw_add(v_, o.v_));
    }
    FieldElement operator-(const FieldElement& o) const {
        return with(*this, o, f_->raw_sub(v_, o.v_));
    }
    FieldElement operator*(const FieldElement& o) const {
        return with(*this, o, f_->raw_mul(v_, o.v_));
    }
    FieldElement operator/(const FieldElement& o) const {
        return with(*this, o, f_->raw_div(v_, o.v_));
    }
    FieldElement operator-() const { return {*f_, f_->raw_neg(v_)}; }
    FieldElement inv() const { return {*f_, f_->raw_inv(v_)}; }
    FieldElement pow(uint64_t e) const { return {*f_, f_->raw_pow(v_, e)}; }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
    FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

    bool operator==(const FieldElement& o) const {
        return v_ == o.v_ && f_->compatible(*o.f_);
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    static FieldElement with(const FieldElement& x, const FieldElement& y,
                             uint32_t raw) {
        if (x.f_ != y.f_ && !x.f_->compatible(*y.f_))
            throw std::invalid_argument("field: elements of different fields");
        return {*x.f_, raw};
    }

    const Field* f_;
    uint32_t v_;
};

inline FieldElement Field::zero() const { return {*this, 0}; }

inline FieldElement Field::one() const { return {*this, 1}; }

inline FieldElement Field::from_int(uint64_t value) const {
    if (value >= q_)
        throw std::invalid_argument("field: encoding " + std::to_string(value) +
                                    " out of range for field of order " +
                                    std::to_string(q_));
    return {*this, static_cast<uint32_t>(value)};
}

inline std::vector<FieldElement> Field::elements() const {
    std::vector<FieldElement> all;
    all.reserve(q_);
    for (uint64_t v = 0; v < q_; ++v)
        all.emplace_back(*this, static_cast<uint32_t>(v));
    return all;
}

inline std::vector<uint32_t> Field::default_modulus(uint32_t p, uint32_t m) {
    if (m == 1) return {0, 1};
    struct Entry {
        uint32_t p, m;
        std::vector<uint32_t> mod;
    };
    static const std::vector<Entry> builtins = {
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}},
        {2, 6, {1, 1, 0, 1, 1, 0, 1}},
        {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
        {3, 2, {2, 2, 1}},
        {3, 3, {1, 2, 0, 1}},
        {5, 2, {2, 4, 1}},
    };
    for (const auto& e : builtins)
        if (e.p == p && e.m == m) return e.mod;
    // Deterministic fallback: scan for the smallest irreducible.
    uint64_t count = 1;
    for (uint32_t s = 0; s < m; ++s) count *= p;
    std::vector<uint32_t> cand(m + 1, 0);
    cand[m] = 1;
    for (uint64_t t = 0; t < count; ++t) {
        uint64_t v = t;
        for (uint32_t s = 0; s < m; ++s) {
            cand[s] = static_cast<uint32_t>(v % p);
            v /= p;
        }
        if (detail::gfp_is_irreducible(cand, p)) return cand;
    }
    throw std::logic_error("field: no irreducible modulus found");
}

}  // namespace cab
