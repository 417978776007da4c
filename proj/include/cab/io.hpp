#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cab/codec.hpp"
#include "cab/curve.hpp"
#include "cab/vanish.hpp"

// Line-oriented decimal text formats, one concern per file:
//
//   points file   one `x y` line per point, file order is coordinate order
//   curve file    `field p m c_0 .. c_m`, then `a b`, then `i j c` term
//                 lines for the defining equation, sorted by (j, i)
//   basis file    `a b t`, then t blocks, each a term count line followed
//                 by that many `i j c` lines, in basis order
//   code file     keyword directives: a curve reference or inline curve,
//                 a points reference, the order bound, the information
//                 monomials, and an optional basis reference
//
// Vectors (messages and codewords) are whitespace separated element
// integers, one vector per line. Readers skip blank lines and anything
// after '#'. Writers emit the canonical form with neither.

namespace cab {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, size_t line, const std::string& msg)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg),
          line_(line) {}

    size_t line() const { return line_; }

private:
    size_t line_;
};

namespace detail {

/// Pulls non-empty lines off a stream, tracking line numbers and dropping
/// '#' comments, so every format reader reports positions the same way.
class LineReader {
public:
    LineReader(std::istream& is, std::string source)
        : is_(is), source_(std::move(source)) {}

    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(is_, line)) {
            ++line_;
            const size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            tokens.clear();
            std::istringstream ss(line);
            std::string tok;
            while (ss >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    size_t line() const { return line_; }
    const std::string& source() const { return source_; }

    ParseError error(const std::string& msg) const {
        return ParseError(source_, line_, msg);
    }

    uint64_t number(const std::string& tok) const {
        uint64_t v = 0;
        const char* first = tok.data();
        const char* last = first + tok.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last)
            throw error("expected a decimal integer, got '" + tok + "'");
        return v;
    }

    FieldElement element(const std::string& tok, const Field& f) const {
        const uint64_t v = number(tok);
        if (v >= f.order())
            throw error("element " + tok + " out of range for field of order " +
                        std::to_string(f.order()));
        return f.from_int(v);
    }

private:
    std::istream& is_;
    std::string source_;
    size_t line_ = 0;
};

inline void write_field_line(std::ostream& os, const Field& f) {
    os << "field " << f.characteristic() << " " << f.degree();
    for (uint32_t c : f.modulus()) os << " " << c;
    os << "\n";
}

inline std::shared_ptr<const Field> parse_field_line(
    const LineReader& r, const std::vector<std::string>& tokens) {
    if (tokens.size() < 3 || tokens[0] != "field")
        throw r.error("expected `field p m c_0 .. c_m`");
    const uint64_t p = r.number(tokens[1]);
    const uint64_t m = r.number(tokens[2]);
    if (tokens.size() != 3 + m + 1)
        throw r.error("field modulus needs exactly " + std::to_string(m + 1) +
                      " coefficients");
    std::vector<uint32_t> mod;
    for (size_t t = 3; t < tokens.size(); ++t) {
        const uint64_t c = r.number(tokens[t]);
        if (c >= p) throw r.error("modulus coefficient exceeds characteristic");
        mod.push_back(static_cast<uint32_t>(c));
    }
    try {
        return std::make_shared<Field>(static_cast<uint32_t>(p),
                                       static_cast<uint32_t>(m),
                                       std::move(mod));
    } catch (const std::invalid_argument& e) {
        throw r.error(e.what());
    }
}

inline void write_terms(std::ostream& os, const BiPoly& f) {
    for (const Monomial& m : f.support())
        os << m.i << " " << m.j << " " << f.coeff(m).to_int() << "\n";
}

inline void parse_term(const LineReader& r,
                       const std::vector<std::string>& tokens, BiPoly& f) {
    if (tokens.size() != 3) throw r.error("expected a term line `i j c`");
    const uint64_t i = r.number(tokens[0]);
    const uint64_t j = r.number(tokens[1]);
    if (i > 0xffffffffu || j > 0xffffffffu)
        throw r.error("exponent out of range");
    const Monomial m{static_cast<uint32_t>(i), static_cast<uint32_t>(j)};
    if (!f.coeff(m).is_zero()) throw r.error("duplicate term");
    f.set_coeff(m, r.element(tokens[2], f.field()));
}

}  // namespace detail

/// ---- points ----

inline void write_points(std::ostream& os, const PointSet& P) {
    for (const AffinePoint& p : P.points())
        os << p.x.to_int() << " " << p.y.to_int() << "\n";
}

inline PointSet read_points(std::istream& is, const Field& f,
                            const std::string& source = "<points>") {
    detail::LineReader r(is, source);
    std::vector<AffinePoint> pts;
    std::set<std::pair<uint64_t, uint64_t>> seen;
    std::vector<std::string> tok;
    while (r.next(tok)) {
        if (tok.size() != 2) throw r.error("expected a point line `x y`");
        const FieldElement x = r.element(tok[0], f);
        const FieldElement y = r.element(tok[1], f);
        if (!seen.insert({x.to_int(), y.to_int()}).second)
            throw r.error("duplicate point");
        pts.push_back({x, y});
    }
    if (pts.empty()) throw r.error("no points");
    return PointSet(f, std::move(pts));
}

/// ---- curve ----

inline void write_curve(std::ostream& os, const CabCurve& c) {
    detail::write_field_line(os, c.field());
    os << c.a() << " " << c.b() << "\n";
    detail::write_terms(os, c.equation());
}

inline CurveBundle read_curve(std::istream& is,
                              const std::string& source = "<curve>") {
    detail::LineReader r(is, source);
    std::vector<std::string> tok;
    if (!r.next(tok)) throw r.error("empty curve file");
    std::shared_ptr<const Field> field = detail::parse_field_line(r, tok);
    if (!r.next(tok) || tok.size() != 2)
        throw r.error("expected the weight line `a b`");
    const uint64_t a = r.number(tok[0]);
    const uint64_t b = r.number(tok[1]);
    BiPoly h(*field);
    while (r.next(tok)) detail::parse_term(r, tok, h);
    CabCurve curve = validate_cab(h);
    if (curve.a() != a || curve.b() != b)
        throw ParseError(source, r.line(),
                         "declared weights do not match the equation");
    return {std::move(field), std::move(curve)};
}

/// ---- groebner basis ----

inline void write_groebner(std::ostream& os, const GroebnerBasis& G) {
    os << G.order().a << " " << G.order().b << " " << G.size() << "\n";
    for (const BiPoly& g : G.elements()) {
        os << g.term_count() << "\n";
        detail::write_terms(os, g);
    }
}

inline GroebnerBasis read_groebner(std::istream& is, const Field& f,
                                   const std::string& source = "<basis>") {
    detail::LineReader r(is, source);
    std::vector<std::string> tok;
    if (!r.next(tok) || tok.size() != 3)
        throw r.error("expected the header line `a b t`");
    const uint64_t a = r.number(tok[0]);
    const uint64_t b = r.number(tok[1]);
    const uint64_t t = r.number(tok[2]);
    if (a == 0 || b == 0 || a > 0xffffffffu || b > 0xffffffffu)
        throw r.error("weights out of range");
    std::vector<BiPoly> elems;
    for (uint64_t e = 0; e < t; ++e) {
        if (!r.next(tok) || tok.size() != 1)
            throw r.error("expected a term count line");
        const uint64_t nterms = r.number(tok[0]);
        BiPoly g(f);
        for (uint64_t s = 0; s < nterms; ++s) {
            if (!r.next(tok)) throw r.error("basis block cut short");
            detail::parse_term(r, tok, g);
        }
        elems.push_back(std::move(g));
    }
    if (r.next(tok)) throw r.error("trailing content after the basis blocks");
    const WeightedOrder ord{static_cast<uint32_t>(a), static_cast<uint32_t>(b)};
    try {
        return GroebnerBasis(ord, std::move(elems));
    } catch (const std::invalid_argument& e) {
        throw ParseError(source, r.line(), e.what());
    }
}

/// ---- code ----

/// Paths stored inside a code file. Relative paths resolve against the
/// directory containing the code file. An empty curve_file means the curve
/// is written inline; an empty gb_file drops the reference.
struct CodeFileRefs {
    std::string curve_file;
    std::string points_file;
    std::string gb_file;
};

inline void write_code(std::ostream& os, const CabCode& code,
                       const CodeFileRefs& refs) {
    if (refs.points_file.empty())
        throw std::invalid_argument("write_code: points reference is required");
    if (!refs.curve_file.empty()) {
        os << "curve_file " << refs.curve_file << "\n";
    } else {
        os << "curve_inline " << code.curve().equation().term_count() << "\n";
        detail::write_field_line(os, code.field());
        os << code.curve().a() << " " << code.curve().b() << "\n";
        detail::write_terms(os, code.curve().equation());
    }
    os << "points_file " << refs.points_file << "\n";
    os << "m " << code.m() << "\n";
    os << "bhat " << code.k() << "\n";
    for (const Monomial& m : code.bhat()) os << m.i << " " << m.j << "\n";
    if (!refs.gb_file.empty()) os << "gb_file " << refs.gb_file << "\n";
}

struct CodeBundle {
    std::shared_ptr<const Field> field;
    CabCode code;
};

namespace detail {

inline std::filesystem::path resolve_ref(const std::filesystem::path& base,
                                         const std::string& ref) {
    std::filesystem::path p(ref);
    if (p.is_absolute()) return p;
    return base / p;
}

inline std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is)
        throw ParseError(path.string(), 0, "cannot open file");
    return is;
}

}  // namespace detail

inline PointSet read_points_file(const std::filesystem::path& path,
                                 const Field& f) {
    std::ifstream is = detail::open_for_read(path);
    return read_points(is, f, path.string());
}

inline CurveBundle read_curve_file(const std::filesystem::path& path) {
    std::ifstream is = detail::open_for_read(path);
    return read_curve(is, path.string());
}

inline GroebnerBasis read_groebner_file(const std::filesystem::path& path,
                                        const Field& f) {
    std::ifstream is = detail::open_for_read(path);
    return read_groebner(is, f, path.string());
}

/// Rebuilds the code from its referenced parts. The stored information
/// monomials must match what the curve, points and order bound determine;
/// a mismatch means the file was edited out from under us. A referenced
/// basis is checked to vanish on the points but otherwise trusted to be
/// the precompute output.
inline CodeBundle read_code_file(const std::filesystem::path& path) {
    std::ifstream is = detail::open_for_read(path);
    const std::string source = path.string();
    const std::filesystem::path base = path.parent_path();
    detail::LineReader r(is, source);
    std::vector<std::string> tok;

    if (!r.next(tok)) throw r.error("empty code file");
    std::shared_ptr<const Field> field;
    std::unique_ptr<CabCurve> curve;
    if (tok.size() == 2 && tok[0] == "curve_file") {
        CurveBundle cb = read_curve_file(detail::resolve_ref(base, tok[1]));
        field = cb.field;
        curve = std::make_unique<CabCurve>(std::move(cb.curve));
    } else if (tok.size() == 2 && tok[0] == "curve_inline") {
        const uint64_t nterms = r.number(tok[1]);
        if (!r.next(tok)) throw r.error("missing field line");
        field = detail::parse_field_line(r, tok);
        if (!r.next(tok) || tok.size() != 2)
            throw r.error("expected the weight line `a b`");
        const uint64_t a = r.number(tok[0]);
        const uint64_t b = r.number(tok[1]);
        BiPoly h(*field);
        for (uint64_t s = 0; s < nterms; ++s) {
            if (!r.next(tok)) throw r.error("inline curve cut short");
            detail::parse_term(r, tok, h);
        }
        curve = std::make_unique<CabCurve>(validate_cab(h));
        if (curve->a() != a || curve->b() != b)
            throw r.error("declared weights do not match the equation");
    } else {
        throw r.error("expected `curve_file <path>` or `curve_inline <terms>`");
    }

    if (!r.next(tok) || tok.size() != 2 || tok[0] != "points_file")
        throw r.error("expected `points_file <path>`");
    PointSet points =
        read_points_file(detail::resolve_ref(base, tok[1]), *field);

    if (!r.next(tok) || tok.size() != 2 || tok[0] != "m")
        throw r.error("expected `m <order bound>`");
    const uint64_t m = r.number(tok[1]);

    if (!r.next(tok) || tok.size() != 2 || tok[0] != "bhat")
        throw r.error("expected `bhat <count>`");
    const uint64_t k = r.number(tok[1]);
    std::vector<Monomial> bhat;
    for (uint64_t s = 0; s < k; ++s) {
        if (!r.next(tok) || tok.size() != 2)
            throw r.error("expected a monomial line `i j`");
        const uint64_t i = r.number(tok[0]);
        const uint64_t j = r.number(tok[1]);
        if (i > 0xffffffffu || j > 0xffffffffu)
            throw r.error("exponent out of range");
        bhat.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j)});
    }
    const size_t bhat_line = r.line();

    std::string gb_ref;
    if (r.next(tok)) {
        if (tok.size() != 2 || tok[0] != "gb_file")
            throw r.error("expected `gb_file <path>` or end of file");
        gb_ref = tok[1];
        if (r.next(tok)) throw r.error("trailing content after gb_file");
    }

    CabCode code = new_code(*curve, points, m);
    if (code.bhat() != bhat)
        throw ParseError(source, bhat_line,
                         "stored information monomials do not match the code "
                         "parameters");

    if (!gb_ref.empty()) {
        const std::filesystem::path gb_path = detail::resolve_ref(base, gb_ref);
        GroebnerBasis G = read_groebner_file(gb_path, *field);
        for (const BiPoly& g : G.elements())
            for (const AffinePoint& p : points.points())
                if (!g.evaluate_naive(p.x, p.y).is_zero())
                    throw ParseError(gb_path.string(), 0,
                                     "basis element does not vanish on the "
                                     "point set");
        code.attach_groebner(std::move(G));
    }
    return {std::move(field), std::move(code)};
}

inline void write_points_file(const std::filesystem::path& path,
                              const PointSet& P) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_points(os, P);
}

inline void write_curve_file(const std::filesystem::path& path,
                             const CabCurve& c) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_curve(os, c);
}

inline void write_groebner_file(const std::filesystem::path& path,
                                const GroebnerBasis& G) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_groebner(os, G);
}

inline void write_code_file(const std::filesystem::path& path,
                            const CabCode& code, const CodeFileRefs& refs) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_code(os, code, refs);
}

/// ---- message / codeword batches ----

/// One parsed vector with the line it came from, so batch tooling can
/// report dimension problems against the original file.
struct NumberedVector {
    size_t line;
    std::vector<FieldElement> values;
};

inline std::vector<NumberedVector> read_vectors(
    std::istream& is, const Field& f,
    const std::string& source = "<vectors>") {
    detail::LineReader r(is, source);
    std::vector<NumberedVector> out;
    std::vector<std::string> tok;
    while (r.next(tok)) {
        NumberedVector v;
        v.line = r.line();
        for (const std::string& t : tok) v.values.push_back(r.element(t, f));
        out.push_back(std::move(v));
    }
    return out;
}

inline void write_vector(std::ostream& os,
                         const std::vector<FieldElement>& v) {
    for (size_t t = 0; t < v.size(); ++t) {
        if (t) os << " ";
        os << v[t].to_int();
    }
    os << "\n";
}

}  // namespace cab
