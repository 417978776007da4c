#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cab/bench.hpp"
#include "cab/io.hpp"

// Thin command front end over the library. Exit codes: 0 success, 1 usage,
// 2 data or parse trouble, 3 violated math preconditions (including oracle
// mismatches and non-codeword inputs).

namespace fs = std::filesystem;

namespace {

using namespace cab;

struct UsageExit : std::exception {
    explicit UsageExit(std::string m) : msg(std::move(m)) {}
    const char* what() const noexcept override { return msg.c_str(); }
    std::string msg;
};

volatile uint64_t g_sink = 0;  // keeps timed calls observable

std::string relative_ref(const fs::path& target, const fs::path& dir) {
    std::error_code ec;
    const fs::path rel = fs::relative(fs::absolute(target), dir, ec);
    if (ec || rel.empty()) return fs::absolute(target).string();
    return rel.string();
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    return os;
}

void deliver(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os = open_out(out);
        os << text;
    }
}

Codeword naive_encode(const CabCode& code, const Message& msg) {
    const BiPoly f = message_to_poly(code, msg);
    Codeword out;
    out.reserve(code.n());
    for (const AffinePoint& p : code.points().points())
        out.push_back(f.evaluate_naive(p.x, p.y));
    return out;
}

Message random_message(const CabCode& code, std::mt19937_64& rng) {
    const Field& f = code.field();
    Message msg;
    msg.reserve(code.k());
    for (size_t t = 0; t < code.k(); ++t)
        msg.push_back(f.from_int(rng() % f.order()));
    return msg;
}

std::string flag(bool v) { return v ? "true" : "false"; }

void cmd_curve_validate(const std::string& file) {
    const CurveBundle cb = read_curve_file(file);
    std::cout << "a " << cb.curve.a() << "\n"
              << "b " << cb.curve.b() << "\n"
              << "genus " << cb.curve.genus() << "\n"
              << "hasse_weil " << hasse_weil_bound(cb.curve) << "\n";
}

void cmd_curve_points(const std::string& file, const std::string& out) {
    const CurveBundle cb = read_curve_file(file);
    const PointSet P = rational_points(cb.curve);
    std::ostringstream buf;
    write_points(buf, P);
    deliver(buf.str(), out);
}

void cmd_curve_info(const std::string& file) {
    const CurveBundle cb = read_curve_file(file);
    const PointSet P = rational_points(cb.curve);
    std::cout << "a " << cb.curve.a() << "\n"
              << "b " << cb.curve.b() << "\n"
              << "genus " << cb.curve.genus() << "\n"
              << "hasse_weil " << hasse_weil_bound(cb.curve) << "\n"
              << "points " << P.size() << "\n"
              << "n_x " << P.n_x() << "\n"
              << "nu_y " << P.nu_y() << "\n"
              << "semi_grid " << flag(P.is_semi_grid()) << "\n";
}

void cmd_code_new(const std::string& curve_file, const std::string& points_file,
                  uint64_t m, const std::string& out) {
    const CurveBundle cb = read_curve_file(curve_file);
    const fs::path outp = fs::absolute(out);
    const fs::path dir = outp.parent_path();
    const PointSet P = points_file.empty()
                           ? rational_points(cb.curve)
                           : read_points_file(points_file, *cb.field);
    const CabCode code = new_code(cb.curve, P, m);

    CodeFileRefs refs;
    refs.curve_file = relative_ref(curve_file, dir);
    if (points_file.empty()) {
        fs::path pp = outp;
        pp.replace_extension(".points");
        write_points_file(pp, P);
        refs.points_file = pp.filename().string();
    } else {
        refs.points_file = relative_ref(points_file, dir);
    }
    write_code_file(outp, code, refs);
    std::cout << "n " << code.n() << "\n"
              << "k " << code.k() << "\n"
              << "m " << code.m() << "\n"
              << "maximal_semigrid " << flag(code.maximal_semigrid()) << "\n";
}

void cmd_code_precompute(const std::string& code_file, const std::string& out) {
    const CodeBundle cb = read_code_file(code_file);
    const GroebnerBasis G =
        vanishing_gb(cb.code.points(), cb.code.curve().order());
    const fs::path codep = fs::absolute(code_file);
    const fs::path gbp =
        out.empty() ? fs::path(codep).replace_extension(".gb") : fs::path(out);
    write_groebner_file(gbp, G);

    // splice the reference into the code file, dropping any stale one
    std::vector<std::string> lines;
    {
        std::ifstream is(codep);
        std::string line;
        while (std::getline(is, line)) {
            std::istringstream ss(line);
            std::string tok;
            ss >> tok;
            if (tok != "gb_file") lines.push_back(line);
        }
    }
    std::ofstream os = open_out(codep);
    for (const std::string& l : lines) os << l << "\n";
    os << "gb_file " << relative_ref(gbp, codep.parent_path()) << "\n";
    std::cout << "elements " << G.size() << "\n";
}

void cmd_encode(const std::string& code_file, const std::string& in_file,
                const std::string& out, bool oracle) {
    const CodeBundle cb = read_code_file(code_file);
    const CabCode& code = cb.code;
    std::ifstream is = cab::detail::open_for_read(in_file);
    const auto vecs = read_vectors(is, code.field(), in_file);
    std::ostringstream buf;
    for (const NumberedVector& v : vecs) {
        if (v.values.size() != code.k())
            throw ParseError(in_file, v.line,
                             "expected " + std::to_string(code.k()) +
                                 " message elements, got " +
                                 std::to_string(v.values.size()));
        const Codeword cw = encode(code, v.values);
        if (oracle && cw != naive_encode(code, v.values))
            throw std::domain_error(in_file + ":" + std::to_string(v.line) +
                                    ": oracle mismatch on encode");
        write_vector(buf, cw);
    }
    deliver(buf.str(), out);
}

void cmd_unencode(const std::string& code_file, const std::string& in_file,
                  const std::string& out, bool force_general, bool oracle) {
    const CodeBundle cb = read_code_file(code_file);
    const CabCode& code = cb.code;
    if ((force_general || !code.maximal_semigrid()) && !code.has_groebner())
        throw UsageExit("code has no attached vanishing basis; run `cab code "
                        "precompute " +
                        code_file + "` first");
    std::ifstream is = cab::detail::open_for_read(in_file);
    const auto vecs = read_vectors(is, code.field(), in_file);
    std::ostringstream buf;
    for (const NumberedVector& v : vecs) {
        if (v.values.size() != code.n())
            throw ParseError(in_file, v.line,
                             "expected " + std::to_string(code.n()) +
                                 " codeword elements, got " +
                                 std::to_string(v.values.size()));
        Message msg;
        try {
            msg = unencode(code, v.values, force_general);
        } catch (const std::domain_error& e) {
            throw std::domain_error(in_file + ":" + std::to_string(v.line) +
                                    ": " + e.what());
        }
        if (oracle && encode(code, msg) != v.values)
            throw std::domain_error(in_file + ":" + std::to_string(v.line) +
                                    ": oracle mismatch on unencode");
        write_vector(buf, msg);
    }
    deliver(buf.str(), out);
}

void cmd_bench(const std::string& family, const std::vector<uint32_t>& qs,
               const std::string& out, uint64_t seed) {
    std::ostringstream csv;
    csv << "family,q,n,m,op,path,seconds,ops_estimate\n";
    csv << std::scientific << std::setprecision(6);
    auto emit = [&](uint32_t q, uint64_t n, uint64_t m, const char* op,
                    const char* path, double sec, uint64_t est) {
        csv << family << "," << q << "," << n << "," << m << "," << op << ","
            << path << "," << sec << "," << est << "\n";
    };

    std::vector<std::pair<double, double>> fast_e, naive_e, fast_u;
    double last_fast = 0, last_naive = 0;
    uint64_t last_n = 0;
    for (uint32_t q : qs) {
        const CurveBundle cb = hermitian(q);
        const PointSet P = rational_points(cb.curve);
        const uint64_t n = P.size();
        const uint64_t m = n - 1;
        CabCode code = new_code(cb.curve, P, m);
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + q);
        const Message msg = random_message(code, rng);
        const Codeword cw = encode(code, msg);

        const uint64_t w = m + uint64_t(cb.curve.a()) * P.n_x();
        const double lg = std::ceil(std::log2(double(w)));
        const uint64_t fast_est = w * uint64_t(lg * lg);

        const double t_fast = time_median(
            [&] { g_sink = g_sink + encode(code, msg).back().raw(); });
        emit(q, n, m, "encode", "fast", t_fast, fast_est);
        fast_e.push_back({double(n), t_fast});

        const double t_naive = time_median(
            [&] { g_sink = g_sink + naive_encode(code, msg).back().raw(); });
        emit(q, n, m, "encode", "naive", t_naive, n * code.k());
        naive_e.push_back({double(n), t_naive});

        const double t_un = time_median(
            [&] { g_sink = g_sink + unencode(code, cw).back().raw(); });
        emit(q, n, m, "unencode", "fast", t_un, fast_est);
        fast_u.push_back({double(n), t_un});

        // the division path needs the vanishing basis, whose precompute is
        // quadratic-space dense elimination; keep it to desk sizes
        if (n <= 512) {
            code.attach_groebner(vanishing_gb(P, cb.curve.order()));
            const double t_gen = time_median(
                [&] { g_sink = g_sink + unencode(code, cw, true).back().raw(); });
            emit(q, n, m, "unencode", "general", t_gen, fast_est);
        }

        last_fast = t_fast;
        last_naive = t_naive;
        last_n = n;
    }
    deliver(csv.str(), out);

    std::cerr << std::fixed << std::setprecision(2);
    if (qs.size() >= 2) {
        std::cerr << "slope encode/fast " << loglog_slope(fast_e) << "\n"
                  << "slope encode/naive " << loglog_slope(naive_e) << "\n"
                  << "slope unencode/fast " << loglog_slope(fast_u) << "\n";
    }
    if (last_n)
        std::cerr << "speedup encode fast/naive at n=" << last_n << " "
                  << last_naive / last_fast << "x\n";
}

void selftest_roundtrips(const std::string& name, const CabCurve& curve,
                         const PointSet& P, uint64_t m, std::mt19937_64& rng,
                         const std::function<void(bool, const std::string&)>& check) {
    CabCode code = new_code(curve, P, m);
    if (!code.maximal_semigrid())
        code.attach_groebner(vanishing_gb(P, curve.order()));
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        const Message msg = random_message(code, rng);
        const Codeword cw = encode(code, msg);
        ok = ok && cw == naive_encode(code, msg);
        ok = ok && unencode(code, cw) == msg;
        if (code.has_groebner()) ok = ok && unencode(code, cw, true) == msg;
    }
    check(ok, name);
}

void cmd_selftest(uint64_t seed) {
    auto check = [](bool ok, const std::string& name) {
        std::cout << (ok ? "ok " : "FAIL ") << name << "\n";
        if (!ok) throw std::domain_error("selftest failed at: " + name);
    };

    for (uint32_t q : {2u, 3u, 4u}) {
        const CurveBundle cb = hermitian(q);
        const PointSet P = rational_points(cb.curve);
        const uint64_t expect = uint64_t(q) * q * q;
        check(P.size() == expect && hasse_weil_bound(cb.curve) == expect,
              "hermitian q=" + std::to_string(q) + " point count");
    }

    const CurveBundle h2 = hermitian(2);
    const PointSet P2 = rational_points(h2.curve);
    const GroebnerBasis G = vanishing_gb(P2, h2.curve.order());
    {
        const Field& f = *h2.field;
        BiPoly g1(f), g2(f);
        g1.set_coeff({4, 0}, f.one());
        g1.set_coeff({1, 0}, f.one());
        g2.set_coeff({0, 2}, f.one());
        g2.set_coeff({0, 1}, f.one());
        g2.set_coeff({3, 0}, f.one());
        check(G.size() == 2 && G.elements()[0] == g1 && G.elements()[1] == g2,
              "hermitian q=2 vanishing basis");
    }

    std::mt19937_64 rng(seed);
    {
        // reduce leaves values on the points alone and lands in the staircase
        const Field& f = *h2.field;
        bool ok = true;
        for (int trial = 0; trial < 40 && ok; ++trial) {
            BiPoly fhat(f);
            for (int t = 0; t < 6; ++t)
                fhat.set_coeff({uint32_t(rng() % 8), uint32_t(rng() % 3)},
                               f.from_int(rng() % f.order()));
            const BiPoly r = reduce(fhat, G);
            for (const AffinePoint& p : P2.points())
                ok = ok && fhat.evaluate_naive(p.x, p.y) ==
                               r.evaluate_naive(p.x, p.y);
            for (const Monomial& mo : r.support())
                for (const BiPoly& g : G.elements())
                    ok = ok && !g.leading_monomial(G.order()).divides(mo);
        }
        check(ok, "reduce is an evaluation-preserving normal form");
    }

    selftest_roundtrips("hermitian q=2 m=4 round trips", h2.curve, P2, 4, rng,
                        check);
    selftest_roundtrips("hermitian q=2 m=9 round trips", h2.curve, P2, 9, rng,
                        check);
    {
        const CurveBundle h3 = hermitian(3);
        const PointSet P = rational_points(h3.curve);
        selftest_roundtrips("hermitian q=3 m=14 round trips", h3.curve, P, 14,
                            rng, check);
    }
    {
        const CurveBundle nt = norm_trace(2, 3);
        const PointSet P = rational_points(nt.curve);
        selftest_roundtrips("norm-trace (2,3) m=15 round trips", nt.curve, P,
                            15, rng, check);
    }
    {
        const SemiGridBundle hl = hermitian_like(3, 2, 2);
        selftest_roundtrips("hermitian-like (3,2,2) m=6 round trips", hl.curve,
                            hl.semi_grid, 6, rng, check);
    }
    std::cout << "selftest passed\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"encode and unencode evaluation codes on C_ab curves"};
    app.require_subcommand(1);

    std::string file, out, curve_file, points_file, in_file, code_file;
    std::string family = "hermitian";
    uint64_t m = 0, seed = 1;
    bool force_general = false, oracle = false;
    std::vector<uint32_t> qs{4, 8, 16};

    CLI::App* curve = app.add_subcommand("curve", "inspect curve files");
    curve->require_subcommand(1);
    CLI::App* cv = curve->add_subcommand("validate", "check the defining conditions");
    cv->add_option("file", file, "curve file")->required();
    cv->callback([&] { cmd_curve_validate(file); });
    CLI::App* cp = curve->add_subcommand("points", "enumerate rational points");
    cp->add_option("file", file, "curve file")->required();
    cp->add_option("--out", out, "points file (default stdout)");
    cp->callback([&] { cmd_curve_points(file, out); });
    CLI::App* ci = curve->add_subcommand("info", "summary with point counts");
    ci->add_option("file", file, "curve file")->required();
    ci->callback([&] { cmd_curve_info(file); });

    CLI::App* code = app.add_subcommand("code", "create and precompute codes");
    code->require_subcommand(1);
    CLI::App* cn = code->add_subcommand("new", "build a code file");
    cn->add_option("--curve", curve_file, "curve file")->required();
    cn->add_option("--points", points_file,
                   "points file (default: all rational points)");
    cn->add_option("--m", m, "pole order bound")->required();
    cn->add_option("--out", out, "code file to write")->required();
    cn->callback([&] { cmd_code_new(curve_file, points_file, m, out); });
    CLI::App* cpre =
        code->add_subcommand("precompute", "attach the vanishing basis");
    cpre->add_option("file", code_file, "code file")->required();
    cpre->add_option("--out", out, "basis file (default: <code>.gb)");
    cpre->callback([&] { cmd_code_precompute(code_file, out); });

    CLI::App* enc = app.add_subcommand("encode", "messages to codewords");
    enc->add_option("code", code_file, "code file")->required();
    enc->add_option("input", in_file, "message file, one vector per line")
        ->required();
    enc->add_option("--out", out, "codeword file (default stdout)");
    enc->add_flag("--oracle", oracle, "cross-check against naive evaluation");
    enc->callback([&] { cmd_encode(code_file, in_file, out, oracle); });

    CLI::App* dec = app.add_subcommand("unencode", "codewords back to messages");
    dec->add_option("code", code_file, "code file")->required();
    dec->add_option("input", in_file, "codeword file, one vector per line")
        ->required();
    dec->add_option("--out", out, "message file (default stdout)");
    dec->add_flag("--force-general", force_general,
                  "use the division path even on maximal semi-grids");
    dec->add_flag("--oracle", oracle, "re-encode each output and compare");
    dec->callback(
        [&] { cmd_unencode(code_file, in_file, out, force_general, oracle); });

    CLI::App* ben = app.add_subcommand("bench", "scaling sweep, CSV output");
    ben->add_option("--family", family, "curve family")
        ->check(CLI::IsMember({"hermitian"}));
    ben->add_option("--q", qs, "field size parameters")->delimiter(',');
    ben->add_option("--out", out, "CSV file (default stdout)");
    ben->add_option("--seed", seed, "message RNG seed");
    ben->callback([&] { cmd_bench(family, qs, out, seed); });

    CLI::App* st = app.add_subcommand("selftest", "built-in oracle checks");
    st->add_option("--seed", seed, "RNG seed");
    st->callback([&] { cmd_selftest(seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const cab::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageExit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
