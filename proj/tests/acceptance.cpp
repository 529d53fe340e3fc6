// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bakerrays/branches.hpp"
#include "bakerrays/errors.hpp"
#include "bakerrays/image_io.hpp"
#include "bakerrays/inner_circle.hpp"
#include "bakerrays/landing.hpp"
#include "bakerrays/rays.hpp"
#include "bakerrays/render.hpp"
#include "oracles.hpp"

using namespace baker;

namespace {

// Pinned tolerances.
constexpr double kTolBranch = 1e-10;
constexpr double kTolFunctional = 1e-8;
constexpr double kTolLines = 1e-9;
constexpr double kTolAnchor = 1e-10;
constexpr double kTolMultiplier = 1e-8;
constexpr double kTolLandingAgree = 1e-8;
constexpr double kTolSweep = 1e-8;
constexpr double kTolSemiconj = 1e-12;
constexpr double kTolCircle = 1e-12;
constexpr double kTolWindow = 0.05;

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string sci(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3e", v);
    return b;
}

Word word_of(std::uint32_t code, int len) {
    Word w(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k) w[k] = static_cast<Symbol>((code >> (len - 1 - k)) & 1u);
    return w;
}

}  // namespace

int main() {
    criterion(1, "inverse-branch residual", [] {
        oracle::Gen gen(101);
        double worst = 0.0;
        int misplaced = 0, n = 0;
        while (n < 10000) {
            const Complex w = gen.strip_point(-50, 50);
            if (w.real() >= 1.0 && std::abs(w.imag()) <= 1e-12) continue;
            ++n;
            for (Symbol i : {Symbol{0}, Symbol{1}}) {
                const Complex z = phi(i, w);
                worst = std::max(worst, std::abs(evaluate_f(z) - w));
                const bool ok = i == 0 ? (z.imag() >= 0 && z.imag() <= kPi) : (z.imag() <= 0 && z.imag() >= -kPi);
                if (!ok) ++misplaced;
            }
        }
        return Outcome{worst <= kTolBranch && misplaced == 0,
                       "10^4 targets, Re in [-50,50], max |f(phi_i(w)) - w| = " + sci(worst) + ", " +
                           std::to_string(misplaced) + " outside their half-strip"};
    });

    criterion(2, "ray functional equation", [] {
        std::vector<SymbolSequence> seqs = {parse_sequence("0~"), parse_sequence("1~"), parse_sequence("(01)*"),
                                            parse_sequence("(0011)*")};
        oracle::Gen gen(102);
        for (int k = 0; k < 10; ++k) seqs.push_back(SymbolSequence::constant(gen.word(24), 0));
        double worst = 0.0;
        for (const auto& s : seqs) {
            const auto ss = shift(s);
            for (int k = 0; k < 50; ++k) {
                const double t = -10.0 + 15.0 * k / 49.0;
                worst = std::max(worst, std::abs(evaluate_f(ray_point(s, t).z) - ray_point(ss, model_F(t)).z));
            }
        }
        return Outcome{worst <= kTolFunctional, "14 sequences x 50 t in [-10,5], max defect " + sci(worst)};
    });

    criterion(3, "closed-form rays on L+ and L-", [] {
        double worst = 0.0;
        const auto s0 = parse_sequence("0~"), s1 = parse_sequence("1~");
        for (int k = 0; k <= 2000; ++k) {
            const double t = -10.0 + 0.01 * k;
            worst = std::max(worst, std::abs(ray_point(s0, t).z - Complex(t, kPi)));
            worst = std::max(worst, std::abs(ray_point(s1, t).z - Complex(t, -kPi)));
        }
        return Outcome{worst <= kTolLines, "2001 t in [-10,10], max deviation " + sci(worst)};
    });

    criterion(4, "period-two anchor", [] {
        const Complex a(-std::log(kPi), kHalfPi);
        const auto p = periodic_point(Word{0, 1});
        const auto l = landing_point(parse_sequence("(01)*"));
        const double dz = std::abs(p.z - a);
        const double dm = std::abs(std::abs(p.multiplier) - (1.0 + kPi * kPi));
        const double dl = std::abs(l.z - p.z);
        return Outcome{dz <= kTolAnchor && dm <= kTolMultiplier && dl <= kTolLandingAgree,
                       "|z - (-ln pi + i pi/2)| = " + sci(dz) + ", ||(f^2)'| - (1+pi^2)| = " + sci(dm) +
                           ", |landing - periodic| = " + sci(dl)};
    });

    criterion(5, "periodic sweep, lengths 2-10", [] {
        int words = 0, bad = 0;
        double worst = 0.0, min_mult = 1e300;
        for (int len = 2; len <= 10; ++len)
            for (std::uint32_t code = 0; code < (1u << len); ++code) {
                const Word w = word_of(code, len);
                if (longest_run(w) == static_cast<std::uint64_t>(len)) continue;
                ++words;
                const auto p = periodic_point(w);
                worst = std::max(worst, p.residual);
                min_mult = std::min(min_mult, std::abs(p.multiplier));
                if (!(p.residual <= kTolSweep && std::abs(p.multiplier) > 1.0 && cycle_stays_in_strip(p, 500))) ++bad;
            }
        return Outcome{bad == 0 && words == 2026,
                       std::to_string(words) + " words, " + std::to_string(bad) + " failures, max residual " +
                           sci(worst) + ", min |multiplier| " + sci(min_mult)};
    });

    criterion(6, "expansion and absorbing invariance", [] {
        oracle::Gen gen(106);
        int outside = 0, not_expanding = 0, mismatch = 0;
        while (outside < 100000) {
            const Complex z = gen.strip_point(-20, 20);
            if (in_V_closure(z)) continue;
            ++outside;
            if (!(derivative_modulus(z) > 1.0)) ++not_expanding;
            if ((derivative_modulus(z) > 1.0) != expansion_criterion(z)) ++mismatch;
        }
        // points near the curve e^{-x} = 2 cos y, on both sides
        for (int k = 0; k < 10000; ++k) {
            const double y = gen.uniform(-1.5, 1.5);
            const double x = -std::log(2.0 * std::cos(y)) + (k % 2 ? 1.0 : -1.0) * gen.uniform(1e-9, 1e-3);
            if ((derivative_modulus({x, y}) > 1.0) != expansion_criterion({x, y})) ++mismatch;
        }
        int escaped = 0;
        for (int k = 0; k < 100000; ++k) {
            const Complex v(gen.uniform(-1.0, 30.0), gen.uniform(-kHalfPi, kHalfPi));
            if (!in_V(v)) continue;
            if (!in_V(evaluate_f(v))) ++escaped;
        }
        return Outcome{not_expanding == 0 && mismatch == 0 && escaped == 0,
                       "10^5 points of S minus closed V (Re in [-20,20]): " + std::to_string(not_expanding) +
                           " with |f'| <= 1, " + std::to_string(mismatch) + " criterion mismatches (incl. 10^4 near the |f'| = 1 curve); " +
                           std::to_string(escaped) + " of 10^5 V points leave V"};
    });

    criterion(7, "square nesting", [] {
        bool pass = true;
        double worst = 1e300;
        std::string where;
        for (const char* lit : {"0~", "1~", "(01)*"})
            for (double t : {-2.0, -5.0, -10.0}) {
                const auto r = verify_square_nesting(parse_sequence(lit), t, 8);
                pass &= r.pass;
                if (r.worst_margin < worst) {
                    worst = r.worst_margin;
                    where = std::string(lit) + " t=" + std::to_string(static_cast<int>(t)) + " level " +
                            std::to_string(r.worst_level);
                }
            }
        return Outcome{pass && worst >= -kNestingTol,
                       "9 (s,t) pairs, n <= 8, worst signed margin " + sci(worst) + " at " + where +
                           " (tolerance 1e-9; corners map onto corners)"};
    });

    criterion(8, "semiconjugacy", [] {
        oracle::Gen gen(108);
        double worst = 0.0;
        int overflow_pairs = 0;
        bool pass = true;
        for (int k = 0; k < 1000; ++k) {
            Complex z(gen.uniform(-20, 20), gen.uniform(-kPi, kPi));
            if (std::abs(z.imag()) >= kPi) continue;
            const Complex hz = evaluate_h(semiconjugacy_project(z));
            const Complex efz = std::exp(-evaluate_f(z));
            if (!is_finite(hz)) {
                ++overflow_pairs;
                pass &= !is_finite(efz);
                continue;
            }
            worst = std::max(worst, std::abs(efz - hz) / (1.0 + std::abs(hz)));
        }
        pass &= worst <= kTolSemiconj;
        return Outcome{pass, "10^3 z with Re in (-20,20), max |E(f(z)) - h(E(z))| / (1+|h|) = " + sci(worst) + ", " +
                                 std::to_string(overflow_pairs) + " samples where both sides overflow"};
    });

    criterion(9, "inner function", [] {
        oracle::Gen gen(109);
        double worst = 0.0;
        for (int k = 0; k < 10000; ++k)
            worst = std::max(worst, std::abs(std::abs(g_eval(std::polar(1.0, gen.uniform(0, 2 * kPi)))) - 1.0));
        bool sizes = true;
        for (int n = 0; n <= 10; ++n) sizes &= eventual_preimages_of_one(n).size() == (std::size_t{1} << n);
        const auto d2 = eventual_preimages_of_one(2);
        const Complex want[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        double set_err = 0.0;
        for (int k = 0; k < 4; ++k) set_err = std::max(set_err, std::abs(d2[k].point() - want[k]));
        int trips = 0;
        for (int k = 0; k < 100; ++k) {
            const Word w = gen.word(16);
            const auto a = angle_from_itinerary(SymbolSequence::periodic(w, Word{0, 1}), 16);
            const auto it = circle_itinerary(a.angle, 16);
            bool ok = false;
            for (const auto& b : it.branches) ok |= std::equal(b.begin(), b.begin() + 14, w.begin());
            trips += ok;
        }
        return Outcome{worst <= kTolCircle && sizes && set_err <= kTolCircle && trips == 100,
                       "max ||g| - 1| " + sci(worst) + ", |g^-n(1)| = 2^n for n <= 10: " + (sizes ? "yes" : "no") +
                           ", depth-2 set error " + sci(set_err) + ", round trips " + std::to_string(trips) + "/100"};
    });

    criterion(10, "landing diagnostics and oscillating builder", [] {
        const Complex a(-std::log(kPi), kHalfPi);
        const auto d = landing_diagnostic(parse_sequence("(01)*"), 30, 300);
        const double off = std::abs(d.window_center - a);
        const double radii[] = {1.0, 2.0, 3.0};
        const auto s = build_oscillating_sequence(radii);
        double best = 0.0;
        for (const auto& p : trace_ray(s, -5, 5, 0.1)) best = std::max(best, std::abs(p.z));
        return Outcome{d.last_window_diameter <= kTolWindow && off <= kTolWindow && best > 3.0,
                       "window diameter " + sci(d.last_window_diameter) + ", center offset " + sci(off) +
                           "; built " + s.to_string() + ", traced max |z| = " + std::to_string(best)};
    });

    criterion(11, "render invariants", [] {
        const BBox box{-8.0, 6.0, -kPi, kPi};
        std::vector<ClassifiedGrid> grids;
        for (int budget : {50, 200, 800}) grids.push_back(classify_grid(box, 400, 200, budget, {5, 1}));
        std::vector<long> undecided;
        long asym = 0;
        for (const auto& g : grids) {
            long u = 0;
            for (int j = 0; j < g.height; ++j)
                for (int i = 0; i < g.width; ++i) {
                    if (g.at(i, j).tag == RegionOutcome::Tag::Undecided) ++u;
                    if (!(g.at(i, j) == g.at(i, g.height - 1 - j))) ++asym;
                }
            undecided.push_back(u);
        }
        const bool monotone = undecided[0] >= undecided[1] && undecided[1] >= undecided[2];

        CurveOptions co;
        co.workers = 8;
        const auto curves = preimage_curves(6, co);
        long inside = 0, off_boundary = 0;
        for (const auto& c : curves)
            for (const auto& v : c.vertices) {
                const auto [col, row] = grids[0].pixel_of(v);
                if (col < 0) continue;
                ++inside;
                for (const auto& g : grids)
                    if (g.at(col, row).tag != RegionOutcome::Tag::Undecided) ++off_boundary;
            }

        const auto par = classify_grid(box, 400, 200, 800, {5, 8});
        const Palette pal;
        const bool same = encode_ppm(400, 200, rasterize(grids[2], pal)) == encode_ppm(400, 200, rasterize(par, pal));
        return Outcome{monotone && asym == 0 && off_boundary == 0 && same && inside > 0,
                       "undecided 50/200/800: " + std::to_string(undecided[0]) + "/" + std::to_string(undecided[1]) +
                           "/" + std::to_string(undecided[2]) + ", asymmetric cells " + std::to_string(asym) + ", " +
                           std::to_string(off_boundary) + " of " + std::to_string(inside) +
                           " in-box curve vertices on decided pixels, 1 vs 8 workers identical: " + (same ? "yes" : "no")};
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
