#include "bakerrays/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "bakerrays/branches.hpp"
#include "bakerrays/core_map.hpp"
#include "bakerrays/errors.hpp"
#include "bakerrays/inner_circle.hpp"
#include "bakerrays/landing.hpp"
#include "bakerrays/rays.hpp"
#include "bakerrays/render.hpp"

namespace baker {

namespace {

std::string sci(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
    try {
        CheckResult r = body();
        r.name = name;
        return r;
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed, unsigned workers) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<CheckResult> out;

    out.push_back(guarded("inverse branches", [&] {
        double worst = 0.0;
        bool halves = true;
        for (int k = 0; k < 2000; ++k) {
            Complex w(-10.0 + 20.0 * unit(rng), -kPi + 2.0 * kPi * unit(rng));
            if (w.real() >= 1.0 && std::fabs(w.imag()) < 1e-9) continue;
            for (Symbol i : {Symbol{0}, Symbol{1}}) {
                const Complex z = phi(i, w);
                worst = std::max(worst, std::abs(evaluate_f(z) - w));
                halves &= i == 0 ? z.imag() >= 0.0 : z.imag() <= 0.0;
            }
        }
        return CheckResult{{}, worst <= 1e-10 && halves, "max residual " + sci(worst)};
    }));

    out.push_back(guarded("expansion outside V and invariance of V", [&] {
        int mismatch = 0, escaped = 0;
        for (int k = 0; k < 20000; ++k) {
            Complex z(-6.0 + 12.0 * unit(rng), -kPi + 2.0 * kPi * unit(rng));
            if (!in_V_closure(z) && (derivative_modulus(z) > 1.0) != expansion_criterion(z)) ++mismatch;
            Complex v(-1.0 + 1e-12 + 20.0 * unit(rng), (unit(rng) - 0.5) * (kPi - 1e-12));
            if (!in_V(evaluate_f(v))) ++escaped;
        }
        return CheckResult{{}, mismatch == 0 && escaped == 0,
                           std::to_string(mismatch) + " criterion mismatches, " + std::to_string(escaped) +
                               " V points mapped out"};
    }));

    out.push_back(guarded("rays of the constant sequences lie on the lines", [&] {
        double worst = 0.0;
        const auto s0 = SymbolSequence::constant({}, 0), s1 = SymbolSequence::constant({}, 1);
        for (int k = 0; k <= 40; ++k) {
            const double t = -10.0 + 0.5 * k;
            worst = std::max(worst, std::abs(ray_point(s0, t).z - Complex(t, kPi)));
            worst = std::max(worst, std::abs(ray_point(s1, t).z - Complex(t, -kPi)));
        }
        return CheckResult{{}, worst <= 1e-9, "max deviation " + sci(worst)};
    }));

    out.push_back(guarded("ray functional equation", [&] {
        double worst = 0.0;
        for (const char* lit : {"(01)*", "(0011)*", "0110100~"}) {
            const auto s = parse_sequence(lit);
            const auto ss = shift(s);
            for (int k = 0; k <= 15; ++k) {
                const double t = -10.0 + k;
                worst = std::max(worst, std::abs(evaluate_f(ray_point(s, t).z) - ray_point(ss, model_F(t)).z));
            }
        }
        return CheckResult{{}, worst <= 1e-8, "max defect " + sci(worst)};
    }));

    out.push_back(guarded("period two anchor", [&] {
        const auto p = periodic_point(Word{0, 1});
        const Complex ref(-std::log(kPi), kHalfPi);
        const double dz = std::abs(p.z - ref);
        const double dm = std::fabs(std::abs(p.multiplier) - (1.0 + kPi * kPi));
        return CheckResult{{}, dz <= 1e-10 && dm <= 1e-8, "|z - ref| " + sci(dz) + ", multiplier error " + sci(dm)};
    }));

    out.push_back(guarded("periodic points up to length 6", [&] {
        int bad = 0, count = 0;
        for (int len = 2; len <= 6; ++len) {
            for (std::uint32_t code = 0; code < (1u << len); ++code) {
                Word w(static_cast<std::size_t>(len));
                for (int k = 0; k < len; ++k) w[k] = static_cast<Symbol>((code >> (len - 1 - k)) & 1u);
                if (longest_run(w) == static_cast<std::uint64_t>(len)) continue;
                ++count;
                const auto p = periodic_point(w);
                if (!(p.residual <= 1e-8 && std::abs(p.multiplier) > 1.0 && cycle_stays_in_strip(p, 500))) ++bad;
            }
        }
        return CheckResult{{}, bad == 0, std::to_string(bad) + " of " + std::to_string(count) + " words failed"};
    }));

    out.push_back(guarded("square nesting", [&] {
        double worst = 1e300;
        bool pass = true;
        for (const char* lit : {"0~", "1~", "(01)*"})
            for (double t : {-2.0, -5.0}) {
                const auto r = verify_square_nesting(parse_sequence(lit), t, 8);
                pass &= r.pass;
                worst = std::min(worst, r.worst_margin);
            }
        return CheckResult{{}, pass, "worst margin " + sci(worst)};
    }));

    out.push_back(guarded("semiconjugacy", [&] {
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            Complex z(-20.0 + 26.0 * unit(rng), (unit(rng) * 2.0 - 1.0) * (kPi - 1e-9));
            const Complex hz = evaluate_h(semiconjugacy_project(z));
            // f(z) may leave the strip, where E is still e^{-w} but the projection refuses it.
            const Complex efz = std::exp(-evaluate_f(z));
            if (!is_finite(hz)) {
                if (is_finite(efz)) worst = std::max(worst, 1.0);
                continue;
            }
            const double err = std::abs(efz - hz) / (1.0 + std::abs(hz));
            worst = std::max(worst, err);
        }
        return CheckResult{{}, worst <= 1e-12, "max relative error " + sci(worst)};
    }));

    out.push_back(guarded("inner function", [&] {
        double worst = 0.0;
        for (int k = 0; k < 2000; ++k) worst = std::max(worst, std::fabs(std::abs(g_eval(std::polar(1.0, 2.0 * kPi * unit(rng)))) - 1.0));
        bool sizes = true;
        for (int n = 0; n <= 8; ++n) sizes &= eventual_preimages_of_one(n).size() == (std::size_t{1} << n);
        return CheckResult{{}, worst <= 1e-12 && sizes, "max ||g| - 1| " + sci(worst)};
    }));

    out.push_back(guarded("render symmetry and monotonicity", [&] {
        const BBox box{-8.0, 6.0, -kPi, kPi};
        const auto a = classify_grid(box, 80, 40, 50, {5, workers});
        const auto b = classify_grid(box, 80, 40, 200, {5, workers});
        int asym = 0, regress = 0;
        for (int j = 0; j < a.height; ++j)
            for (int i = 0; i < a.width; ++i) {
                if (!(a.at(i, j) == a.at(i, a.height - 1 - j))) ++asym;
                if (a.at(i, j).tag != RegionOutcome::Tag::Undecided && !(a.at(i, j) == b.at(i, j))) ++regress;
            }
        return CheckResult{{}, asym == 0 && regress == 0,
                           std::to_string(asym) + " asymmetric cells, " + std::to_string(regress) + " changed outcomes"};
    }));

    return out;
}

}  // namespace baker
