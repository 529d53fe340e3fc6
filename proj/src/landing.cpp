#include "bakerrays/landing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bakerrays/branches.hpp"
#include "bakerrays/errors.hpp"
#include "bakerrays/rays.hpp"

namespace baker {

namespace {

double sigma_of(Symbol s) { return s == 0 ? 1.0 : -1.0; }

struct CoreLanding {
    Complex z;
    double residual;
    std::uint64_t depth;
};

CoreLanding landing_core(const SymbolSequence& s, double tol, std::uint64_t max_depth) {
    const Word& pre = s.prefix();
    const Word& per = s.period();
    Complex y{-3.0, sigma_of(s.at(0)) * kHalfPi};
    Complex prev = compose_pullback(pre, y);
    double last_inc = std::numeric_limits<double>::infinity();
    int stalls = 0;
    for (std::uint64_t k = 1;; ++k) {
        const std::uint64_t depth = pre.size() + k * per.size();
        if (depth > max_depth) {
            std::ostringstream msg;
            msg << "landing_point: Cauchy increments still " << last_inc << " at depth " << max_depth;
            throw NoConvergence(msg.str());
        }
        y = compose_pullback(per, y);
        const Complex z = compose_pullback(pre, y);
        const double inc = std::abs(z - prev);
        if (inc <= tol) return {z, inc, depth};
        stalls = (inc >= last_inc) ? stalls + 1 : 0;
        if (stalls > 50) {
            throw NoConvergence("landing_point: Cauchy increments stopped decreasing");
        }
        last_inc = inc;
        prev = z;
    }
}

// f^p(z) and (f^p)'(z).
std::pair<Complex, Complex> iterate_with_derivative(Complex z, int p) {
    Complex d{1.0, 0.0};
    for (int k = 0; k < p; ++k) {
        d *= derivative_f(z);
        z = evaluate_f(z);
    }
    return {z, d};
}

Complex newton_polish_cycle(Complex z, int p) {
    double res = std::abs(iterate_with_derivative(z, p).first - z);
    for (int it = 0; it < 12; ++it) {
        const auto [fp, d] = iterate_with_derivative(z, p);
        const Complex g = fp - z;
        const Complex dg = d - Complex{1.0, 0.0};
        if (std::abs(dg) == 0.0) break;
        const Complex zn = z - g / dg;
        double rn;
        try {
            rn = std::abs(iterate_with_derivative(zn, p).first - zn);
        } catch (const OverflowError&) {
            break;
        }
        if (!(rn < res)) break;
        z = zn;
        res = rn;
    }
    return z;
}

}  // namespace

LandingResult landing_point(const SymbolSequence& s, double tol, std::uint64_t max_depth) {
    if (!(tol > 0.0)) throw PreconditionError("landing_point: tol must be positive");
    const Classification c = classify_sequence(s);
    if (c.kind == SequenceClass::EventuallyConstant) {
        throw DomainError("landing_point: eventually constant sequence " + s.to_string() +
                          " has no non-escaping points");
    }
    if (c.kind != SequenceClass::Bounded) {
        throw DomainError("landing_point: sequence " + s.to_string() + " is not bounded");
    }
    const CoreLanding core = landing_core(s, tol, max_depth);
    LandingResult out{core.z, core.residual, core.depth, 0.0, 0.0, {}};
    // The orbit of w_s runs through w_{sigma^k s}; there are |prefix| + |period| of them.
    const std::size_t distinct = s.prefix().size() + s.period().size();
    out.orbit.push_back(core.z);
    for (std::size_t k = 1; k < distinct; ++k) out.orbit.push_back(landing_core(shift(s, k), tol, max_depth).z);
    out.orbit_bound = 0.0;
    out.orbit_max_re = -std::numeric_limits<double>::infinity();
    for (const Complex& w : out.orbit) {
        out.orbit_bound = std::max(out.orbit_bound, std::abs(w.real()));
        out.orbit_max_re = std::max(out.orbit_max_re, w.real());
    }
    return out;
}

PeriodicPoint periodic_point(const Word& word, double tol, int budget) {
    if (word.size() < 2 || std::all_of(word.begin(), word.end(), [&](Symbol c) { return c == word[0]; })) {
        throw DomainError("periodic_point: word '" + format_word(word) +
                          "' is constant; f has no fixed points in S since e^{-z} never vanishes");
    }
    if (!(tol > 0.0)) throw PreconditionError("periodic_point: tol must be positive");
    const int p = static_cast<int>(word.size());
    Complex y{-3.0, sigma_of(word[0]) * kHalfPi};
    bool converged = false;
    for (int it = 0; it < budget; ++it) {
        const Complex yn = compose_pullback(word, y);
        const double inc = std::abs(yn - y);
        y = yn;
        if (inc <= tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NoConvergence("periodic_point: fixed-point iteration of the pullback for '" +
                            format_word(word) + "' did not converge");
    }
    PeriodicPoint out;
    out.word = word;
    out.period = p;
    out.z = newton_polish_cycle(y, p);
    out.cycle.push_back(out.z);
    for (int k = 1; k < p; ++k) out.cycle.push_back(newton_polish_cycle(evaluate_f(out.cycle.back()), p));
    out.multiplier = Complex{1.0, 0.0};
    for (const Complex& c : out.cycle) out.multiplier *= derivative_f(c);
    out.residual = std::abs(iterate_with_derivative(out.z, p).first - out.z);
    return out;
}

bool cycle_stays_in_strip(const PeriodicPoint& p, int steps, double shadow_tol) {
    const std::size_t n = p.cycle.size();
    if (n == 0) return false;
    for (int k = 0; k < steps; ++k) {
        const Complex c = p.cycle[static_cast<std::size_t>(k) % n];
        if (!in_strip(c)) return false;
        const Complex next = p.cycle[static_cast<std::size_t>(k + 1) % n];
        if (std::abs(evaluate_f(c) - next) > shadow_tol) return false;
    }
    return true;
}

double orbit_radius_bound_for_run(std::uint64_t n) {
    double r = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) r = model_F_inverse(r);
    return r;
}

double orbit_radius_bound(const SymbolSequence& s) {
    const Classification c = classify_sequence(s);
    if (c.kind != SequenceClass::Bounded) {
        throw DomainError("orbit_radius_bound: sequence " + s.to_string() + " is not bounded");
    }
    return orbit_radius_bound_for_run(c.max_block);
}

LandingDiagnostic landing_diagnostic(const SymbolSequence& s, double t_max, int samples,
                                     const DiagnosticOptions& opt) {
    if (samples < 2) throw PreconditionError("landing_diagnostic: need at least 2 samples");
    if (!(t_max > opt.t_min)) throw PreconditionError("landing_diagnostic: t_max must exceed t_min");
    LandingDiagnostic rep;
    rep.samples = samples;
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    RayOptions ro;
    ro.pullback_budget = opt.exact_budget;
    ro.constant_tail_shortcut = true;
    for (int i = 0; i < samples; ++i) {
        const double t = opt.t_min + (t_max - opt.t_min) * i / (samples - 1);
        Complex z;
        try {
            z = ray_point(s, t, ro).z;
        } catch (const NoConvergence&) {
            const std::uint64_t m = opt.truncated_depth;
            double u = t;
            for (std::uint64_t k = 0; k < m; ++k) u = u - std::exp(-u);
            const double sg = sigma_of(s.at(m));
            const Word head = s.take(m);
            const Complex seeds[3] = {{-3.0, sg * kHalfPi}, {u, sg * kPi}, {u, sg * kHalfPi}};
            z = compose_pullback(head, seeds[0]);
            for (int k = 1; k < 3; ++k) {
                rep.max_seed_spread = std::max(rep.max_seed_spread, std::abs(compose_pullback(head, seeds[k]) - z));
            }
            ++rep.truncated_samples;
        }
        rep.max_modulus = std::max(rep.max_modulus, std::abs(z));
        pts.push_back(z);
    }
    const auto win = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(opt.window_fraction * samples)));
    const std::size_t first = pts.size() - std::min(win, pts.size());
    Complex sum{0.0, 0.0};
    for (std::size_t i = first; i < pts.size(); ++i) {
        sum += pts[i];
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            rep.last_window_diameter = std::max(rep.last_window_diameter, std::abs(pts[i] - pts[j]));
    }
    rep.window_center = sum / static_cast<double>(pts.size() - first);
    return rep;
}

}  // namespace baker
