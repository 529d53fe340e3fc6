#include "bakerrays/rays.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "bakerrays/branches.hpp"

namespace baker {

namespace {

constexpr double kSquareDiam = std::numbers::sqrt2 * kPi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double sigma_of(Symbol s) { return s == 0 ? 1.0 : -1.0; }

double roundoff_floor(Complex z, std::uint64_t steps) {
    return 4.0 * kEps * (1.0 + std::abs(z)) * static_cast<double>(steps + 1);
}

// F without the overflow exception: -inf once e^{-t} overflows.
double model_F_raw(double t) { return t - std::exp(-t); }

}  // namespace

std::uint64_t escape_depth(double t, std::uint64_t budget) {
    if (!std::isfinite(t)) throw DomainError("escape_depth: t must be finite");
    std::uint64_t n = 0;
    while (t > -2.0) {
        if (n >= budget) {
            std::ostringstream msg;
            msg << "escape_depth: more than " << budget << " steps of F needed to reach -2";
            throw NoConvergence(msg.str());
        }
        t = model_F_raw(t);
        ++n;
    }
    return n;
}

RayPoint tail_point(const SymbolSequence& s, double t, double tol) {
    if (!(t <= -2.0)) throw PreconditionError("tail_point: requires t <= -2");
    if (!(tol > 0.0)) throw PreconditionError("tail_point: tol must be positive");

    // diam Q_n <= sqrt(2) pi / prod_{k<=n} lambda(t_k), with t_k = F^k(t).
    std::vector<double> ts{t};
    double bound = kSquareDiam;
    std::size_t n = 0;
    for (;;) {
        bound /= expansion_lower_bound(ts[n]);
        if (!(bound > tol) || n >= 256) break;
        ts.push_back(model_F_raw(ts[n]));
        ++n;
    }
    if (!std::isfinite(bound)) bound = 0.0;

    const Word sym = s.take(n + 2);
    const double tn = ts[n];
    const double e = std::exp(-tn);
    Complex z;
    if (std::isfinite(e) && std::abs(tn - e) < 1e12) {
        const Complex center{(tn - e) - kHalfPi, sigma_of(sym[n + 1]) * kHalfPi};
        z = inverse_branch(sym[n], center).z;
    } else {
        // D_{n+1} is beyond double range; its preimage hugs the corner of D_n.
        const double sg = sigma_of(sym[n]);
        const Complex offset{-kHalfPi, sigma_of(sym[n + 1]) * kHalfPi - sg * kPi};
        z = Complex{tn, sg * kPi} + offset * std::exp(tn);
    }
    z = compose_pullback(std::span<const Symbol>(sym.data(), n), z);
    return {t, z, n + 1, bound + roundoff_floor(z, n + 1)};
}

RayPoint ray_point(const SymbolSequence& s, double t, const RayOptions& opt) {
    if (!std::isfinite(t)) throw DomainError("ray_point: t must be finite");
    if (!(opt.tol > 0.0)) throw PreconditionError("ray_point: tol must be positive");

    if (opt.constant_tail_shortcut && s.kind() == SymbolSequence::TailKind::Constant &&
        opt.extra_depth == 0) {
        const Word& pre = s.prefix();
        double u = t;
        bool ok = true;
        for (std::size_t k = 0; k < pre.size() && ok; ++k) {
            u = model_F_raw(u);
            ok = std::isfinite(u);
        }
        if (ok) {
            Complex z{u, sigma_of(s.constant_symbol()) * kPi};
            z = compose_pullback(pre, z);
            return {t, z, pre.size(), roundoff_floor(z, pre.size())};
        }
    }

    const std::uint64_t n = escape_depth(t, opt.pullback_budget) + opt.extra_depth;
    double u = t;
    for (std::uint64_t k = 0; k < n; ++k) u = model_F_raw(u);
    if (!std::isfinite(u)) {
        throw DomainError("ray_point: F^n(t) leaves the double range at the requested depth");
    }
    const RayPoint tail = tail_point(shift(s, n), u, std::min(opt.tol, 1e-12));
    const Word head = s.take(n);
    const Complex z = compose_pullback(head, tail.z);
    return {t, z, n + tail.depth, tail.err_radius + roundoff_floor(z, n)};
}

namespace {

std::vector<RayPoint> eval_batch(const SymbolSequence& s, const std::vector<double>& ts,
                                 const RayOptions& opt, unsigned workers) {
    std::vector<RayPoint> out(ts.size());
    std::vector<std::exception_ptr> errs(ts.size());
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < ts.size(); i += stride) {
            try {
                out[i] = ray_point(s, ts[i], opt);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const unsigned w = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(ts.size())));
    if (w == 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < w; ++k) pool.emplace_back(work, k, w);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace

std::vector<RayPoint> trace_ray(const SymbolSequence& s, double t_min, double t_max, double max_step,
                                const RayOptions& opt, unsigned workers) {
    if (!(t_min < t_max)) throw PreconditionError("trace_ray: requires t_min < t_max");
    if (!(max_step > 0.0)) throw PreconditionError("trace_ray: max_step must be positive");

    const auto n0 = static_cast<std::size_t>(std::ceil((t_max - t_min) / max_step));
    if (n0 + 1 > kMaxTraceSamples) throw StepCollapse("trace_ray: initial grid exceeds the sample cap");
    std::vector<double> ts(n0 + 1);
    for (std::size_t i = 0; i <= n0; ++i) ts[i] = t_min + (t_max - t_min) * static_cast<double>(i) / static_cast<double>(n0);
    ts.back() = t_max;
    std::vector<RayPoint> pts = eval_batch(s, ts, opt, workers);

    for (;;) {
        std::vector<double> mids;
        std::vector<std::size_t> where;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (std::abs(pts[i + 1].z - pts[i].z) <= max_step) continue;
            const double tm = 0.5 * (pts[i].t + pts[i + 1].t);
            if (!(tm > pts[i].t && tm < pts[i + 1].t)) {
                throw TraceCollapse("trace_ray: parameter resolution exhausted near t = " + std::to_string(tm), pts);
            }
            mids.push_back(tm);
            where.push_back(i);
        }
        if (mids.empty()) return pts;
        if (pts.size() + mids.size() > kMaxTraceSamples) {
            throw TraceCollapse("trace_ray: adaptive refinement exceeded 2^20 samples", pts);
        }
        const std::vector<RayPoint> extra = eval_batch(s, mids, opt, workers);
        std::vector<RayPoint> merged;
        merged.reserve(pts.size() + extra.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            merged.push_back(pts[i]);
            if (k < where.size() && where[k] == i) merged.push_back(extra[k++]);
        }
        pts = std::move(merged);
    }
}

std::uint64_t continuity_depth(const SymbolSequence& /*s*/, double t0, double eps, std::uint64_t budget) {
    if (!(eps > 0.0)) throw PreconditionError("continuity_depth: eps must be positive");
    const std::uint64_t n1 = escape_depth(t0, budget);
    const double extra = std::ceil(std::log(kSquareDiam / eps) / std::log(std::numbers::sqrt2));
    return n1 + static_cast<std::uint64_t>(std::max(0.0, extra));
}

NestingReport verify_square_nesting(const SymbolSequence& s, double t, int n_max, int samples) {
    if (!(t <= -2.0)) throw PreconditionError("verify_square_nesting: requires t <= -2");
    if (n_max < 0) throw PreconditionError("verify_square_nesting: n_max must be >= 0");
    const int per_side = std::max(1, (std::max(samples, 200) + 3) / 4);
    const Word sym = s.take(static_cast<std::uint64_t>(n_max) + 2);

    NestingReport rep;
    rep.worst_margin = std::numeric_limits<double>::infinity();
    double tn = t;
    for (int n = 0; n <= n_max; ++n) {
        const double sg = sigma_of(sym[n]);
        const double sg1 = sigma_of(sym[n + 1]);
        const double e = std::exp(-tn);
        const double tn1 = tn - e;
        const bool exact = std::isfinite(tn) && std::isfinite(e) && std::abs(tn1) < 1e12;
        const double scale = std::exp(tn);
        for (int side = 0; side < 4; ++side) {
            for (int k = 0; k < per_side; ++k) {
                const double u = static_cast<double>(k) / per_side;
                // Offsets (a, b) from the right edge: a in [-pi, 0], sg1*b in [0, pi].
                double a = 0.0, b = 0.0;
                switch (side) {
                    case 0: a = -kPi * u; b = 0.0; break;
                    case 1: a = -kPi; b = kPi * u; break;
                    case 2: a = -kPi * (1.0 - u); b = kPi; break;
                    default: a = 0.0; b = kPi * (1.0 - u); break;
                }
                b *= sg1;
                Complex rel;  // pulled-back point minus the corner tn + i sg pi
                Complex z;
                if (exact) {
                    z = inverse_branch(sym[n], Complex{tn1 + a, b}).z;
                    rel = {z.real() - tn, z.imag() - sg * kPi};
                } else {
                    rel = Complex{a, b - sg * kPi} * scale;
                    z = Complex{tn, sg * kPi} + rel;
                    ++rep.asymptotic_levels;
                }
                const double yy = sg * rel.imag();  // in [-pi, 0] when inside
                const double margin = std::min({-rel.real(), kPi + rel.real(), -yy, kPi + yy});
                if (margin < rep.worst_margin) {
                    rep.worst_margin = margin;
                    rep.worst_level = n;
                    rep.worst_point = z;
                }
            }
        }
        if (exact) ++rep.exact_levels;
        tn = tn1;
    }
    rep.asymptotic_levels = n_max + 1 - rep.exact_levels;
    rep.pass = rep.worst_margin >= -kNestingTol;
    if (!rep.pass) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "square nesting violated at level " << rep.worst_level << ": point " << rep.worst_point.real()
            << (rep.worst_point.imag() < 0 ? "" : "+") << rep.worst_point.imag() << "i, margin "
            << rep.worst_margin;
        throw NestingViolation(msg.str());
    }
    return rep;
}

}  // namespace baker
