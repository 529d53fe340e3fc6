#include "bakerrays/branches.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "bakerrays/errors.hpp"

namespace baker {

namespace {

struct HalfStrip {
    double sigma;  // +1 upper (phi_0), -1 lower (phi_1)

    Complex project(Complex z) const {
        double y = z.imag() * sigma;
        y = std::clamp(y, 0.0, kPi);
        return {z.real(), y * sigma};
    }
};

// -log(u) with arg(u) forced into [-pi, 0] for the upper branch and [0, pi]
// for the lower one, so the result has Im in the target half-strip.
Complex forced_neg_log(Complex u, double sigma) {
    double a = std::atan2(u.imag(), u.real());
    if (sigma > 0) {
        if (a > 0) a = (a < kHalfPi) ? 0.0 : -kPi;
    } else {
        if (a < 0) a = (a > -kHalfPi) ? 0.0 : kPi;
    }
    return {-std::log(std::abs(u)), -a};
}

double residual_of(Complex z, Complex w) {
    try {
        return std::abs(evaluate_f(z) - w);
    } catch (const OverflowError&) {
        return std::numeric_limits<double>::infinity();
    }
}

bool try_log_iteration(Complex w, const HalfStrip& hs, double accept, int budget,
                       BranchSolveReport& out) {
    Complex z{std::min(-1.0, -std::log(std::max(std::abs(w), 1.0))), hs.sigma * kHalfPi};
    double last_step = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= budget; ++it) {
        const Complex u = w - z;
        if (u == Complex{0.0, 0.0}) return false;
        const Complex zn = hs.project(forced_neg_log(u, hs.sigma));
        const double step = std::abs(zn - z);
        z = zn;
        if (step <= 1e-15 * (1.0 + std::abs(z)) || it % 4 == 0) {
            const double r = residual_of(z, w);
            if (r <= accept) {
                out = {z, r, it, SolveMethod::LogFixedPoint};
                return true;
            }
        }
        // The map u -> -log(w - u) contracts by e^{Re z}; give up when that is near 1.
        if (z.real() > -0.05 || (it > 8 && step > 0.9 * last_step)) return false;
        last_step = step;
    }
    return false;
}

bool try_newton(Complex w, Complex seed, const HalfStrip& hs, double accept, int budget,
                BranchSolveReport& out) {
    Complex z = hs.project(seed);
    for (int it = 1; it <= budget; ++it) {
        if (z.real() < -700.0) return false;
        const Complex fz = evaluate_f(z);
        const Complex r = fz - w;
        if (std::abs(r) <= accept) {
            out = {z, std::abs(r), it, SolveMethod::Newton};
            return true;
        }
        const Complex d = derivative_f(z);
        Complex step = (std::abs(d) > 0.0) ? r / d : Complex{0.5, 0.0};
        const double len = std::abs(step);
        if (len > 1.0) step /= len;
        const Complex zn = hs.project(z - step);
        if (zn == z) {
            const double res = std::abs(r);
            if (res <= 4.0 * accept) {
                out = {z, res, it, SolveMethod::Newton};
                return true;
            }
            return false;
        }
        z = zn;
    }
    return false;
}

// Two extra Newton steps; keeps whichever iterate has the smaller residual.
void polish(Complex w, const HalfStrip& hs, BranchSolveReport& rep) {
    for (int k = 0; k < 2; ++k) {
        const Complex d = derivative_f(rep.z);
        if (std::abs(d) == 0.0) return;
        const Complex zn = hs.project(rep.z - (evaluate_f(rep.z) - w) / d);
        const double r = residual_of(zn, w);
        if (!(r < rep.residual)) return;
        rep.z = zn;
        rep.residual = r;
    }
}

}  // namespace

BranchSolveReport inverse_branch(Symbol i, Complex w, double tol, int budget) {
    if (i > 1) throw DomainError("inverse_branch: symbol must be 0 or 1");
    if (!(tol > 0.0)) throw DomainError("inverse_branch: tolerance must be positive");
    if (!is_finite(w)) throw DomainError("inverse_branch: w must be finite");
    if (std::abs(w.imag()) > kPi + kLineTol) {
        throw DomainError("inverse_branch: w lies outside the strip |Im w| <= pi");
    }
    const double cut_dist = (w.real() >= 1.0) ? std::abs(w.imag()) : std::abs(w - Complex{1.0, 0.0});
    if (cut_dist <= 1e-12) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "inverse_branch: w = " << w.real() << (w.imag() < 0 ? "" : "+") << w.imag()
            << "i lies on the branch cut [1, inf)";
        throw BranchCutError(msg.str());
    }
    w = {w.real(), std::clamp(w.imag(), -kPi, kPi)};

    const HalfStrip hs{i == 0 ? 1.0 : -1.0};
    const double accept = tol * std::max(1.0, std::abs(w));
    BranchSolveReport rep;
    if (try_log_iteration(w, hs, accept, std::min(budget, 80), rep)) {
        polish(w, hs, rep);
        return rep;
    }

    // Near the critical value 1 the preimages are close to +-sqrt(2(w - 1)).
    const Complex q = std::sqrt(2.0 * (w - Complex{1.0, 0.0}));
    const std::array<Complex, 7> seeds{
        (q.imag() * hs.sigma >= 0.0) ? q : -q,
        Complex{w.real(), hs.sigma * kHalfPi},
        Complex{w.real(), w.imag()},
        Complex{w.real(), hs.sigma * (kPi - 0.25)},
        Complex{w.real(), hs.sigma * 0.25},
        Complex{-std::log(std::max(std::abs(w), 1e-300)), hs.sigma * kHalfPi},
        Complex{-std::abs(q.real()), hs.sigma * std::abs(q.imag())},
    };
    for (const Complex& s : seeds) {
        if (try_newton(w, s, hs, accept, budget, rep)) {
            polish(w, hs, rep);
            return rep;
        }
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "inverse_branch(" << int(i) << "): no convergence for w = " << w.real() << " + "
        << w.imag() << "i";
    throw NoConvergence(msg.str());
}

Complex compose_pullback(std::span<const Symbol> word, Complex z, double tol) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        z = inverse_branch(*it, z, tol).z;
    }
    return z;
}

}  // namespace baker
