#include "bakerrays/inner_circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bakerrays/errors.hpp"

namespace baker {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_of(Complex z) {
    double a = std::atan2(z.imag(), z.real());
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

}  // namespace

CircleAngle CircleAngle::reduced(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    return {t};
}

Complex g_eval(Complex z) {
    const Complex z2 = z * z;
    const Complex den = 3.0 + z2;
    if (std::abs(den) < 1e-12) throw DomainError("g_eval: pole at +-i sqrt(3)");
    return (3.0 * z2 + 1.0) / den;
}

double g_deriv_modulus_on_circle(double theta) {
    const double m = std::abs(3.0 * std::polar(1.0, 2.0 * theta) + 1.0);
    return 16.0 / (m * m);
}

double circle_preimage(double psi, Symbol half) {
    const Complex w = std::polar(1.0, psi);
    const Complex m = (3.0 * w - 1.0) / (3.0 - w);
    // The Moebius factor fixes 1 and -1 and is increasing in the angle, so keep
    // alpha continuous on [0, 2 pi] with alpha(0) = 0 and alpha(2 pi) = 2 pi.
    double alpha = angle_of(m);
    if (psi > std::numbers::pi && alpha < std::numbers::pi) alpha = kTwoPi;
    if (psi < std::numbers::pi && alpha > std::numbers::pi) alpha = 0.0;
    const double theta = 0.5 * alpha;
    return half == 0 ? theta : theta + std::numbers::pi;
}

CircleItinerary circle_itinerary(CircleAngle theta, int depth) {
    if (depth < 1) throw PreconditionError("circle_itinerary: depth must be >= 1");
    Complex z = std::polar(1.0, CircleAngle::reduced(theta.theta).theta);
    Word sym;
    for (int n = 0; n < depth; ++n) {
        if (std::abs(z - Complex{1.0, 0.0}) <= kCircleOneTol) {
            CircleItinerary out;
            out.preimage_step = n;
            for (int j = 0; j < 2; ++j) {
                Word w(sym.begin(), sym.begin() + std::max(0, n - 1));
                if (n >= 1) w.push_back(j == 0 ? 1 : 0);
                w.resize(static_cast<std::size_t>(depth), static_cast<Symbol>(j));
                out.branches.push_back(std::move(w));
            }
            return out;
        }
        sym.push_back(z.imag() > 0.0 ? 0 : 1);
        z = g_eval(z);
        z /= std::abs(z);
    }
    return {{sym}, std::nullopt};
}

ArcEstimate angle_from_itinerary(const SymbolSequence& s, int depth) {
    if (depth < 1) throw PreconditionError("angle_from_itinerary: depth must be >= 1");
    ArcEstimate out;
    if (s.kind() == SymbolSequence::TailKind::Constant) {
        // u c~ with u ending in the other symbol: g^{|u|-1} sends the point to -1.
        const Word& u = s.prefix();
        double theta = 0.0;
        if (!u.empty()) {
            theta = std::numbers::pi;
            for (std::size_t k = u.size() - 1; k-- > 0;) theta = circle_preimage(theta, u[k]);
        }
        out.angle = CircleAngle::reduced(theta);
        out.exact = true;
        return out;
    }
    const Word w = s.take(static_cast<std::uint64_t>(depth));
    double a = w.back() == 0 ? 0.0 : std::numbers::pi;
    double b = w.back() == 0 ? std::numbers::pi : kTwoPi;
    for (std::size_t k = w.size() - 1; k-- > 0;) {
        a = circle_preimage(a, w[k]);
        b = circle_preimage(b, w[k]);
    }
    out.angle = CircleAngle::reduced(0.5 * (a + b));
    out.arc_length = b - a;
    out.slow = out.arc_length > kSlowArc;
    return out;
}

std::vector<CircleAngle> eventual_preimages_of_one(int depth) {
    if (depth < 0) throw PreconditionError("eventual_preimages_of_one: depth must be >= 0");
    std::vector<double> level{0.0};
    for (int n = 1; n <= depth; ++n) {
        std::vector<double> next;
        next.reserve(level.size() * 2);
        for (double psi : level) {
            next.push_back(CircleAngle::reduced(circle_preimage(psi, 0)).theta);
            next.push_back(CircleAngle::reduced(circle_preimage(psi, 1)).theta);
        }
        std::sort(next.begin(), next.end());
        std::vector<double> uniq;
        for (double t : next) {
            if (uniq.empty() || t - uniq.back() > 1e-12) uniq.push_back(t);
        }
        if (uniq.size() > 1 && kTwoPi - uniq.back() + uniq.front() <= 1e-12) uniq.pop_back();
        level = std::move(uniq);
    }
    std::vector<CircleAngle> out;
    out.reserve(level.size());
    for (double t : level) out.push_back({t});
    return out;
}

}  // namespace baker
