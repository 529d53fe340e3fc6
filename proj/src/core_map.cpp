#include "bakerrays/core_map.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "bakerrays/errors.hpp"

namespace baker {

namespace {

// exp(-x) with an overflow check. exp(709.78) is the last finite value.
double exp_neg(double x, const char* what) {
    double e = std::exp(-x);
    if (!std::isfinite(e)) {
        throw OverflowError(std::string(what) + ": exp(-Re z) overflows at Re z = " + std::to_string(x));
    }
    return e;
}

}  // namespace

Complex make_point(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw DomainError("point components must be finite");
    }
    return {re, im};
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex evaluate_f(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    const double e = exp_neg(x, "evaluate_f");
    Complex r{x + e * std::cos(y), y - e * std::sin(y)};
    if (!is_finite(r)) throw OverflowError("evaluate_f: result not finite");
    return r;
}

Complex derivative_f(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    const double e = exp_neg(x, "derivative_f");
    return {1.0 - e * std::cos(y), e * std::sin(y)};
}

double derivative_modulus(Complex z) {
    const double e = exp_neg(z.real(), "derivative_modulus");
    // factored so that the sign of m2 - 1 follows expansion_criterion
    const double m2 = 1.0 + e * (e - 2.0 * std::cos(z.imag()));
    return std::sqrt(std::max(m2, 0.0));
}

bool expansion_criterion(Complex z) {
    return exp_neg(z.real(), "expansion_criterion") - 2.0 * std::cos(z.imag()) > 0.0;
}

double model_F(double t) { return t - exp_neg(t, "model_F"); }

double model_F_inverse(double t) {
    if (!std::isfinite(t)) throw DomainError("model_F_inverse: argument not finite");
    // F is increasing and concave; F(x) ~ x on the right and ~ -e^{-x} on the left.
    double x = t >= 0.0 ? t + std::exp(-t) : (t > -1.0 ? 0.567 * (t + 1.0) : -std::log(-t));
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const double tol = 1e-13 * std::max(1.0, std::abs(t));
    for (int it = 0; it < 200; ++it) {
        const double e = std::exp(-x);
        const double r = x - e - t;
        if (std::abs(r) <= tol) return x;
        if (r > 0) hi = std::min(hi, x);
        else lo = std::max(lo, x);
        double nx = x - r / (1.0 + e);
        if (!(nx > lo && nx < hi)) {
            if (std::isfinite(lo) && std::isfinite(hi)) nx = 0.5 * (lo + hi);
            else if (std::isfinite(lo)) nx = lo + 1.0;
            else nx = hi - 1.0;
        }
        if (nx == x) return x;
        x = nx;
    }
    throw NoConvergence("model_F_inverse: Newton iteration did not converge");
}

std::string_view to_string(Region r) {
    switch (r) {
        case Region::V: return "V";
        case Region::Omega00: return "Omega00";
        case Region::Omega01: return "Omega01";
        case Region::Omega10: return "Omega10";
        case Region::Omega11: return "Omega11";
        case Region::OnR: return "OnR";
        case Region::OnLplus: return "OnLplus";
        case Region::OnLminus: return "OnLminus";
        case Region::ExitsS: return "ExitsS";
        case Region::OutsideS: return "OutsideS";
    }
    return "?";
}

bool in_strip(Complex z) { return std::abs(z.imag()) <= kPi; }
bool in_strip_interior(Complex z) { return std::abs(z.imag()) < kPi; }
bool in_V(Complex z) { return z.real() > -1.0 && std::abs(z.imag()) < kHalfPi; }
bool in_V_closure(Complex z) { return z.real() >= -1.0 && std::abs(z.imag()) <= kHalfPi; }

Region classify_region(Complex z) {
    const double y = z.imag();
    if (std::isnan(y) || std::isnan(z.real())) return Region::OutsideS;
    if (std::abs(y - kPi) <= kLineTol) return Region::OnLplus;
    if (std::abs(y + kPi) <= kLineTol) return Region::OnLminus;
    if (std::abs(y) > kPi) return Region::OutsideS;
    if (std::abs(y) <= kLineTol) return Region::OnR;
    if (in_V(z)) return Region::V;
    Complex fz;
    try {
        fz = evaluate_f(z);
    } catch (const OverflowError&) {
        return Region::ExitsS;
    }
    if (std::abs(fz.imag()) > kPi + kLineTol) return Region::ExitsS;
    const bool upper = y > 0;
    const bool image_upper = fz.imag() > 0;
    if (upper) return image_upper ? Region::Omega00 : Region::Omega01;
    return image_upper ? Region::Omega10 : Region::Omega11;
}

Complex semiconjugacy_project(Complex z) {
    if (!is_finite(z) || !in_strip_interior(z)) {
        throw DomainError("semiconjugacy_project: z must lie in the open strip |Im z| < pi");
    }
    const double e = std::exp(-z.real());
    return {e * std::cos(z.imag()), -e * std::sin(z.imag())};
}

Complex semiconjugacy_lift(Complex w) {
    if (!is_finite(w) || (w.imag() == 0.0 && w.real() <= 0.0)) {
        throw DomainError("semiconjugacy_lift: w must avoid the closed negative real axis");
    }
    return -std::log(w);
}

Complex evaluate_h(Complex w) { return w * std::exp(-w); }

namespace {

// True when the open segment (a, b) meets the interior of the closed rectangle
// {Re >= -1, |Im| <= pi/2}. For a convex set it is enough to test the midpoint
// of the clipped piece.
bool segment_enters_V(Complex a, Complex b) {
    const double dx = b.real() - a.real();
    const double dy = b.imag() - a.imag();
    double t0 = 0.0;
    double t1 = 1.0;
    const std::array<double, 3> p{-dx, dy, -dy};
    const std::array<double, 3> q{a.real() + 1.0, kHalfPi - a.imag(), a.imag() + kHalfPi};
    for (int k = 0; k < 3; ++k) {
        if (p[k] == 0.0) {
            if (q[k] < 0.0) return false;
            continue;
        }
        const double r = q[k] / p[k];
        if (p[k] < 0.0) t0 = std::max(t0, r);
        else t1 = std::min(t1, r);
        if (t0 > t1) return false;
    }
    const double tm = 0.5 * (t0 + t1);
    const Complex m{a.real() + tm * dx, a.imag() + tm * dy};
    constexpr double eps = 1e-12;
    return m.real() > -1.0 + eps && std::abs(m.imag()) < kHalfPi - eps;
}

void check_rho_domain(Complex z) {
    if (!is_finite(z) || std::abs(z.imag()) > kPi + kLineTol || in_V_closure(z)) {
        throw DomainError("rho_distance: points must lie in S minus the closure of V");
    }
}

}  // namespace

double rho_distance(Complex z, Complex w) {
    check_rho_domain(z);
    check_rho_domain(w);
    const std::array<Complex, 4> node{z, w, Complex{-1.0, kHalfPi}, Complex{-1.0, -kHalfPi}};
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::array<std::array<double, 4>, 4> d{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) d[i][j] = 0.0;
            else d[i][j] = segment_enters_V(node[i], node[j]) ? inf : std::abs(node[i] - node[j]);
        }
    }
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d[0][1];
}

double expansion_lower_bound(double k) {
    if (k <= -1.0) return std::exp(-k) - 1.0;
    return std::min(std::numbers::e - 1.0, std::sqrt(1.0 + std::exp(-2.0 * k)));
}

}  // namespace baker
