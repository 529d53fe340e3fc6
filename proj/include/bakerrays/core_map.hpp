#pragma once

#include <complex>
#include <numbers>
#include <string_view>

namespace baker {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
// Distance to Im = +-pi below which a point counts as lying on L+ / L-.
// sin(pi) in double is about 1.2e-16, so exact invariance cannot be relied on.
inline constexpr double kLineTol = 1e-12;

// Checked constructor: rejects NaN and infinite components.
Complex make_point(double re, double im);
bool is_finite(Complex z);

Complex evaluate_f(Complex z);
Complex derivative_f(Complex z);
// |f'(x+iy)| = sqrt(1 + e^{-2x} - 2 e^{-x} cos y)
double derivative_modulus(Complex z);
// e^{-x} - 2 cos y > 0, equivalent to |f'| > 1.
bool expansion_criterion(Complex z);

double model_F(double t);
double model_F_inverse(double t);

enum class Region {
    V,
    Omega00,
    Omega01,
    Omega10,
    Omega11,
    OnR,
    OnLplus,
    OnLminus,
    ExitsS,
    OutsideS,
};

std::string_view to_string(Region r);
Region classify_region(Complex z);

bool in_strip(Complex z);           // |Im z| <= pi
bool in_strip_interior(Complex z);  // |Im z| < pi
bool in_V(Complex z);               // Re z > -1, |Im z| < pi/2
bool in_V_closure(Complex z);

// E(z) = e^{-z}, h(w) = w e^{-w}, E(f(z)) = h(E(z)).
Complex semiconjugacy_project(Complex z);
Complex semiconjugacy_lift(Complex w);
Complex evaluate_h(Complex w);

double rho_distance(Complex z, Complex w);
double expansion_lower_bound(double k);

}  // namespace baker
