#pragma once

#include <optional>
#include <vector>

#include "bakerrays/core_map.hpp"
#include "bakerrays/symbolic.hpp"

namespace baker {

// Angle of e^{i theta}, reduced to [0, 2 pi).
struct CircleAngle {
    double theta = 0.0;
    static CircleAngle reduced(double theta);
    Complex point() const { return std::polar(1.0, theta); }
};

// One sequence, or two when g^{n0}(e^{i theta}) = 1 (preimage_step = n0).
struct CircleItinerary {
    std::vector<Word> branches;
    std::optional<int> preimage_step;
};

inline constexpr double kCircleOneTol = 1e-12;

// g(z) = (3z^2 + 1) / (3 + z^2)
Complex g_eval(Complex z);
// 16 / |3 e^{2 i theta} + 1|^2
double g_deriv_modulus_on_circle(double theta);

CircleItinerary circle_itinerary(CircleAngle theta, int depth);

struct ArcEstimate {
    CircleAngle angle;
    double arc_length = 0.0;
    bool slow = false;  // final arc wider than 1e-8
    bool exact = false; // eventually constant input, solved as an eventual preimage of 1
};

inline constexpr double kSlowArc = 1e-8;

ArcEstimate angle_from_itinerary(const SymbolSequence& s, int depth);

// The two preimages of e^{i psi} on the circle; index 0 lands in the upper arc.
double circle_preimage(double psi, Symbol half);

// g^{-n}(1) for n <= depth, deduplicated and sorted by angle.
std::vector<CircleAngle> eventual_preimages_of_one(int depth);

}  // namespace baker
