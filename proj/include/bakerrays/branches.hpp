#pragma once

#include <span>

#include "bakerrays/core_map.hpp"
#include "bakerrays/word.hpp"

namespace baker {

enum class SolveMethod { LogFixedPoint, Newton };

struct BranchSolveReport {
    Complex z;
    double residual = 0.0;  // |f(z) - w|
    int iterations = 0;
    SolveMethod method = SolveMethod::LogFixedPoint;
};

inline constexpr double kBranchTol = 1e-12;
inline constexpr int kBranchBudget = 200;

// phi_0 maps S \ [1, inf) into the closed upper half-strip, phi_1 into the lower one.
// Convergence is accepted when |f(z) - w| <= tol * max(1, |w|).
BranchSolveReport inverse_branch(Symbol i, Complex w, double tol = kBranchTol,
                                 int budget = kBranchBudget);

inline Complex phi(Symbol i, Complex w) { return inverse_branch(i, w).z; }

// phi_{s_0} o ... o phi_{s_{n-1}} (z), applied right to left.
Complex compose_pullback(std::span<const Symbol> word, Complex z, double tol = kBranchTol);

}  // namespace baker
