#pragma once

#include <cstdint>
#include <vector>

#include "bakerrays/core_map.hpp"
#include "bakerrays/symbolic.hpp"

namespace baker {

struct LandingResult {
    Complex z;
    double residual = 0.0;           // last Cauchy increment of the pullback iteration
    std::uint64_t depth_used = 0;
    double orbit_bound = 0.0;        // max |Re| over the orbit
    double orbit_max_re = 0.0;       // max Re over the orbit, compared with R = F^{-N}(0)
    std::vector<Complex> orbit;      // w_{sigma^k s} for the distinct shifts of s
};

struct PeriodicPoint {
    Complex z;
    int period = 0;
    Word word;
    Complex multiplier;              // (f^p)'(z)
    double residual = 0.0;           // |f^p(z) - z|
    std::vector<Complex> cycle;      // z, f(z), ..., f^{p-1}(z), each refined separately
};

// Pullback seed -3 + i pi/2 (conjugated when s_0 = 1). Only bounded sequences land.
LandingResult landing_point(const SymbolSequence& s, double tol = 1e-12, std::uint64_t max_depth = 4000);

PeriodicPoint periodic_point(const Word& word, double tol = 1e-12, int budget = 20000);

// Walks `steps` forward steps along the refined cycle, checking each point is in S and
// that f carries it onto the next cycle point within shadow_tol.
bool cycle_stays_in_strip(const PeriodicPoint& p, int steps, double shadow_tol = 1e-8);

// R = F^{-N}(0) for the longest run N of a bounded sequence.
double orbit_radius_bound(const SymbolSequence& s);
double orbit_radius_bound_for_run(std::uint64_t n);

struct DiagnosticOptions {
    double t_min = -5.0;
    std::uint64_t exact_budget = 4096;    // pullback depth above which rays are truncated
    std::uint64_t truncated_depth = 512;
    double window_fraction = 0.1;
};

struct LandingDiagnostic {
    double max_modulus = 0.0;
    double last_window_diameter = 0.0;
    Complex window_center;
    int samples = 0;
    int truncated_samples = 0;
    // Largest disagreement between pullbacks of different seeds at truncated samples.
    double max_seed_spread = 0.0;
};

// Samples the ray on a uniform grid of [t_min, t_max]. Where the exact pullback depth
// exceeds the budget the ray point is replaced by Phi_{s|m}(seed) for a fixed depth m,
// and the spread over several seeds is reported. Evidence only.
LandingDiagnostic landing_diagnostic(const SymbolSequence& s, double t_max, int samples,
                                     const DiagnosticOptions& opt = {});

}  // namespace baker
