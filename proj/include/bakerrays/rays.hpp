#pragma once

#include <cstdint>
#include <vector>

#include "bakerrays/core_map.hpp"
#include "bakerrays/errors.hpp"
#include "bakerrays/symbolic.hpp"

namespace baker {

// D_n: [right_edge - pi, right_edge] x [0, pi] for half 0, x [-pi, 0] for half 1.
struct SquareSpec {
    double right_edge;
    Symbol half;
};

struct RayPoint {
    double t = 0.0;
    Complex z;
    std::uint64_t depth = 0;  // number of inverse branches applied
    double err_radius = 0.0;
};

struct RayOptions {
    double tol = 1e-10;
    std::uint64_t pullback_budget = std::uint64_t{1} << 22;
    // For eventually constant sequences use gamma_{c~}(u) = u +- i pi directly
    // instead of the nested-square construction for the constant part.
    bool constant_tail_shortcut = false;
    std::uint64_t extra_depth = 0;  // pull back this many levels more than needed
};

// Minimal n with F^n(t) <= -2. Throws NoConvergence when n would exceed budget.
std::uint64_t escape_depth(double t, std::uint64_t budget);

RayPoint tail_point(const SymbolSequence& s, double t, double tol = 1e-12);
RayPoint ray_point(const SymbolSequence& s, double t, const RayOptions& opt = {});

class TraceCollapse : public StepCollapse {
public:
    TraceCollapse(const std::string& what, std::vector<RayPoint> partial)
        : StepCollapse(what), partial(std::move(partial)) {}
    std::vector<RayPoint> partial;
};

inline constexpr std::size_t kMaxTraceSamples = std::size_t{1} << 20;

// Samples sorted by t with consecutive points at most max_step apart.
std::vector<RayPoint> trace_ray(const SymbolSequence& s, double t_min, double t_max, double max_step,
                                const RayOptions& opt = {}, unsigned workers = 1);

std::uint64_t continuity_depth(const SymbolSequence& s, double t0, double eps,
                               std::uint64_t budget = std::uint64_t{1} << 32);

struct NestingReport {
    bool pass = true;
    double worst_margin = 0.0;   // signed distance of pulled-back samples into D_n
    int worst_level = -1;
    Complex worst_point;
    int exact_levels = 0;        // levels checked with the branch solver
    int asymptotic_levels = 0;   // levels too far left for doubles, see below
};

inline constexpr double kNestingTol = 1e-9;

// Pulls >= samples boundary points of D_{n+1} back by phi_{s_n} and measures how far
// inside D_n they land, for n = 0..n_max. Once F^{n+1}(t) is beyond double range the
// branch is replaced by its first-order expansion
//   phi_s(t_{n+1} + a + ib) = t_n + i s' pi + (a + i(b - s' pi)) e^{t_n},  s' = +-1,
// evaluated relative to the corner of D_n.
NestingReport verify_square_nesting(const SymbolSequence& s, double t, int n_max, int samples = 200);

}  // namespace baker
