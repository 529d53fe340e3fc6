#include <algorithm>
#include <cmath>
#include <string>

#include "bakerrays/errors.hpp"
#include "bakerrays/rays.hpp"
#include "bakerrays/symbolic.hpp"

namespace baker {

SymbolSequence build_oscillating_sequence(std::span<const double> radii, double t_probe,
                                          const OscillatingOptions& opt) {
    if (!(opt.eps > 0.0) || !(opt.scan_step > 0.0) || !(opt.scan_span >= 0.0))
        throw PreconditionError("build_oscillating_sequence: bad scan options");
    for (std::size_t j = 1; j < radii.size(); ++j)
        if (!(radii[j] > radii[j - 1]))
            throw PreconditionError("build_oscillating_sequence: radii must be strictly increasing");
    if (radii.empty()) return SymbolSequence::constant(Word{1}, 0);

    RayOptions ray_opt;
    ray_opt.tol = opt.tol;
    ray_opt.constant_tail_shortcut = true;

    Word prefix{1};  // 1 0^{n_1} 1 ... 1 0^{n_{j-1}} 1
    std::vector<std::uint64_t> blocks;
    double t_prev = t_probe;
    for (double r : radii) {
        const SymbolSequence stage = SymbolSequence::constant(prefix, 0);
        // The final ray stays within eps of the stage ray at t_j, so aim for r + eps.
        const double target = r + opt.eps;
        const double t_start = std::max(t_probe, t_prev);
        const auto steps = static_cast<long>(std::floor(opt.scan_span / opt.scan_step));
        bool found = false;
        double t_j = t_start;
        for (long k = 0; k <= steps && !found; ++k) {
            t_j = t_start + static_cast<double>(k) * opt.scan_step;
            try {
                if (std::abs(ray_point(stage, t_j, ray_opt).z) > target) found = true;
            } catch (const NoConvergence&) {
                break;  // deeper pullbacks than the budget allows; further t only gets worse
            } catch (const DomainError&) {
                break;
            }
        }
        if (!found)
            throw ScanExhausted("build_oscillating_sequence: stage ray " + stage.to_string() +
                                " never exceeds modulus " + std::to_string(target) + " on [" +
                                std::to_string(t_start) + ", " + std::to_string(t_start + opt.scan_span) + "]");
        const std::uint64_t n = continuity_depth(stage, t_j, opt.eps);
        blocks.push_back(n);
        prefix.insert(prefix.end(), n, 0);
        prefix.push_back(1);
        t_prev = t_j;
    }
    return SymbolSequence::scheduled(Word{}, Schedule{blocks, Schedule::Growth::Arithmetic, opt.growth});
}

}  // namespace baker
