#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "bakerrays/image_io.hpp"
#include "bakerrays/render.hpp"

namespace baker {

struct RunConfig {
    // solver tolerances
    double branch_tol = 1e-12;
    double ray_tol = 1e-10;
    double landing_tol = 1e-12;
    double periodic_tol = 1e-12;
    // budgets
    std::uint64_t pullback_budget = std::uint64_t{1} << 22;
    int landing_max_depth = 4000;
    int periodic_budget = 20000;
    int max_iter = 200;
    int max_split = 5;
    unsigned workers = 1;
    // raster
    BBox bbox;
    int width = 400;
    int height = 200;
    // curves
    int curve_depth = 4;
    double curve_t_min = -20.0;
    double curve_t_max = 60.0;
    double curve_max_gap = 0.02;
    std::string output_dir = ".";
    Palette palette;
};

inline constexpr const char* kConfigEnv = "BAKER_RAYS_CONFIG";

// Applies `key = value` lines on top of cfg. Blank lines and text after '#' are ignored.
// Unknown keys and malformed values throw PreconditionError naming the line.
void apply_config_text(std::string_view text, RunConfig& cfg);
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});
// Throws PreconditionError when a tolerance is not positive or a budget is below 1.
void validate(const RunConfig& cfg);

}  // namespace baker
