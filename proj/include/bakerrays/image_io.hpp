#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "bakerrays/render.hpp"

namespace baker {

using Rgb = std::array<std::uint8_t, 3>;

struct Palette {
    Rgb undecided{220, 30, 30};
    Rgb enters_v_fast{245, 222, 179};  // step 0
    Rgb enters_v_slow{0, 0, 0};        // reached at `ramp` steps and beyond
    Rgb exits{255, 255, 255};
    int ramp = 64;

    Rgb color(const RegionOutcome& c) const;
};

// Row-major RGB, top row first.
std::vector<std::uint8_t> rasterize(const ClassifiedGrid& grid, const Palette& pal);

// Format chosen by extension: .ppm (binary P6) or .png.
void write_image(const ClassifiedGrid& grid, const Palette& pal, const std::filesystem::path& path);
std::vector<std::uint8_t> encode_ppm(int width, int height, const std::vector<std::uint8_t>& rgb);

}  // namespace baker
