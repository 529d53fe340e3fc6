#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "bakerrays/core_map.hpp"
#include "bakerrays/word.hpp"

namespace baker {

struct BBox {
    double re_min = -8.0, re_max = 6.0;
    double im_min = -kPi, im_max = kPi;
};

struct RegionOutcome {
    enum class Tag : std::uint8_t { EntersV, ExitsS, Undecided };
    Tag tag = Tag::Undecided;
    std::int32_t step = -1;
    bool operator==(const RegionOutcome&) const = default;
};

// Row 0 is the top row (largest Im).
struct ClassifiedGrid {
    BBox bbox;
    int width = 0, height = 0;
    int max_iter = 0;
    std::vector<RegionOutcome> cells;

    const RegionOutcome& at(int col, int row) const { return cells[static_cast<std::size_t>(row) * width + col]; }
    // Pixel containing z, or {-1, -1} outside the box.
    std::pair<int, int> pixel_of(Complex z) const;
    double col_edge(int i) const;
    double row_edge(int j) const;
};

// Each pixel is treated as a closed rectangle (grown by kCellPad) and pushed forward
// with interval arithmetic. EntersV / ExitsS are only reported when every point of the
// pixel does so; boxes that straddle |Im| = pi are split, up to max_split levels.
struct GridOptions {
    int max_split = 5;
    unsigned workers = 1;
};

inline constexpr double kCellPad = 1e-9;

ClassifiedGrid classify_grid(const BBox& box, int width, int height, int max_iter,
                             const GridOptions& opt = {});

// Outcome for a single closed rectangle.
RegionOutcome classify_cell(double x_lo, double x_hi, double y_lo, double y_hi, int max_iter,
                            int max_split = 5);

struct Polyline {
    Word word;
    int line = +1;                  // +1 for L+, -1 for L-
    std::vector<Complex> vertices;  // NaN vertex marks a gap (branch cut hit)
};

struct CurveOptions {
    double t_min = -20.0;
    double t_max = 60.0;
    int initial_samples = 256;
    double max_gap = 0.02;
    std::size_t max_vertices = std::size_t{1} << 16;
    unsigned workers = 1;
};

// Phi_w(L+) and Phi_w(L-) for every word of length <= max_depth, shortest words first,
// words in lexicographic order, L+ before L-.
std::vector<Polyline> preimage_curves(int max_depth, const CurveOptions& opt = {});

void write_polylines_csv(const std::vector<Polyline>& curves, const std::filesystem::path& path);

}  // namespace baker
