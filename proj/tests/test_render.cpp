#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bakerrays/image_io.hpp"
#include "bakerrays/render.hpp"

using namespace baker;
using Tag = RegionOutcome::Tag;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

std::filesystem::path scratch(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / "bakerrays_unit";
    std::filesystem::create_directories(dir);
    return dir / name;
}

const RegionOutcome& cell_at(const ClassifiedGrid& g, Complex z) {
    const auto [c, r] = g.pixel_of(z);
    REQUIRE(c >= 0);
    return g.at(c, r);
}

}  // namespace

TEST_CASE("pixel examples") {
    const BBox box;
    for (int budget : {10, 100}) {
        const auto g = classify_grid(box, 400, 200, budget);
        CHECK(cell_at(g, {0, 0}) == RegionOutcome{Tag::EntersV, 0});
        CHECK(cell_at(g, {-3, 0.3}) == RegionOutcome{Tag::ExitsS, 1});
        CHECK(cell_at(g, {0, kPi}).tag == Tag::Undecided);
        CHECK(cell_at(g, {-5, -kPi}).tag == Tag::Undecided);
    }
    CHECK(classify_cell(-0.1, 0.1, 5.0, 5.2, 10) == RegionOutcome{Tag::ExitsS, 0});
    CHECK_THROWS(classify_grid(box, 10, 10, 0));
}

TEST_CASE("monotone in the budget, mirror symmetric, worker independent") {
    const BBox box;
    const auto a = classify_grid(box, 120, 60, 20);
    const auto b = classify_grid(box, 120, 60, 80);
    const auto c = classify_grid(box, 120, 60, 80, {5, 4});
    CHECK(b.cells == c.cells);
    int ua = 0, ub = 0;
    for (int j = 0; j < a.height; ++j)
        for (int i = 0; i < a.width; ++i) {
            if (a.at(i, j).tag == Tag::Undecided) ++ua;
            else CHECK(a.at(i, j) == b.at(i, j));
            if (b.at(i, j).tag == Tag::Undecided) ++ub;
            CHECK(b.at(i, j) == b.at(i, b.height - 1 - j));
        }
    CHECK(ub <= ua);
}

TEST_CASE("preimage curves") {
    const auto d0 = preimage_curves(0);
    REQUIRE(d0.size() == 2);
    for (const auto& v : d0[0].vertices) CHECK(v.imag() == kPi);
    for (const auto& v : d0[1].vertices) CHECK(v.imag() == -kPi);

    const auto d3 = preimage_curves(3);
    CHECK(d3.size() == 2 * (1 + 2 + 4 + 8));
    for (const auto& c : d3) {
        const auto& v = c.vertices;
        for (std::size_t k = 0; k < v.size(); ++k) {
            REQUIRE(is_finite(v[k]));
            if (k + 1 < v.size()) CHECK(std::abs(v[k + 1] - v[k]) <= 0.02 + 1e-12);
            Complex z = v[k];
            for (std::size_t j = 0; j < c.word.size(); ++j) z = evaluate_f(z);
            CHECK(std::abs(z.imag() - c.line * kPi) <= 1e-8);
        }
    }

    // phi_0(L-) bends towards L+ on one end and towards R on the other.
    CurveOptions wide;
    wide.t_min = -1e6;
    wide.t_max = 1e6;
    wide.max_vertices = 4096;
    const auto d1 = preimage_curves(1, wide);
    const auto& bent = d1[3];  // word "0", L-
    REQUIRE(bent.word == Word{0});
    REQUIRE(bent.line == -1);
    CHECK(kPi - bent.vertices.front().imag() < 1e-5);
    CHECK(bent.vertices.back().imag() < 1e-5);
    CHECK(bent.vertices.back().imag() > 0);
    CHECK(bent.vertices.front().real() < -13);
    CHECK(bent.vertices.back().real() < -13);
}

TEST_CASE("curve vertices sit on undecided pixels") {
    const BBox box;
    const auto g = classify_grid(box, 200, 100, 100);
    const auto curves = preimage_curves(4);
    int inside = 0;
    for (const auto& c : curves)
        for (const auto& v : c.vertices) {
            const auto [col, row] = g.pixel_of(v);
            if (col < 0) continue;
            ++inside;
            CHECK(g.at(col, row).tag == Tag::Undecided);
        }
    CHECK(inside > 1000);
}

TEST_CASE("PPM and PNG output") {
    ClassifiedGrid g;
    g.width = g.height = 1;
    g.cells = {RegionOutcome{Tag::EntersV, 0}};
    const Palette pal;
    const auto p = scratch("one.ppm");
    write_image(g, pal, p);
    const std::string bytes = slurp(p);
    // "P6\n1 1\n255\n" is 11 bytes, then one RGB triple
    REQUIRE(bytes.size() == 14);
    CHECK(bytes.substr(0, 11) == "P6\n1 1\n255\n");
    CHECK(static_cast<unsigned char>(bytes[11]) == pal.enters_v_fast[0]);

    CHECK(pal.color({Tag::Undecided, -1}) == Rgb{220, 30, 30});
    CHECK(pal.color({Tag::EntersV, 1000}) == pal.enters_v_slow);
    CHECK(pal.color({Tag::ExitsS, 3}) == Rgb{255, 255, 255});

    const auto grid = classify_grid(BBox{}, 64, 32, 30);
    const auto a = scratch("a.png"), b = scratch("b.png");
    write_image(grid, pal, a);
    write_image(grid, pal, b);
    const std::string pa = slurp(a);
    CHECK(pa.substr(1, 3) == "PNG");
    CHECK(pa == slurp(b));
    CHECK_THROWS(write_image(grid, pal, scratch("x.bmp")));
    CHECK_THROWS(write_image(grid, pal, "/nonexistent_dir/x.ppm"));
}

TEST_CASE("polyline CSV") {
    std::vector<Polyline> curves(2);
    curves[0].vertices = {{1.5, -2.0}, {0.1, 3.141592653589793}};
    curves[1].vertices = {{std::nan(""), std::nan("")}};
    const auto p = scratch("c.csv");
    write_polylines_csv(curves, p);
    CHECK(slurp(p) == "curve_id,vertex_index,re,im\n0,0,1.5,-2\n0,1,0.10000000000000001,3.1415926535897931\n1,0,nan,nan\n");
}
