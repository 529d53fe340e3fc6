#include "bakerrays/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include "bakerrays/errors.hpp"

namespace baker {

Rgb Palette::color(const RegionOutcome& c) const {
    switch (c.tag) {
        case RegionOutcome::Tag::Undecided: return undecided;
        case RegionOutcome::Tag::ExitsS: return exits;
        case RegionOutcome::Tag::EntersV: break;
    }
    const int r = std::max(1, ramp);
    const int s = std::clamp(c.step, 0, r);
    Rgb out{};
    for (int k = 0; k < 3; ++k) {
        // Integer blend so the bytes do not depend on floating point rounding.
        const int a = enters_v_fast[k], b = enters_v_slow[k];
        out[k] = static_cast<std::uint8_t>(a + ((b - a) * s) / r);
    }
    return out;
}

std::vector<std::uint8_t> rasterize(const ClassifiedGrid& grid, const Palette& pal) {
    std::vector<std::uint8_t> rgb;
    rgb.reserve(grid.cells.size() * 3);
    for (const auto& c : grid.cells) {
        const Rgb p = pal.color(c);
        rgb.insert(rgb.end(), p.begin(), p.end());
    }
    return rgb;
}

std::vector<std::uint8_t> encode_ppm(int width, int height, const std::vector<std::uint8_t>& rgb) {
    const std::string header = "P6\n" + std::to_string(width) + ' ' + std::to_string(height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), rgb.begin(), rgb.end());
    return out;
}

namespace {

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw IoError("write failed for " + path.string());
}

void write_png(const std::filesystem::path& path, int width, int height, const std::vector<std::uint8_t>& rgb) {
    FILE* fp = std::fopen(path.string().c_str(), "wb");
    if (!fp) throw IoError("cannot open " + path.string() + " for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw IoError("libpng initialisation failed for " + path.string());
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw IoError("libpng failed while writing " + path.string());
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int j = 0; j < height; ++j)
        png_write_row(png, rgb.data() + static_cast<std::size_t>(j) * width * 3);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    if (std::fclose(fp) != 0) throw IoError("close failed for " + path.string());
}

}  // namespace

void write_image(const ClassifiedGrid& grid, const Palette& pal, const std::filesystem::path& path) {
    const auto rgb = rasterize(grid, pal);
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".png") {
        write_png(path, grid.width, grid.height, rgb);
    } else if (ext == ".ppm") {
        write_bytes(path, encode_ppm(grid.width, grid.height, rgb));
    } else {
        throw IoError("unsupported image extension for " + path.string() + " (use .ppm or .png)");
    }
}

}  // namespace baker
