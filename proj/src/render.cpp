#include "bakerrays/render.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "bakerrays/branches.hpp"
#include "bakerrays/errors.hpp"

namespace baker {

namespace {

// Double neighbours that bracket the true constants: kPi < pi < kPiAbove and
// kHalfPi < pi/2, so comparisons against them stay on the safe side.
const double kPiAbove = std::nextafter(kPi, 4.0);
constexpr double kRel = 4.0 * std::numeric_limits<double>::epsilon();
constexpr double kAbs = 1e-300;
// exp(-x) overflows a little past x = -709.
constexpr double kExpFloor = -700.0;
constexpr double kMaxBoxSide = 1.0;

struct Interval {
    double lo, hi;
};

double down(double v) { return v - (kRel * std::fabs(v) + kAbs); }
double up(double v) { return v + (kRel * std::fabs(v) + kAbs); }

Interval widen(Interval a) { return {down(a.lo), up(a.hi)}; }

Interval mul(Interval a, Interval b) {
    const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return widen({*std::min_element(p, p + 4), *std::max_element(p, p + 4)});
}

// cos and sin written through |y| so that mirrored inputs give bitwise mirrored output.
double cos_sym(double y) { return std::cos(std::fabs(y)); }
double sin_sym(double y) { return std::copysign(std::sin(std::fabs(y)), y); }

// Ranges for [a, b] inside [-pi, pi].
Interval cos_range(double a, double b) {
    const double ca = cos_sym(a), cb = cos_sym(b);
    Interval r{std::min(ca, cb), (a <= 0.0 && 0.0 <= b) ? 1.0 : std::max(ca, cb)};
    r = widen(r);
    return {std::max(r.lo, -1.0), std::min(r.hi, 1.0)};
}

Interval sin_range(double a, double b) {
    const double sa = sin_sym(a), sb = sin_sym(b);
    Interval r{(a <= -kHalfPi && -kHalfPi <= b) ? -1.0 : std::min(sa, sb),
               (a <= kHalfPi && kHalfPi <= b) ? 1.0 : std::max(sa, sb)};
    // sin is flat near the extrema, so a hair's miss of +-pi/2 only costs O(eps^2).
    r = widen(r);
    return {std::max(r.lo, -1.0), std::min(r.hi, 1.0)};
}

struct Box {
    double x_lo, x_hi, y_lo, y_hi;
};

// Enclosure of f(box) for a box inside the closed strip with x_lo > kExpFloor.
Box image(const Box& b) {
    const Interval e = widen({std::exp(-b.x_hi), std::exp(-b.x_lo)});
    const Interval p = mul(e, cos_range(b.y_lo, b.y_hi));
    const Interval q = mul(e, sin_range(b.y_lo, b.y_hi));
    return {down(b.x_lo + p.lo), up(b.x_hi + p.hi), down(b.y_lo - q.hi), up(b.y_hi - q.lo)};
}

using Tag = RegionOutcome::Tag;

RegionOutcome run_box(const Box& start, int max_iter, int level, int max_split) {
    Box b = start;
    bool split = false;
    for (int step = 0;; ++step) {
        if (b.y_lo > kPiAbove || b.y_hi < -kPiAbove) return {Tag::ExitsS, step};
        if (b.x_lo > -1.0 && b.y_lo > -kHalfPi && b.y_hi < kHalfPi) return {Tag::EntersV, step};
        if (b.y_lo < -kPi || b.y_hi > kPi) {
            split = true;
            break;
        }
        if (step >= max_iter) return {Tag::Undecided, -1};
        if (b.x_lo < kExpFloor || b.x_hi - b.x_lo > kMaxBoxSide || b.y_hi - b.y_lo > kMaxBoxSide) {
            split = true;
            break;
        }
        b = image(b);
        if (!std::isfinite(b.x_lo) || !std::isfinite(b.x_hi)) {
            split = true;
            break;
        }
    }
    if (!split || level >= max_split) return {Tag::Undecided, -1};

    const double xm = 0.5 * (start.x_lo + start.x_hi);
    const double ym = 0.5 * (start.y_lo + start.y_hi);
    const Box parts[4] = {{start.x_lo, xm, ym, start.y_hi},
                          {xm, start.x_hi, ym, start.y_hi},
                          {start.x_lo, xm, start.y_lo, ym},
                          {xm, start.x_hi, start.y_lo, ym}};
    RegionOutcome first{};
    for (int k = 0; k < 4; ++k) {
        const RegionOutcome r = run_box(parts[k], max_iter, level + 1, max_split);
        // Mixed outcomes mean the box meets the boundary of the Baker domain.
        if (r.tag == Tag::Undecided) return {Tag::Undecided, -1};
        if (k == 0) {
            first = r;
        } else if (r.tag != first.tag) {
            return {Tag::Undecided, -1};
        } else {
            first.step = std::max(first.step, r.step);
        }
    }
    return first;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

double ClassifiedGrid::col_edge(int i) const {
    const double mid = 0.5 * (bbox.re_min + bbox.re_max);
    const double w = bbox.re_max - bbox.re_min;
    return mid + (w * (2.0 * i - width)) / (2.0 * width);
}

double ClassifiedGrid::row_edge(int j) const {
    const double mid = 0.5 * (bbox.im_min + bbox.im_max);
    const double h = bbox.im_max - bbox.im_min;
    return mid + (h * (height - 2.0 * j)) / (2.0 * height);
}

std::pair<int, int> ClassifiedGrid::pixel_of(Complex z) const {
    const double x = z.real(), y = z.imag();
    if (!(x >= bbox.re_min && x <= bbox.re_max && y >= bbox.im_min && y <= bbox.im_max)) return {-1, -1};
    int c = static_cast<int>(std::floor((x - bbox.re_min) / (bbox.re_max - bbox.re_min) * width));
    int r = static_cast<int>(std::floor((bbox.im_max - y) / (bbox.im_max - bbox.im_min) * height));
    return {std::clamp(c, 0, width - 1), std::clamp(r, 0, height - 1)};
}

RegionOutcome classify_cell(double x_lo, double x_hi, double y_lo, double y_hi, int max_iter, int max_split) {
    return run_box({x_lo, x_hi, y_lo, y_hi}, max_iter, 0, max_split);
}

ClassifiedGrid classify_grid(const BBox& box, int width, int height, int max_iter, const GridOptions& opt) {
    if (max_iter < 1) throw PreconditionError("classify_grid: max_iter must be >= 1");
    if (width < 1 || height < 1) throw PreconditionError("classify_grid: empty raster");
    if (!(box.re_max > box.re_min) || !(box.im_max > box.im_min))
        throw PreconditionError("classify_grid: degenerate bounding box");

    ClassifiedGrid g;
    g.bbox = box;
    g.width = width;
    g.height = height;
    g.max_iter = max_iter;
    g.cells.assign(static_cast<std::size_t>(width) * height, {});

    std::atomic<int> next_row{0};
    auto worker = [&] {
        for (int j = next_row++; j < height; j = next_row++) {
            // Row j spans [row_edge(j+1), row_edge(j)], padded on both sides.
            const double y_hi = g.row_edge(j) + kCellPad;
            const double y_lo = g.row_edge(j + 1) - kCellPad;
            for (int i = 0; i < width; ++i) {
                g.cells[static_cast<std::size_t>(j) * width + i] =
                    classify_cell(g.col_edge(i) - kCellPad, g.col_edge(i + 1) + kCellPad, y_lo, y_hi,
                                  max_iter, opt.max_split);
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(height)));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    }
    return g;
}

namespace {

Polyline trace_curve(const Word& word, int line, const CurveOptions& opt) {
    const double im = line > 0 ? kPi : -kPi;
    auto vertex = [&](double t) -> Complex {
        try {
            return compose_pullback(word, Complex(t, im));
        } catch (const Error&) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            return {nan, nan};
        }
    };
    const int n0 = std::max(2, opt.initial_samples);
    std::vector<double> ts(n0);
    std::vector<Complex> zs(n0);
    for (int k = 0; k < n0; ++k) {
        ts[k] = opt.t_min + (opt.t_max - opt.t_min) * k / (n0 - 1);
        zs[k] = vertex(ts[k]);
    }
    for (bool refined = true; refined && ts.size() < opt.max_vertices;) {
        refined = false;
        std::vector<double> nt;
        std::vector<Complex> nz;
        nt.reserve(ts.size() * 2);
        nz.reserve(ts.size() * 2);
        for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
            nt.push_back(ts[k]);
            nz.push_back(zs[k]);
            const bool ok = is_finite(zs[k]) && is_finite(zs[k + 1]);
            if (ok && std::abs(zs[k + 1] - zs[k]) > opt.max_gap && ts[k + 1] - ts[k] > 1e-9 &&
                nt.size() + (ts.size() - k) < opt.max_vertices) {
                const double tm = 0.5 * (ts[k] + ts[k + 1]);
                nt.push_back(tm);
                nz.push_back(vertex(tm));
                refined = true;
            }
        }
        nt.push_back(ts.back());
        nz.push_back(zs.back());
        ts.swap(nt);
        zs.swap(nz);
    }
    return {word, line, std::move(zs)};
}

}  // namespace

std::vector<Polyline> preimage_curves(int max_depth, const CurveOptions& opt) {
    if (max_depth < 0 || max_depth > 16) throw PreconditionError("preimage_curves: depth must be in [0, 16]");
    std::vector<std::pair<Word, int>> jobs;
    for (int n = 0; n <= max_depth; ++n) {
        for (std::uint32_t code = 0; code < (1u << n); ++code) {
            Word w(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) w[k] = static_cast<Symbol>((code >> (n - 1 - k)) & 1u);
            jobs.emplace_back(w, +1);
            jobs.emplace_back(std::move(w), -1);
        }
    }
    std::vector<Polyline> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) out[k] = trace_curve(jobs[k].first, jobs[k].second, opt);
    };
    const unsigned n = std::max(1u, opt.workers);
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    }
    return out;
}

void write_polylines_csv(const std::vector<Polyline>& curves, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << "curve_id,vertex_index,re,im\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& v = curves[c].vertices;
        for (std::size_t k = 0; k < v.size(); ++k)
            os << c << ',' << k << ',' << fmt(v[k].real()) << ',' << fmt(v[k].imag()) << '\n';
    }
    os.flush();
    if (!os) throw IoError("write failed for " + path.string());
}

}  // namespace baker
