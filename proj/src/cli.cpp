#include "bakerrays/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include "bakerrays/config.hpp"
#include "bakerrays/errors.hpp"
#include "bakerrays/image_io.hpp"
#include "bakerrays/inner_circle.hpp"
#include "bakerrays/landing.hpp"
#include "bakerrays/rays.hpp"
#include "bakerrays/render.hpp"
#include "bakerrays/symbolic.hpp"
#include "bakerrays/verify.hpp"

namespace baker {

namespace {

using json = nlohmann::ordered_json;

json cjson(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
void override(T& dst, const std::optional<T>& src) {
    if (src) dst = *src;
}

std::filesystem::path out_path(const RunConfig& cfg, const std::optional<std::string>& given, const char* fallback) {
    if (given) return *given;
    return std::filesystem::path(cfg.output_dir) / fallback;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynamic rays, landing points and boundary rendering for f(z) = z + exp(-z)", "baker-rays"};
    app.require_subcommand(1);
    std::optional<std::string> config_path;
    app.add_option("--config", config_path, "key = value configuration file (default: $BAKER_RAYS_CONFIG)");

    // render
    auto* render = app.add_subcommand("render", "classify a pixel grid and write a PPM or PNG image");
    std::optional<std::string> render_out;
    std::optional<int> r_width, r_height, r_iter, r_split;
    std::optional<unsigned> r_workers;
    std::vector<double> r_bbox;
    render->add_option("-o,--out", render_out, "output image (.ppm or .png)");
    render->add_option("--width", r_width)->check(CLI::PositiveNumber);
    render->add_option("--height", r_height)->check(CLI::PositiveNumber);
    render->add_option("--max-iter", r_iter)->check(CLI::PositiveNumber);
    render->add_option("--max-split", r_split)->check(CLI::NonNegativeNumber);
    render->add_option("--workers", r_workers);
    render->add_option("--bbox", r_bbox, "re_min re_max im_min im_max")->expected(4);

    // curves
    auto* curves = app.add_subcommand("curves", "pull back L+ and L- along every short word, write CSV");
    std::optional<std::string> curves_out;
    std::optional<int> c_depth;
    std::optional<double> c_tmin, c_tmax, c_gap;
    std::optional<unsigned> c_workers;
    curves->add_option("-o,--out", curves_out);
    curves->add_option("--depth", c_depth)->check(CLI::Range(0, 16));
    curves->add_option("--tmin", c_tmin);
    curves->add_option("--tmax", c_tmax);
    curves->add_option("--max-gap", c_gap);
    curves->add_option("--workers", c_workers);

    // ray
    auto* ray = app.add_subcommand("ray", "trace a dynamic ray and write CSV (t,re,im,depth,err_radius)");
    std::string ray_seq;
    double ray_tmin = -5.0, ray_tmax = 5.0, ray_step = 0.05;
    std::optional<std::string> ray_out;
    std::optional<double> ray_tol;
    std::optional<unsigned> ray_workers;
    bool ray_shortcut = false;
    ray->add_option("--seq", ray_seq, "sequence literal, e.g. \"0~\" or \"(01)*\"");
    ray->add_option("--tmin", ray_tmin);
    ray->add_option("--tmax", ray_tmax);
    ray->add_option("--max-step", ray_step)->check(CLI::PositiveNumber);
    ray->add_option("--tol", ray_tol)->check(CLI::PositiveNumber);
    ray->add_option("-o,--out", ray_out, "CSV path (default: stdout)");
    ray->add_option("--workers", ray_workers);
    ray->add_flag("--constant-tail-shortcut", ray_shortcut);

    // itinerary
    auto* itin = app.add_subcommand("itinerary", "itinerary of a strip point, or of a circle angle with --circle");
    double it_re = 0.0, it_im = 0.0, it_theta = 0.0;
    int it_depth = 16;
    bool it_circle = false;
    std::optional<std::string> it_seq;
    itin->add_option("--re", it_re);
    itin->add_option("--im", it_im);
    itin->add_option("--depth", it_depth)->check(CLI::PositiveNumber);
    itin->add_flag("--circle", it_circle);
    itin->add_option("--theta", it_theta, "angle for --circle");
    itin->add_option("--seq", it_seq, "with --circle: recover the angle of a sequence");

    // land
    auto* land = app.add_subcommand("land", "landing point of a bounded sequence (JSON)");
    std::string land_seq;
    std::optional<double> land_tol, land_diag;
    std::optional<int> land_depth, land_samples;
    land->add_option("--seq", land_seq);
    land->add_option("--tol", land_tol)->check(CLI::PositiveNumber);
    land->add_option("--max-depth", land_depth)->check(CLI::PositiveNumber);
    land->add_option("--diagnose", land_diag, "sample the ray up to this t instead");
    land->add_option("--samples", land_samples)->check(CLI::PositiveNumber);

    // periodic
    auto* periodic = app.add_subcommand("periodic", "periodic point of a word (JSON)");
    std::optional<std::string> per_word;
    std::optional<int> per_all;
    auto* per_word_opt = periodic->add_option("--word", per_word);
    auto* per_all_opt = periodic->add_option("--all-words", per_all, "every non-constant word of length 2..L")
                            ->check(CLI::Range(2, 16));
    per_word_opt->excludes(per_all_opt);
    periodic->require_option(1);

    // inner
    auto* inner = app.add_subcommand("inner", "inner function: eventual preimages of 1 or a g-orbit");
    std::optional<int> in_pre, in_steps;
    std::optional<double> in_theta;
    inner->add_option("--preimages", in_pre)->check(CLI::Range(0, 20));
    inner->add_option("--theta", in_theta);
    inner->add_option("--steps", in_steps)->check(CLI::NonNegativeNumber);

    // verify
    auto* verify = app.add_subcommand("verify", "run the invariant suite; nonzero exit on failure");
    std::uint64_t v_seed = 20240611;
    verify->add_option("--seed", v_seed);

    // build-osc
    auto* osc = app.add_subcommand("build-osc", "build a sequence whose ray passes beyond given radii");
    std::vector<double> osc_radii;
    double osc_probe = -3.0;
    OscillatingOptions osc_opt;
    osc->add_option("--radii", osc_radii)->delimiter(',');
    osc->add_option("--t-probe", osc_probe);
    osc->add_option("--eps", osc_opt.eps)->check(CLI::PositiveNumber);
    osc->add_option("--scan-span", osc_opt.scan_span);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    // Checked here rather than with ->required() so that an unknown flag is reported first.
    if ((*ray && ray_seq.empty()) || (*land && land_seq.empty())) {
        err << "usage error: --seq is required\n";
        return kExitUsage;
    }

    try {
        RunConfig cfg;
        try {
            if (!config_path) {
                if (const char* env = std::getenv(kConfigEnv); env && *env) config_path = env;
            }
            if (config_path) cfg = load_config(*config_path);
        } catch (const Error& e) {
            throw ConfigError(e.what());
        }

        if (*render) {
            override(cfg.width, r_width);
            override(cfg.height, r_height);
            override(cfg.max_iter, r_iter);
            override(cfg.max_split, r_split);
            override(cfg.workers, r_workers);
            if (!r_bbox.empty()) cfg.bbox = {r_bbox[0], r_bbox[1], r_bbox[2], r_bbox[3]};
            validate(cfg);
            const auto grid = classify_grid(cfg.bbox, cfg.width, cfg.height, cfg.max_iter, {cfg.max_split, cfg.workers});
            const auto path = out_path(cfg, render_out, "render.ppm");
            write_image(grid, cfg.palette, path);
            std::size_t counts[3] = {0, 0, 0};
            for (const auto& c : grid.cells) ++counts[static_cast<int>(c.tag)];
            out << json{{"path", path.string()}, {"width", grid.width}, {"height", grid.height},
                        {"max_iter", grid.max_iter}, {"enters_v", counts[0]}, {"exits_s", counts[1]},
                        {"undecided", counts[2]}}
                       .dump(2)
                << '\n';
        } else if (*curves) {
            override(cfg.curve_depth, c_depth);
            override(cfg.curve_t_min, c_tmin);
            override(cfg.curve_t_max, c_tmax);
            override(cfg.curve_max_gap, c_gap);
            override(cfg.workers, c_workers);
            validate(cfg);
            CurveOptions co;
            co.t_min = cfg.curve_t_min;
            co.t_max = cfg.curve_t_max;
            co.max_gap = cfg.curve_max_gap;
            co.workers = cfg.workers;
            const auto polys = preimage_curves(cfg.curve_depth, co);
            const auto path = out_path(cfg, curves_out, "curves.csv");
            write_polylines_csv(polys, path);
            std::size_t n = 0;
            for (const auto& p : polys) n += p.vertices.size();
            out << json{{"path", path.string()}, {"curves", polys.size()}, {"vertices", n}}.dump(2) << '\n';
        } else if (*ray) {
            override(cfg.ray_tol, ray_tol);
            override(cfg.workers, ray_workers);
            validate(cfg);
            RayOptions ro;
            ro.tol = cfg.ray_tol;
            ro.pullback_budget = cfg.pullback_budget;
            ro.constant_tail_shortcut = ray_shortcut;
            const auto pts = trace_ray(parse_sequence(ray_seq), ray_tmin, ray_tmax, ray_step, ro, cfg.workers);
            std::ofstream file;
            std::ostream* os = &out;
            if (ray_out) {
                file.open(*ray_out, std::ios::binary);
                if (!file) throw IoError("cannot open " + *ray_out + " for writing");
                os = &file;
            }
            *os << "t,re,im,depth,err_radius\n";
            for (const auto& p : pts)
                *os << fmt17(p.t) << ',' << fmt17(p.z.real()) << ',' << fmt17(p.z.imag()) << ',' << p.depth << ','
                    << fmt17(p.err_radius) << '\n';
            if (!*os) throw IoError("write failed for ray CSV");
        } else if (*itin) {
            json j;
            if (it_circle) {
                if (it_seq) {
                    const auto a = angle_from_itinerary(parse_sequence(*it_seq), it_depth);
                    j = {{"theta", a.angle.theta}, {"arc_length", a.arc_length}, {"exact", a.exact}, {"slow", a.slow}};
                } else {
                    const auto ci = circle_itinerary(CircleAngle::reduced(it_theta), it_depth);
                    json br = json::array();
                    for (const auto& b : ci.branches) br.push_back(format_word(b));
                    j = {{"theta", CircleAngle::reduced(it_theta).theta}, {"branches", br}};
                    j["preimage_step"] = ci.preimage_step ? json(*ci.preimage_step) : json(nullptr);
                }
            } else {
                const auto r = itinerary(make_point(it_re, it_im), it_depth);
                j = {{"z", cjson({it_re, it_im})}, {"tag", std::string(to_string(r.tag))},
                     {"symbols", format_word(r.symbols)}};
                j["step"] = r.step >= 0 ? json(r.step) : json(nullptr);
            }
            out << j.dump(2) << '\n';
        } else if (*land) {
            override(cfg.landing_tol, land_tol);
            override(cfg.landing_max_depth, land_depth);
            validate(cfg);
            const auto s = parse_sequence(land_seq);
            json j;
            if (land_diag) {
                const auto d = landing_diagnostic(s, *land_diag, land_samples.value_or(300));
                j = {{"sequence", s.to_string()},
                     {"t_max", *land_diag},
                     {"max_modulus", d.max_modulus},
                     {"last_window_diameter", d.last_window_diameter},
                     {"window_center", cjson(d.window_center)},
                     {"samples", d.samples},
                     {"truncated_samples", d.truncated_samples},
                     {"max_seed_spread", d.max_seed_spread}};
            } else {
                const auto r = landing_point(s, cfg.landing_tol, static_cast<std::uint64_t>(cfg.landing_max_depth));
                json orbit = json::array();
                for (auto z : r.orbit) orbit.push_back(cjson(z));
                j = {{"sequence", s.to_string()}, {"z", cjson(r.z)},          {"residual", r.residual},
                     {"depth_used", r.depth_used}, {"orbit_bound", r.orbit_bound}, {"orbit", orbit}};
            }
            out << j.dump(2) << '\n';
        } else if (*periodic) {
            auto one = [&](const Word& w) {
                const auto p = periodic_point(w, cfg.periodic_tol, cfg.periodic_budget);
                json cyc = json::array();
                for (auto z : p.cycle) cyc.push_back(cjson(z));
                return json{{"word", format_word(w)},
                            {"period", p.period},
                            {"z", cjson(p.z)},
                            {"multiplier", cjson(p.multiplier)},
                            {"multiplier_modulus", std::abs(p.multiplier)},
                            {"residual", p.residual},
                            {"cycle", cyc}};
            };
            if (per_word) {
                out << one(parse_word(*per_word)).dump(2) << '\n';
            } else {
                json arr = json::array();
                for (int len = 2; len <= *per_all; ++len)
                    for (std::uint32_t code = 0; code < (1u << len); ++code) {
                        Word w(static_cast<std::size_t>(len));
                        for (int k = 0; k < len; ++k) w[k] = static_cast<Symbol>((code >> (len - 1 - k)) & 1u);
                        if (longest_run(w) == static_cast<std::uint64_t>(len)) continue;
                        arr.push_back(one(w));
                    }
                out << arr.dump(2) << '\n';
            }
        } else if (*inner) {
            json j = json::object();
            if (in_pre) {
                json arr = json::array();
                for (const auto& a : eventual_preimages_of_one(*in_pre)) arr.push_back(a.theta);
                j["depth"] = *in_pre;
                j["angles"] = arr;
            }
            if (in_theta) {
                Complex z = std::polar(1.0, *in_theta);
                json orbit = json::array({cjson(z)});
                for (int k = 0; k < in_steps.value_or(10); ++k) orbit.push_back(cjson(z = g_eval(z)));
                j["orbit"] = orbit;
            }
            if (!in_pre && !in_theta) {
                err << "usage error: inner needs --preimages or --theta\n";
                return kExitUsage;
            }
            out << j.dump(2) << '\n';
        } else if (*verify) {
            bool all = true;
            for (const auto& r : run_invariant_suite(v_seed, cfg.workers)) {
                out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                all &= r.pass;
            }
            return all ? kExitOk : kExitFailure;
        } else if (*osc) {
            const auto s = build_oscillating_sequence(osc_radii, osc_probe, osc_opt);
            json blocks = json::array();
            if (s.kind() == SymbolSequence::TailKind::Schedule)
                for (auto b : s.schedule().blocks) blocks.push_back(b);
            out << json{{"sequence", s.to_string()}, {"blocks", blocks}, {"classification", std::string(to_string(classify_sequence(s).kind))}}
                       .dump(2)
                << '\n';
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NoConvergence& e) {
        err << "no convergence: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace baker
