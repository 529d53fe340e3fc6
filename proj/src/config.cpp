#include "bakerrays/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "bakerrays/errors.hpp"

namespace baker {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view v, const std::string& where) {
    T out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw PreconditionError(where + ": cannot parse '" + std::string(v) + "'");
    return out;
}

Rgb parse_rgb(std::string_view v, const std::string& where) {
    Rgb c{};
    for (int k = 0; k < 3; ++k) {
        const auto comma = v.find(',');
        if ((k < 2) != (comma != std::string_view::npos)) throw PreconditionError(where + ": expected r,g,b");
        const int x = parse_number<int>(trim(v.substr(0, comma)), where);
        if (x < 0 || x > 255) throw PreconditionError(where + ": colour component out of range");
        c[k] = static_cast<std::uint8_t>(x);
        if (comma != std::string_view::npos) v.remove_prefix(comma + 1);
    }
    return c;
}

using Setter = std::function<void(RunConfig&, std::string_view, const std::string&)>;

template <class T, class F>
Setter num(F field) {
    return [field](RunConfig& c, std::string_view v, const std::string& w) { field(c) = parse_number<T>(v, w); };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> m = {
        {"branch_tol", num<double>([](RunConfig& c) -> double& { return c.branch_tol; })},
        {"ray_tol", num<double>([](RunConfig& c) -> double& { return c.ray_tol; })},
        {"landing_tol", num<double>([](RunConfig& c) -> double& { return c.landing_tol; })},
        {"periodic_tol", num<double>([](RunConfig& c) -> double& { return c.periodic_tol; })},
        {"pullback_budget", num<std::uint64_t>([](RunConfig& c) -> std::uint64_t& { return c.pullback_budget; })},
        {"landing_max_depth", num<int>([](RunConfig& c) -> int& { return c.landing_max_depth; })},
        {"periodic_budget", num<int>([](RunConfig& c) -> int& { return c.periodic_budget; })},
        {"max_iter", num<int>([](RunConfig& c) -> int& { return c.max_iter; })},
        {"max_split", num<int>([](RunConfig& c) -> int& { return c.max_split; })},
        {"workers", num<unsigned>([](RunConfig& c) -> unsigned& { return c.workers; })},
        {"re_min", num<double>([](RunConfig& c) -> double& { return c.bbox.re_min; })},
        {"re_max", num<double>([](RunConfig& c) -> double& { return c.bbox.re_max; })},
        {"im_min", num<double>([](RunConfig& c) -> double& { return c.bbox.im_min; })},
        {"im_max", num<double>([](RunConfig& c) -> double& { return c.bbox.im_max; })},
        {"width", num<int>([](RunConfig& c) -> int& { return c.width; })},
        {"height", num<int>([](RunConfig& c) -> int& { return c.height; })},
        {"curve_depth", num<int>([](RunConfig& c) -> int& { return c.curve_depth; })},
        {"curve_t_min", num<double>([](RunConfig& c) -> double& { return c.curve_t_min; })},
        {"curve_t_max", num<double>([](RunConfig& c) -> double& { return c.curve_t_max; })},
        {"curve_max_gap", num<double>([](RunConfig& c) -> double& { return c.curve_max_gap; })},
        {"output_dir", [](RunConfig& c, std::string_view v, const std::string&) { c.output_dir = std::string(v); }},
        {"palette.undecided", [](RunConfig& c, std::string_view v, const std::string& w) { c.palette.undecided = parse_rgb(v, w); }},
        {"palette.enters_v_fast", [](RunConfig& c, std::string_view v, const std::string& w) { c.palette.enters_v_fast = parse_rgb(v, w); }},
        {"palette.enters_v_slow", [](RunConfig& c, std::string_view v, const std::string& w) { c.palette.enters_v_slow = parse_rgb(v, w); }},
        {"palette.exits", [](RunConfig& c, std::string_view v, const std::string& w) { c.palette.exits = parse_rgb(v, w); }},
        {"palette.ramp", num<int>([](RunConfig& c) -> int& { return c.palette.ramp; })},
    };
    return m;
}

}  // namespace

void apply_config_text(std::string_view text, RunConfig& cfg) {
    int lineno = 0;
    while (!text.empty()) {
        ++lineno;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = "config line " + std::to_string(lineno);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw PreconditionError(where + ": expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw PreconditionError(where + ": unknown key '" + std::string(key) + "'");
        it->second(cfg, value, where + " (" + std::string(key) + ")");
    }
    validate(cfg);
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read config " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    apply_config_text(ss.str(), base);
    return base;
}

void validate(const RunConfig& c) {
    auto need = [](bool ok, const char* what) {
        if (!ok) throw PreconditionError(std::string("config: ") + what);
    };
    need(c.branch_tol > 0 && c.ray_tol > 0 && c.landing_tol > 0 && c.periodic_tol > 0, "tolerances must be positive");
    need(c.pullback_budget >= 1 && c.landing_max_depth >= 1 && c.periodic_budget >= 1 && c.max_iter >= 1,
         "budgets must be >= 1");
    need(c.max_split >= 0, "max_split must be >= 0");
    need(c.width >= 1 && c.height >= 1, "raster size must be >= 1");
    need(c.bbox.re_max > c.bbox.re_min && c.bbox.im_max > c.bbox.im_min, "degenerate bounding box");
    need(c.curve_depth >= 0 && c.curve_depth <= 16, "curve_depth must be in [0, 16]");
    need(c.curve_t_max > c.curve_t_min && c.curve_max_gap > 0, "bad curve sampling range");
    need(c.palette.ramp >= 1, "palette.ramp must be >= 1");
}

}  // namespace baker
