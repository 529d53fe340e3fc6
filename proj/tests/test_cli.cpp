#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bakerrays/cli.hpp"
#include "bakerrays/config.hpp"
#include "bakerrays/errors.hpp"

using namespace baker;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "baker-rays");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const char* name) {
    const auto dir = std::filesystem::temp_directory_path() / "bakerrays_cli";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("periodic JSON") {
    const auto r = run({"periodic", "--word", "01"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["z"]["re"].get<double>() == doctest::Approx(-1.1447299).epsilon(1e-7));
    CHECK(j["z"]["im"].get<double>() == doctest::Approx(1.5707963).epsilon(1e-7));
    const auto all = nlohmann::json::parse(run({"periodic", "--all-words", "3"}).out);
    CHECK(all.size() == 2 + 6);
    CHECK(run({"periodic", "--word", "00"}).code == kExitDomain);
}

TEST_CASE("ray CSV on L+") {
    const auto r = run({"ray", "--seq", "0~", "--tmin", "-5", "--tmax", "5"});
    REQUIRE(r.code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,re,im,depth,err_radius");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        std::istringstream ls(line);
        std::string t, re, im;
        std::getline(ls, t, ',');
        std::getline(ls, re, ',');
        std::getline(ls, im, ',');
        CHECK(std::abs(std::stod(im) - kPi) <= 1e-9);
    }
    CHECK(rows > 100);
}

TEST_CASE("inner preimages and circle itinerary") {
    const auto j = nlohmann::json::parse(run({"inner", "--preimages", "2"}).out);
    const double want[] = {0, kHalfPi, kPi, 3 * kHalfPi};
    REQUIRE(j["angles"].size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(j["angles"][k].get<double>() == doctest::Approx(want[k]).epsilon(1e-12));
    const auto c = nlohmann::json::parse(run({"itinerary", "--circle", "--theta", "1.5707963267948966", "--depth", "4"}).out);
    CHECK(c["preimage_step"] == 2);
    CHECK(c["branches"][0] == "0100");
    const auto s = nlohmann::json::parse(run({"itinerary", "--re", "0", "--im", "0.5"}).out);
    CHECK(s["tag"] == "EnteredU");
}

TEST_CASE("exit codes") {
    auto r = run({"ray", "--bogus"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("--bogus") != std::string::npos);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"land", "--seq", "0~"}).code == kExitDomain);
    CHECK(run({"land", "--seq", "(01)*", "--max-depth", "3"}).code == kExitNoConvergence);
    CHECK(run({"build-osc", "--radii", "50"}).code == kExitNoConvergence);
    CHECK(run({"ray", "--seq", "0x"}).code == kExitDomain);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config file and flag precedence") {
    RunConfig cfg;
    apply_config_text("# comment\nmax_iter = 7   # trailing\n\nwidth=10\npalette.undecided = 1, 2, 3\n", cfg);
    CHECK(cfg.max_iter == 7);
    CHECK(cfg.width == 10);
    CHECK(cfg.palette.undecided == Rgb{1, 2, 3});
    CHECK_THROWS_AS(apply_config_text("nonsense = 1\n", cfg), PreconditionError);
    CHECK_THROWS_AS(apply_config_text("max_iter = 0\n", cfg), PreconditionError);
    CHECK_THROWS_AS(apply_config_text("width 3\n", cfg), PreconditionError);

    const auto conf = scratch("run.conf");
    const auto img = scratch("r.ppm");
    std::ofstream(conf) << "width = 8\nheight = 4\nmax_iter = 5\n";
    auto r = run({"--config", conf.string(), "render", "--out", img.string(), "--width", "6"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["width"] == 6);
    CHECK(j["height"] == 4);
    CHECK(j["max_iter"] == 5);
    CHECK(std::filesystem::file_size(img) == 11 + 6 * 4 * 3);

    ::setenv(kConfigEnv, conf.string().c_str(), 1);
    r = run({"render", "--out", img.string()});
    ::unsetenv(kConfigEnv);
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["width"] == 8);

    std::ofstream(conf) << "bogus_key = 1\n";
    CHECK(run({"--config", conf.string(), "verify"}).code == kExitUsage);
}

TEST_CASE("outputs are reproducible") {
    const auto a = run({"curves", "--depth", "2", "--out", scratch("c1.csv").string()});
    const auto b = run({"curves", "--depth", "2", "--out", scratch("c2.csv").string(), "--workers", "3"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    std::ifstream f1(scratch("c1.csv")), f2(scratch("c2.csv"));
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(run({"build-osc", "--radii", "1,2,3"}).out == run({"build-osc", "--radii", "1,2,3"}).out);
}
