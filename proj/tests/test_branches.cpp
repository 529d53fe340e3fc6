#include <doctest.h>

#include <cmath>

#include "bakerrays/branches.hpp"
#include "bakerrays/errors.hpp"
#include "oracles.hpp"

using namespace baker;

TEST_CASE("inverse branches at anchors") {
    CHECK(std::abs(phi(0, {-1, kPi}) - Complex(0, kPi)) < 1e-12);
    CHECK(std::abs(phi(1, {-1, -kPi}) - Complex(0, -kPi)) < 1e-12);
    const auto r = inverse_branch(0, {-5, 0});
    CHECK(r.residual <= 1e-12 * 5);
    CHECK(r.z.imag() > 0);
    CHECK(r.z.imag() < kPi);
    const Complex ref = oracle::branch_multistart({-5, 0}, true);
    REQUIRE(std::isfinite(ref.real()));
    CHECK(std::abs(r.z - ref) < 1e-10);
}

TEST_CASE("branch cut and domain errors") {
    CHECK_THROWS_AS(inverse_branch(0, {1, 0}), BranchCutError);
    CHECK_THROWS_AS(inverse_branch(1, {5, 5e-13}), BranchCutError);
    CHECK_THROWS_AS(inverse_branch(0, {0, 4}), DomainError);
    CHECK_NOTHROW(inverse_branch(0, {0.999, 0}));
}

TEST_CASE("round trip and half-strip placement on random targets") {
    oracle::Gen gen(21);
    for (int k = 0; k < 20000; ++k) {
        Complex w = gen.strip_point(-30, 30);
        if (w.real() >= 1 && std::abs(w.imag()) < 1e-9) continue;
        for (Symbol i : {Symbol{0}, Symbol{1}}) {
            const auto r = inverse_branch(i, w);
            CHECK(std::abs(evaluate_f(r.z) - w) <= 1e-12 * std::max(1.0, std::abs(w)));
            if (i == 0) CHECK((r.z.imag() >= 0 && r.z.imag() <= kPi));
            if (i == 1) CHECK((r.z.imag() <= 0 && r.z.imag() >= -kPi));
        }
    }
}

TEST_CASE("multistart oracle agrees with the solver") {
    oracle::Gen gen(22);
    int compared = 0;
    for (int k = 0; k < 60; ++k) {
        const Complex w = gen.strip_point(-6, 6);
        if (w.real() >= 1 && std::abs(w.imag()) < 1e-3) continue;
        const Complex ref = oracle::branch_multistart(w, true);
        if (!std::isfinite(ref.real())) continue;
        ++compared;
        CHECK(std::abs(phi(0, w) - ref) < 1e-9);
    }
    CHECK(compared >= 40);
}

TEST_CASE("real targets give conjugate preimages") {
    for (double x = -20; x < 0.99; x += 0.173) {
        CHECK(std::abs(phi(0, {x, 0}) - std::conj(phi(1, {x, 0}))) < 1e-12 * std::max(1.0, std::abs(x)));
    }
}

TEST_CASE("compose_pullback") {
    CHECK(compose_pullback({}, {0.3, 0.2}) == Complex(0.3, 0.2));
    const Word w0{0};
    CHECK(std::abs(compose_pullback(w0, {-1, kPi}) - Complex(0, kPi)) < 1e-12);
    const Complex a(-std::log(kPi), kHalfPi);
    const Word w01{0, 1};
    CHECK(std::abs(compose_pullback(w01, a) - a) < 1e-12);

    oracle::Gen gen(23);
    for (int k = 0; k < 300; ++k) {
        const Word w = gen.word(static_cast<std::size_t>(gen.integer(1, 8)));
        const Complex z(gen.uniform(-8, 0.5), gen.uniform(-3, 3));
        const Complex r = compose_pullback(w, z);
        Complex back = r;
        for (std::size_t j = 0; j < w.size(); ++j) {
            CHECK((w[j] == 0 ? back.imag() >= 0 : back.imag() <= 0));
            back = evaluate_f(back);
        }
        CHECK(std::abs(back - z) <= 1e-10 * std::max(1.0, std::abs(z)));
    }
}

TEST_CASE("rho contraction of the inverse branches") {
    oracle::Gen gen(24);
    int tested = 0;
    for (int k = 0; k < 4000 && tested < 300; ++k) {
        const Complex z = gen.strip_point(-6, 3), w = gen.strip_point(-6, 3);
        if (in_V_closure(z) || in_V_closure(w)) continue;
        for (Symbol i : {Symbol{0}, Symbol{1}}) {
            const Complex a = phi(i, z), b = phi(i, w);
            if (in_V_closure(a) || in_V_closure(b)) continue;
            ++tested;
            const double before = rho_distance(z, w), after = rho_distance(a, b);
            CHECK(after <= before + 1e-12);
            const double kk = std::max(z.real(), w.real());
            if (kk <= -1.0) CHECK(after <= before / expansion_lower_bound(std::max(a.real(), b.real())) + 1e-12);
        }
    }
    CHECK(tested >= 300);
}
