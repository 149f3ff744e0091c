#include <doctest.h>

#include <cmath>
#include <random>

#include "ssepfree/cumulants.hpp"
#include "ssepfree/errors.hpp"
#include "ssepfree/freeprob.hpp"
#include "ssepfree/grid.hpp"

using namespace ssepfree;

namespace {

GridFunction random_profile(std::mt19937_64& rng, double amplitude, int M = 400) {
    std::uniform_real_distribution<double> u(-1, 1);
    const double c0 = u(rng), c1 = u(rng), c2 = u(rng), ph = u(rng);
    return GridFunction::from_function(M, [=](double x) {
        return amplitude * (0.5 * c0 + 0.3 * c1 * std::sin(2 * M_PI * x + ph) + 0.2 * c2 * x * x);
    });
}

}  // namespace

TEST_CASE("moments of b") {
    const auto c = moments_of_b(GridFunction::constant(64, 0.3), 5);
    for (int p = 0; p <= 5; ++p) CHECK(c[static_cast<std::size_t>(p)] == doctest::Approx(std::pow(0.3, p)).epsilon(1e-14));
    const auto b = GridFunction::from_function(2048, [](double x) { return -(1 - x); });
    const auto m = moments_of_b(b, 2);
    CHECK(m[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(m[2] == doctest::Approx(1.0 / 3).epsilon(1e-6));
    const auto z = moments_of_b(GridFunction::constant(32, 0.0), 4);
    for (int p = 1; p <= 4; ++p) CHECK(z[static_cast<std::size_t>(p)] == 0.0);
}

TEST_CASE("free cumulants from moments") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = moments_of_b(random_profile(rng, 1.0), 4);
        const auto r = free_cumulants_from_moments(m, 4);
        CHECK(r[1] == doctest::Approx(m[1]).epsilon(1e-12));
        CHECK(r[2] == doctest::Approx(m[2] - m[1] * m[1]).epsilon(1e-10));
        CHECK(r[3] == doctest::Approx(m[3] - 3 * m[2] * m[1] + 2 * std::pow(m[1], 3)).epsilon(1e-10));
        const double r4 = m[4] - 4 * m[3] * m[1] + 10 * m[2] * m[1] * m[1] - 2 * m[2] * m[2] - 5 * std::pow(m[1], 4);
        CHECK(r[4] == doctest::Approx(r4).epsilon(1e-10));
    }
    const auto rc = free_cumulants_from_moments(moments_of_b(GridFunction::constant(16, 0.4), 6), 6);
    CHECK(rc[1] == doctest::Approx(0.4));
    for (int p = 2; p <= 6; ++p) CHECK(std::abs(rc[static_cast<std::size_t>(p)]) < 1e-14);
}

TEST_CASE("free cumulants from moments agree with the non-crossing lattice route") {
    std::mt19937_64 rng(5);
    const auto m = moments_of_b(random_profile(rng, 1.0), 8);
    const auto r = free_cumulants_from_moments(m, 8);
    MomentTable table([&m](const std::vector<int>& key) { return m[key.size()]; });
    for (int n = 1; n <= 8; ++n)
        CHECK(r[static_cast<std::size_t>(n)] ==
              doctest::Approx(free_cumulants_multilinear(table, std::vector<int>(static_cast<std::size_t>(n), 1))).epsilon(1e-10));
}

TEST_CASE("resolvent") {
    CHECK(resolvent(GridFunction::constant(16, 0.0), 2.0) == doctest::Approx(0.5));
    const auto b = GridFunction::from_function(4096, [](double x) { return -(1 - x); });
    CHECK(resolvent(b, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-7));
    double prev = resolvent(b, 0.5);
    for (double z = 0.6; z < 5; z += 0.1) {
        const double g = resolvent(b, z);
        CHECK(g < prev);
        prev = g;
    }
    CHECK_THROWS_AS(resolvent(b, -0.5), BranchError);
}

TEST_CASE("resolvent derivative matches finite differences") {
    std::mt19937_64 rng(7);
    const auto b = random_profile(rng, 1.0);
    const double z = b.max() + 0.7, h = 1e-5;
    CHECK(resolvent_derivative(b, z) == doctest::Approx((resolvent(b, z + h) - resolvent(b, z - h)) / (2 * h)).epsilon(1e-7));
}

TEST_CASE("solve_z") {
    CHECK(solve_z(GridFunction::constant(16, 0.0), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(solve_z(GridFunction::constant(16, 0.25), 1.0) == doctest::Approx(1.25).epsilon(1e-12));
    // log((z + 1) / z) = 1; the trapezoid rule is second order
    const auto b = GridFunction::from_function(4096, [](double x) { return -(1 - x); });
    CHECK(solve_z(b, 1.0) == doctest::Approx(1.0 / (std::exp(1.0) - 1)).epsilon(1e-7));
}

TEST_CASE("vz series") {
    std::mt19937_64 rng(9);
    const auto b = random_profile(rng, 0.5);
    const auto m = moments_of_b(b, 8);
    const auto c = vz_series(m, 8);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(m[1]).epsilon(1e-12));
    CHECK(c[3] == doctest::Approx(m[3] - 3 * m[2] * m[1] + 2 * std::pow(m[1], 3)).epsilon(1e-10));
    const double v = 0.1;
    double series = 0;
    for (int p = 8; p >= 0; --p) series = series * v + c[static_cast<std::size_t>(p)];
    CHECK(std::abs(v * solve_z(b, v) - series) < 1e-9);
}

TEST_CASE("shifting b moves only the first free cumulant") {
    std::mt19937_64 rng(13);
    const auto b = random_profile(rng, 0.5);
    const double shift = 0.35;
    const auto r0 = free_cumulants_from_moments(moments_of_b(b, 6), 6);
    const auto r1 = free_cumulants_from_moments(moments_of_b(b.map([&](double y) { return y + shift; }), 6), 6);
    CHECK(r1[1] - r0[1] == doctest::Approx(shift).epsilon(1e-12));
    for (int p = 2; p <= 6; ++p) CHECK(r1[static_cast<std::size_t>(p)] == doctest::Approx(r0[static_cast<std::size_t>(p)]).epsilon(1e-9));
}

TEST_CASE("R-transform inverts the resolvent") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const auto b = random_profile(rng, 0.5);
        const auto r = free_cumulants_from_moments(moments_of_b(b, 12), 12);
        for (int k = 0; k < 20; ++k) {
            const double z = b.max() + 0.5 + 4.5 * k / 19.0;
            CHECK(std::abs(r_transform(r, resolvent(b, z)) - z) < 1e-9);
        }
    }
}
