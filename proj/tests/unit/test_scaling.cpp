#include <doctest.h>

#include <cmath>
#include <random>

#include "ssepfree/errors.hpp"
#include "ssepfree/scaling.hpp"
#include "ssepfree/ssep.hpp"

using namespace ssepfree;

namespace {

CumulantKernelSet linear_kernel(std::function<double(double)> f) {
    CumulantKernelSet k;
    k.kernels.push_back([f](std::span<const double> x) { return f(x[0]); });
    return k;
}

GridFunction smooth(int M, double a, double b, double c) {
    return GridFunction::from_function(M, [=](double x) { return a + b * std::sin(M_PI * x) + c * std::cos(2 * M_PI * x); });
}

}  // namespace

TEST_CASE("F0 series evaluation") {
    const auto psi1 = linear_kernel([](double x) { return x; });
    CHECK(F0_eval(psi1, GridFunction::constant(32, 0.0), 1) == 0.0);
    CHECK(F0_eval(psi1, GridFunction::constant(32, 0.8), 1) == doctest::Approx(0.4).epsilon(1e-14));
    // a/2 - a^2/24 for constant a; the kink of psi_2 on the diagonal limits the quadrature to O(1/M)
    const auto k2 = ssep_kernels(2);
    for (double a : {0.3, -0.5}) {
        const double v = F0_eval(k2, GridFunction::constant(256, a), 2);
        CHECK(std::abs(v - (a / 2 - a * a / 24)) < 1e-3 * a * a);
    }
}

TEST_CASE("F0 gradient") {
    const auto psi1 = linear_kernel([](double x) { return x * x; });
    const auto g = F0_gradient(psi1, GridFunction::constant(16, 0.0), 1);
    for (int i = 0; i <= 16; ++i) CHECK(g[i] == doctest::Approx(g.x(i) * g.x(i)));

    // additive in the kernel set
    const auto a = linear_kernel([](double x) { return x; });
    const auto b = linear_kernel([](double x) { return 1 - x * x; });
    const auto ab = linear_kernel([](double x) { return x + 1 - x * x; });
    const auto q = smooth(16, 0.1, 0.3, -0.2);
    const auto ga = F0_gradient(a, q, 1), gb = F0_gradient(b, q, 1), gab = F0_gradient(ab, q, 1);
    for (int i = 0; i <= 16; ++i) CHECK(gab[i] == doctest::Approx(ga[i] + gb[i]).epsilon(1e-14));
}

TEST_CASE("F0 gradient matches finite differences of F0") {
    const auto k = ssep_kernels(3);
    const auto q = smooth(16, 0.2, 0.3, -0.1);
    const auto grad = F0_gradient(k, q, 3);
    const double w = q.step();
    for (int i : {0, 3, 8, 16}) {
        auto qp = q, qm = q;
        const double eps = 1e-5;
        qp[i] += eps;
        qm[i] -= eps;
        const double weight = (i == 0 || i == 16) ? w / 2 : w;
        const double fd = (F0_eval(k, qp, 3) - F0_eval(k, qm, 3)) / (2 * eps) / weight;
        CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("series and integral-form SSEP gradients agree") {
    const int M = 32;
    const auto q = smooth(M, 0.05, 0.05, -0.03);
    const auto series = F0_gradient(ssep_kernels(4), q, 4);
    const auto integral = ssep_functional().gradient(q);
    double err = 0;
    for (int i = 0; i <= M; ++i) err = std::max(err, std::abs(series[i] - integral[i]));
    // truncation O(q^5) plus quadrature O(1/M^2)
    CHECK(err < 1e-3);
}

TEST_CASE("variational solver basics") {
    const int M = 64;
    const auto g0 = GridFunction::from_function(M, [](double x) { return 0.2 + 0.5 * x; });
    const auto zero = solve_free_energy(GridFunction::constant(M, 0.0), linear_functional(g0));
    CHECK(zero.F == doctest::Approx(0.0));
    for (int i = 0; i <= M; ++i) {
        CHECK(zero.q[i] == doctest::Approx(0.0));
        CHECK(zero.g[i] == doctest::Approx(g0[i]));
    }
    const auto h = smooth(M, 0.4, 0.5, 0.2);
    const auto s = solve_free_energy(h, linear_functional(g0));
    CHECK(s.F == doctest::Approx(independent_free_energy(s.e, g0)).epsilon(1e-10));
}

TEST_CASE("fixed point satisfies both stationarity relations") {
    const int M = 128;
    const auto h = smooth(M, 0.5, 0.3, -0.2);
    const auto f0 = ssep_functional();
    const auto s = solve_free_energy(h, f0);
    const auto grad = f0.gradient(s.q);
    double rq = 0, rg = 0;
    for (int i = 0; i <= M; ++i) {
        rq = std::max(rq, std::abs(s.q[i] - s.e[i] / (1 + s.e[i] * s.g[i])));
        rg = std::max(rg, std::abs(s.g[i] - grad[i]));
    }
    CHECK(rq < 1e-10);
    CHECK(rg < 1e-10);
}

TEST_CASE("perturbing e at one node changes F by eps g q dx") {
    const int M = 64;
    const auto h = smooth(M, 0.3, 0.4, 0.1);
    const auto f0 = ssep_functional();
    SolverOptions tight;
    tight.tolerance = 1e-13;
    const auto base = solve_free_energy(h, f0, tight);
    const auto w = trapezoid_weights(M);
    for (int i : {5, 32, 50}) {
        const double eps = 1e-5;
        auto ep = base.e, em = base.e;
        ep[i] *= 1 + eps;
        em[i] *= 1 - eps;
        const double dF = (solve_variational(ep, f0, tight).F - solve_variational(em, f0, tight).F) / 2;
        CHECK(dF == doctest::Approx(eps * base.g[i] * base.q[i] * w[static_cast<std::size_t>(i)]).epsilon(1e-5));
    }
}

TEST_CASE("grid refinement from 256 to 512 intervals") {
    auto h = [](double x) { return 0.5 + 0.5 * std::sin(M_PI * x); };
    const double F256 = F_ssep_free(GridFunction::from_function(256, h)).F;
    const double F512 = F_ssep_free(GridFunction::from_function(512, h)).F;
    CHECK(std::abs(F256 - F512) < 1e-6);
}

TEST_CASE("SSEP free energy at h = 0.5 matches the classical solver") {
    const auto h = GridFunction::constant(256, 0.5);
    const double free = F_ssep_free(h).F;
    const double classical = classical_F_ssep(h).F;
    CHECK(std::abs(free - classical) / std::abs(classical) < 1e-4);
}

TEST_CASE("block discretization approaches the full solve") {
    const int M = 256;
    auto hf = [](double x) { return 0.6 * x; };
    const double full = F_ssep_free(GridFunction::from_function(M, hf)).F;
    double prev = INFINITY;
    for (int B : {2, 4, 8}) {
        BlockProblem p;
        for (int a = 0; a < B; ++a) {
            p.e.push_back(std::expm1(hf((a + 0.5) / B)));
            p.p.push_back(1.0 / B);
        }
        p.phi = block_tensors(ssep_kernels(4), B, 4, 6);
        const auto s = solve_blocks(p);
        const double err = std::abs(s.F - full);
        CAPTURE(B);
        CAPTURE(err);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("Legendre transform of independent free energies") {
    const int M = 32;
    auto indep = [M](double g0) {
        return FreeEnergyFunctional([M, g0](const GridFunction& h) {
            const auto e = h.map([](double x) { return std::expm1(x); });
            const auto g = GridFunction::constant(M, g0);
            std::vector<double> n;
            for (int i = 0; i <= M; ++i) n.push_back((1 + e[i]) * g0 / (1 + e[i] * g0));
            return FreeEnergyEvaluation{independent_free_energy(e, g), n};
        });
    };
    const auto half = GridFunction::constant(M, 0.5);
    CHECK(std::abs(legendre_transform(indep(0.5), half).value) < 1e-8);
    const double expect = 0.5 * std::log(0.5 / 0.3) + 0.5 * std::log(0.5 / 0.7);
    CHECK(legendre_transform(indep(0.3), half).value == doctest::Approx(expect).epsilon(1e-7));
}

TEST_CASE("independent rate function") {
    const int M = 64;
    const auto n = GridFunction::from_function(M, [](double x) { return 0.2 + 0.6 * x; });
    const auto g0 = GridFunction::constant(M, 0.4);
    const auto r = rate_function(n, linear_functional(g0));
    CHECK(r.value == doctest::Approx(independent_rate_function(n, g0)).epsilon(1e-10));
    CHECK(independent_rate_function(g0, g0) == doctest::Approx(0.0));
}

TEST_CASE("solver input validation") {
    CHECK_THROWS_AS(rate_function(GridFunction::from_function(32, [](double x) { return x < 0.5 ? 0.5 : 1.0; }),
                                  linear_functional(GridFunction::constant(32, 0.5))),
                    DomainError);
    SolverOptions bad;
    bad.damping = 0;
    CHECK_THROWS_AS(solve_free_energy(GridFunction::constant(32, 0.1), linear_functional(GridFunction::constant(32, 0.5)), bad),
                    DomainError);
}
