#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "ssepfree/cumulants.hpp"
#include "ssepfree/errors.hpp"
#include "ssepfree/graphs.hpp"
#include "ssepfree/oracles.hpp"

using namespace ssepfree;

namespace {

// Moment table of a discrete law, keyed by index multisets (1-based variables).
MomentTable moments_of(const oracle::DiscreteLaw& law) {
    return MomentTable([law](const std::vector<int>& key) {
        return law.expect([&](const std::vector<double>& x) {
            double p = 1;
            for (int i : key) p *= x[static_cast<std::size_t>(i - 1)];
            return p;
        });
    });
}

CumulantTable random_cumulants(std::mt19937_64& rng) {
    auto seed = rng();
    return CumulantTable([seed](const std::vector<int>& key) {
        std::uint64_t h = seed;
        for (int i : key) h = h * 1000003u + static_cast<std::uint64_t>(i);
        std::mt19937_64 local(h);
        return std::uniform_real_distribution<double>(-1, 1)(local);
    });
}

std::vector<int> iota_indices(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    return v;
}

}  // namespace

TEST_CASE("low-order cumulant formulas") {
    std::mt19937_64 rng(3);
    const auto law = oracle::DiscreteLaw::random(3, rng);
    const auto m = moments_of(law);
    const double m1 = m.at({1}), m2 = m.at({2}), m3 = m.at({3});
    CHECK(moments_to_cumulants(m, {1, 2}) == doctest::Approx(m.at({1, 2}) - m1 * m2).epsilon(1e-13));
    const double k3 = m.at({1, 2, 3}) - m.at({1, 2}) * m3 - m.at({1, 3}) * m2 - m.at({2, 3}) * m1 + 2 * m1 * m2 * m3;
    CHECK(moments_to_cumulants(m, {1, 2, 3}) == doctest::Approx(k3).epsilon(1e-13));
}

TEST_CASE("constants have vanishing higher cumulants") {
    const double c = 0.7;
    MomentTable m([c](const std::vector<int>& key) { return std::pow(c, static_cast<double>(key.size())); });
    CHECK(moments_to_cumulants(m, {1}) == doctest::Approx(c));
    for (int n = 2; n <= 5; ++n) CHECK(std::abs(moments_to_cumulants(m, std::vector<int>(static_cast<std::size_t>(n), 1))) < 1e-13);
}

TEST_CASE("cumulants to moments") {
    CumulantTable k;
    k.set({1}, 0.3);
    k.set({2}, -0.4);
    k.set({1, 2}, 0.25);
    CHECK(cumulants_to_moments(k, {1, 2}) == doctest::Approx(0.25 + 0.3 * -0.4));
    CumulantTable means([](const std::vector<int>& key) { return key.size() == 1 ? 0.1 * key[0] : 0.0; });
    CHECK(cumulants_to_moments(means, {1, 2, 3, 4}) == doctest::Approx(0.1 * 0.2 * 0.3 * 0.4));
}

TEST_CASE("cumulant moment round trip on random tables") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto k = random_cumulants(rng);
        MomentTable m([&k](const std::vector<int>& key) { return cumulants_to_moments(k, key); });
        for (int n = 1; n <= 5; ++n) {
            const auto idx = iota_indices(n);
            CHECK(moments_to_cumulants(m, idx) == doctest::Approx(k.at(idx)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cumulants of a discrete law match the log-series oracle") {
    std::mt19937_64 rng(29);
    for (int n = 1; n <= 5; ++n) {
        const auto law = oracle::DiscreteLaw::random(n, rng);
        std::vector<std::vector<int>> singletons;
        for (int i = 1; i <= n; ++i) singletons.push_back({i});
        CHECK(moments_to_cumulants(moments_of(law), iota_indices(n)) ==
              doctest::Approx(oracle::cumulant_of_products(law, singletons)).epsilon(1e-11));
    }
}

TEST_CASE("product cumulants") {
    std::mt19937_64 rng(41);
    const auto k = random_cumulants(rng);
    for (int n = 1; n <= 5; ++n) {
        const auto idx = iota_indices(n);
        for (const auto& xi : enumerate_partitions(n)) {
            double prod = 1;
            for (const auto& b : xi.blocks()) prod *= k.at(select(idx, [&] {
                std::uint64_t mask = 0;
                for (int e : b) mask |= std::uint64_t{1} << (e - 1);
                return mask;
            }()));
            CHECK(product_cumulant(k, idx, SetPartition::finest(n), xi) == doctest::Approx(prod).epsilon(1e-12));
        }
        CHECK(product_cumulant(k, idx, SetPartition::coarsest(n), SetPartition::coarsest(n)) ==
              doctest::Approx(cumulants_to_moments(k, idx)).epsilon(1e-12));
    }
}

TEST_CASE("product cumulant of paired products against an explicit law") {
    std::mt19937_64 rng(43);
    const auto law = oracle::DiscreteLaw::random(4, rng);
    const auto m = moments_of(law);
    CumulantTable k([&m](const std::vector<int>& key) { return moments_to_cumulants(m, key); });
    const auto gamma = SetPartition::from_blocks(4, {{1, 2}, {3, 4}});
    CHECK(product_cumulant(k, {1, 2, 3, 4}, gamma, SetPartition::coarsest(4)) ==
          doctest::Approx(oracle::cumulant_of_products(law, {{1, 2}, {3, 4}})).epsilon(1e-12));
}

TEST_CASE("sum of product cumulants over xi above gamma is the full moment") {
    std::mt19937_64 rng(47);
    const auto k = random_cumulants(rng);
    for (int n = 2; n <= 5; ++n) {
        const auto idx = iota_indices(n);
        for (const auto& gamma : enumerate_partitions(n)) {
            double s = 0;
            for (const auto& xi : enumerate_partitions(n))
                if (refines(gamma, xi)) s += product_cumulant(k, idx, gamma, xi);
            CHECK(s == doctest::Approx(cumulants_to_moments(k, idx)).epsilon(1e-11));
        }
    }
}

TEST_CASE("product cumulant requires xi above gamma") {
    CumulantTable k([](const std::vector<int>&) { return 1.0; });
    CHECK_THROWS_AS(product_cumulant(k, {1, 2}, SetPartition::coarsest(2), SetPartition::finest(2)), OrderError);
}

TEST_CASE("inverse product cumulant recovers the plain cumulant") {
    std::mt19937_64 rng(53);
    for (int n = 1; n <= 5; ++n) {
        const auto law = oracle::DiscreteLaw::random(n, rng);
        const auto m = moments_of(law);
        const double direct = moments_to_cumulants(m, iota_indices(n));
        for (const auto& gamma : enumerate_partitions(n)) {
            // cumulant of the products of gamma restricted to a block, straight from the law
            GammaCumulant kg = [&](const std::vector<int>& block) {
                std::vector<std::vector<int>> groups;
                const auto blocks = gamma.blocks();
                for (const auto& b : blocks) {
                    std::vector<int> g;
                    for (int e : b)
                        if (std::find(block.begin(), block.end(), e) != block.end()) g.push_back(e);
                    if (!g.empty()) groups.push_back(g);
                }
                return oracle::cumulant_of_products(law, groups);
            };
            CHECK(inverse_product_cumulant(kg, gamma) == doctest::Approx(direct).epsilon(1e-11));
        }
    }
}

TEST_CASE("free cumulants") {
    std::mt19937_64 rng(61);
    const auto law = oracle::DiscreteLaw::random(4, rng);
    const auto m = moments_of(law);
    CHECK(free_cumulants_multilinear(m, {2}) == doctest::Approx(m.at({2})));
    for (int n = 2; n <= 3; ++n) {
        const auto idx = iota_indices(n);
        CHECK(free_cumulants_multilinear(m, idx) == doctest::Approx(moments_to_cumulants(m, idx)).epsilon(1e-12));
    }
    // single variable with moments m_p
    const std::vector<double> mp{1.0, 0.3, 0.2, 0.15, 0.11};
    MomentTable single([&mp](const std::vector<int>& key) { return mp[key.size()]; });
    const double r4 = mp[4] - 4 * mp[3] * mp[1] - 2 * mp[2] * mp[2] + 10 * mp[2] * mp[1] * mp[1] - 5 * std::pow(mp[1], 4);
    CHECK(free_cumulants_multilinear(single, {1, 1, 1, 1}) == doctest::Approx(r4).epsilon(1e-12));
}

TEST_CASE("free and classical cumulants convert into each other") {
    std::mt19937_64 rng(67);
    const auto law = oracle::DiscreteLaw::random(5, rng);
    const auto m = moments_of(law);
    CumulantTable k([&m](const std::vector<int>& key) { return moments_to_cumulants(m, key); });
    auto r = [&m](const std::vector<int>& seq) { return free_cumulants_multilinear(m, seq); };
    for (int n = 1; n <= 5; ++n) {
        const auto idx = iota_indices(n);
        CHECK(free_from_classical(k, idx) == doctest::Approx(r(idx)).epsilon(1e-11));
        CHECK(classical_from_free(r, idx) == doctest::Approx(k.at(idx)).epsilon(1e-11));
    }
}

TEST_CASE("classical and free cumulants are multilinear in their arguments") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-1, 1);
    // variables X, Y, a2, a3; compare K(aX + bY, a2, a3) with aK(X, ..) + bK(Y, ..)
    const auto law = oracle::DiscreteLaw::random(4, rng);
    const double a = u(rng), b = u(rng);
    auto table = [&law](std::function<double(const std::vector<double>&)> first) {
        return MomentTable([&law, first](const std::vector<int>& key) {
            return law.expect([&](const std::vector<double>& x) {
                double p = 1;
                for (int i : key) p *= i == 1 ? first(x) : x[static_cast<std::size_t>(i)];
                return p;
            });
        });
    };
    const auto mz = table([&](const std::vector<double>& x) { return a * x[0] + b * x[1]; });
    const auto mx = table([](const std::vector<double>& x) { return x[0]; });
    const auto my = table([](const std::vector<double>& x) { return x[1]; });
    for (const std::vector<int>& seq : {std::vector<int>{1, 2, 3}, std::vector<int>{2, 1, 3, 2}, std::vector<int>{1, 2, 3, 3}}) {
        CHECK(moments_to_cumulants(mz, seq) ==
              doctest::Approx(a * moments_to_cumulants(mx, seq) + b * moments_to_cumulants(my, seq)).epsilon(1e-11));
        CHECK(free_cumulants_multilinear(mz, seq) ==
              doctest::Approx(a * free_cumulants_multilinear(mx, seq) + b * free_cumulants_multilinear(my, seq)).epsilon(1e-11));
    }
}

TEST_CASE("missing table entries are reported") {
    CumulantTable k;
    k.set({1}, 0.5);
    CHECK_THROWS_AS(cumulants_to_moments(k, {1, 2}), IncompleteTableError);
}
