#include <doctest.h>

#include <cmath>
#include <random>

#include "ssepfree/bernoulli.hpp"
#include "ssepfree/cumulants.hpp"
#include "ssepfree/errors.hpp"
#include "ssepfree/oracles.hpp"

using namespace ssepfree;

namespace {

// Cumulant of b_{i1}..b_{in} straight from the law, independent of the table routines.
double direct_cumulant(const BernoulliModel& model, const std::vector<int>& indices) {
    const int n = static_cast<int>(indices.size());
    return oracle::joint_cumulant(n, [&](std::uint32_t subset) {
        std::vector<int> picked;
        for (int j = 0; j < n; ++j)
            if ((subset >> j) & 1U) picked.push_back(indices[static_cast<std::size_t>(j)]);
        double s = 0;
        const auto& p = model.probabilities();
        for (std::size_t c = 0; c < p.size(); ++c) {
            bool all = true;
            for (int i : picked) all = all && ((c >> (i - 1)) & 1U);
            if (all) s += p[c];
        }
        return s;
    });
}

}  // namespace

TEST_CASE("model validation") {
    CHECK_THROWS_AS(BernoulliModel(2, {0.5, 0.5, 0.1, 0.0}), ValidationError);
    CHECK_THROWS_AS(BernoulliModel(2, {0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(BernoulliModel(1, {1.2, -0.2}), ValidationError);
    CHECK_NOTHROW(BernoulliModel(1, {0.25, 0.75}));
}

TEST_CASE("exact log partition") {
    const auto half = BernoulliModel::independent({0.5, 0.5, 0.5});
    CHECK(exact_log_partition(half, {0, 0, 0}) == doctest::Approx(0.0));
    const auto ind = BernoulliModel::independent({0.3, 0.7});
    CHECK(exact_log_partition(ind, {1, 1}) ==
          doctest::Approx(std::log(1 + 0.3 * (M_E - 1)) + std::log(1 + 0.7 * (M_E - 1))).epsilon(1e-14));
    const double p = 0.35;
    std::vector<double> w(8, 0.0);
    w[0] = 1 - p;
    w[7] = p;
    const BernoulliModel same(3, w);
    const std::vector<double> h{0.2, -0.5, 0.9};
    CHECK(exact_log_partition(same, h) == doctest::Approx(std::log(1 - p + p * std::exp(0.6))).epsilon(1e-14));
}

TEST_CASE("non-coincident cumulants of independent sites") {
    const auto model = BernoulliModel::independent({0.2, 0.6, 0.9});
    const auto t = noncoincident_cumulants(model);
    CHECK(t.at({1}) == doctest::Approx(0.2));
    CHECK(t.at({2}) == doctest::Approx(0.6));
    CHECK(t.at({3}) == doctest::Approx(0.9));
    for (const auto& key : {std::vector<int>{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}}) CHECK(std::abs(t.at(key)) < 1e-15);
}

TEST_CASE("coincident cumulants from non-coincident ones") {
    const double g = 0.3;
    const auto model = BernoulliModel::independent({g, 0.8});
    const auto t = noncoincident_cumulants(model);
    CHECK(reconstruct_coincident_cumulant(t, 2, {1, 1}) == doctest::Approx(g * (1 - g)).epsilon(1e-14));
    CHECK(reconstruct_coincident_cumulant(t, 2, {1, 1, 1}) == doctest::Approx(g - 3 * g * g + 2 * g * g * g).epsilon(1e-14));
    CHECK(reconstruct_coincident_cumulant(t, 2, {1, 2}) == t.at({1, 2}));
}

TEST_CASE("coincident reconstruction agrees with direct cumulants (random N = 4 models)") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 5; ++trial) {
        const auto model = BernoulliModel::random(4, rng);
        const auto t = noncoincident_cumulants(model);
        CHECK(reconstruct_coincident_cumulant(t, 4, {1, 1, 2, 3}) == doctest::Approx(direct_cumulant(model, {1, 1, 2, 3})).epsilon(1e-11));
        // every multiset of size <= 5 over 4 sites
        std::vector<int> idx;
        std::function<void(int)> rec = [&](int from) {
            if (!idx.empty())
                CHECK(std::abs(reconstruct_coincident_cumulant(t, 4, idx) - direct_cumulant(model, idx)) < 1e-12);
            if (idx.size() == 5) return;
            for (int i = from; i <= 4; ++i) {
                idx.push_back(i);
                rec(i);
                idx.pop_back();
            }
        };
        rec(1);
    }
}

TEST_CASE("reconstruction matches the inverse product cumulant on paired products") {
    // b1 b1 b2 b2 grouped as {1,2},{3,4}: the products are b1 and b2
    std::mt19937_64 rng(23);
    const auto model = BernoulliModel::random(2, rng);
    const auto t = noncoincident_cumulants(model);
    const auto gamma = SetPartition::from_blocks(4, {{1, 2}, {3, 4}});
    const std::vector<int> sites{1, 1, 2, 2};
    GammaCumulant kg = [&](const std::vector<int>& block) {
        std::vector<int> distinct;
        for (int pos : block) distinct.push_back(sites[static_cast<std::size_t>(pos - 1)]);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        return t.at(distinct);
    };
    CHECK(inverse_product_cumulant(kg, gamma) == doctest::Approx(reconstruct_coincident_cumulant(t, 2, sites)).epsilon(1e-12));
    CHECK(inverse_product_cumulant(kg, gamma) == doctest::Approx(direct_cumulant(model, sites)).epsilon(1e-12));
}

TEST_CASE("symbolic series agree term by term") {
    for (int N = 1; N <= 3; ++N) {
        const auto c = chromatic_series(N, 4);
        CHECK(c == feynman_series(N, 4));
        CHECK(c == taylor_series(N, 4));
    }
}

TEST_CASE("degree-one terms and the e1^3 e2^3 coefficient") {
    const auto s = chromatic_series(2, 6);
    CHECK(s.at(KMonomial{1}) == 1);
    CHECK(s.at(KMonomial{2}) == 1);
    const KMonomial key{1, 1, 2, 2, 3};
    CHECK(e_exponents(key, 2) == std::vector<int>{3, 3});
    CHECK(s.at(key) == 1);
    CHECK(feynman_series(2, 6).at(key) == 1);
    CHECK(taylor_series(2, 6).at(key) == 1);
}

TEST_CASE("numeric expansions match the Taylor coefficients of log Z") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const auto model = BernoulliModel::random(3, rng);
        const auto t = noncoincident_cumulants(model);
        const auto taylor = taylor_expansion_W(model, 4);
        CHECK(graph_expansion_W(t, 3, 4).max_difference(taylor) < 1e-9);
        CHECK(feynman_expansion_W(t, 3, 4).max_difference(taylor) < 1e-9);
    }
    std::mt19937_64 rng2(37);
    const auto m2 = BernoulliModel::random(2, rng2);
    const auto t2 = noncoincident_cumulants(m2);
    CHECK(graph_expansion_W(t2, 2, 4).max_difference(feynman_expansion_W(t2, 2, 4)) < 1e-12);
}

TEST_CASE("truncated series converges to log Z for small fields") {
    std::mt19937_64 rng(41);
    const auto model = BernoulliModel::random(3, rng);
    const auto series = graph_expansion_W(noncoincident_cumulants(model), 3, 8);
    double prev = 1;
    for (double scale : {0.2, 0.1, 0.05}) {
        const std::vector<double> h{scale, -0.5 * scale, 0.7 * scale};
        std::vector<double> e;
        for (double x : h) e.push_back(std::expm1(x));
        const double err = std::abs(series.evaluate(e) - exact_log_partition(model, h));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-10);
}

TEST_CASE("expansion size caps") {
    CHECK_THROWS_AS(chromatic_series(kMaxExpansionSites + 1, 2), SizeLimitError);
    CHECK_THROWS_AS(chromatic_series(2, kMaxExpansionDegree + 1), SizeLimitError);
    CHECK_THROWS_AS(BernoulliModel::independent(std::vector<double>(kMaxBernoulliSites + 1, 0.5)), SizeLimitError);
}

TEST_CASE("pairwise summation") {
    std::vector<double> v(1 << 16, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(6553.6).epsilon(1e-15));
    CHECK(pairwise_sum({}) == 0.0);
}
