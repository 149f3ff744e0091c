#include <doctest.h>

#include <random>
#include <set>

#include "ssepfree/errors.hpp"
#include "ssepfree/numbers.hpp"
#include "ssepfree/partitions.hpp"

using namespace ssepfree;

namespace {

SetPartition P(int n, std::vector<std::vector<int>> blocks) { return SetPartition::from_blocks(n, blocks); }

// Equivalence relations on {0..n-1} by brute force over all n x n boolean matrices is
// too large; instead count functions {0..n-1} -> {0..n-1} modulo relabelling.
std::set<std::vector<int>> brute_partitions(int n) {
    std::set<std::vector<int>> out;
    std::vector<int> f(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<int> canon(static_cast<std::size_t>(n));
        std::vector<int> seen(static_cast<std::size_t>(n), -1);
        int next = 0;
        for (int i = 0; i < n; ++i) {
            auto& s = seen[static_cast<std::size_t>(f[static_cast<std::size_t>(i)])];
            if (s < 0) s = next++;
            canon[static_cast<std::size_t>(i)] = s;
        }
        out.insert(canon);
        int k = 0;
        while (k < n && ++f[static_cast<std::size_t>(k)] == n) f[static_cast<std::size_t>(k++)] = 0;
        if (k == n) break;
    }
    return out;
}

// Moebius function of [p, q] by the defining recursion over the enumerated interval.
long brute_mobius(const SetPartition& p, const SetPartition& q, const std::vector<SetPartition>& all) {
    std::vector<SetPartition> interval;
    for (const auto& r : all)
        if (refines(p, r) && refines(r, q)) interval.push_back(r);
    std::sort(interval.begin(), interval.end(), [](const SetPartition& a, const SetPartition& b) {
        return a.block_count() > b.block_count();
    });
    std::vector<long> mu(interval.size(), 0);
    for (std::size_t i = 0; i < interval.size(); ++i) {
        if (interval[i] == p) {
            mu[i] = 1;
            continue;
        }
        long s = 0;
        for (std::size_t j = 0; j < i; ++j)
            if (refines(interval[j], interval[i]) && !(interval[j] == interval[i])) s += mu[j];
        mu[i] = -s;
    }
    for (std::size_t i = 0; i < interval.size(); ++i)
        if (interval[i] == q) return mu[i];
    return 0;
}

}  // namespace

TEST_CASE("partition counts match the brute-force count of equivalence relations") {
    CHECK(enumerate_partitions(1).size() == 1);
    CHECK(enumerate_partitions(1)[0] == SetPartition::coarsest(1));
    for (int n = 1; n <= 6; ++n) {
        CAPTURE(n);
        const auto brute = brute_partitions(n);
        const auto list = enumerate_partitions(n);
        CHECK(list.size() == brute.size());
        std::set<std::vector<int>> labels;
        for (const auto& p : list) labels.insert(p.labels());
        CHECK(labels == brute);
    }
    CHECK(enumerate_partitions(3).size() == 5);
    CHECK(enumerate_partitions(4).size() == 15);
}

TEST_CASE("from_blocks rejects malformed input") {
    CHECK_THROWS_AS(P(3, {{1, 2}}), Error);
    CHECK_THROWS_AS(P(3, {{1, 2}, {2, 3}}), Error);
    CHECK_THROWS_AS(P(2, {{1, 3}}), Error);
}

TEST_CASE("refinement order") {
    CHECK(refines(P(2, {{1}, {2}}), P(2, {{1, 2}})));
    CHECK_FALSE(refines(P(2, {{1, 2}}), P(2, {{1}, {2}})));
    CHECK(refines(P(3, {{1, 3}, {2}}), P(3, {{1, 3}, {2}})));
}

TEST_CASE("join and meet") {
    const auto a = P(3, {{1, 2}, {3}});
    const auto b = P(3, {{1}, {2, 3}});
    CHECK(join(a, b) == SetPartition::coarsest(3));
    CHECK(meet(a, b) == SetPartition::finest(3));
    for (int n = 1; n <= 5; ++n)
        for (const auto& p : enumerate_partitions(n)) {
            CHECK(join(p, SetPartition::finest(n)) == p);
            CHECK(meet(p, SetPartition::coarsest(n)) == p);
        }
}

TEST_CASE("join and meet are the least upper and greatest lower bounds") {
    const auto all = enumerate_partitions(4);
    for (const auto& a : all)
        for (const auto& b : all) {
            const auto j = join(a, b), m = meet(a, b);
            CHECK(refines(a, j));
            CHECK(refines(b, j));
            CHECK(refines(m, a));
            CHECK(refines(m, b));
            for (const auto& c : all) {
                if (refines(a, c) && refines(b, c)) CHECK(refines(j, c));
                if (refines(c, a) && refines(c, b)) CHECK(refines(c, m));
            }
        }
}

TEST_CASE("Moebius function of the partition lattice") {
    CHECK(mobius_partition_lattice(SetPartition::finest(4), SetPartition::coarsest(4)) == -6);
    CHECK(mobius_partition_lattice(SetPartition::finest(5), P(5, {{1, 2, 3}, {4, 5}})) == -2);
    for (const auto& p : enumerate_partitions(4)) CHECK(mobius_partition_lattice(p, p) == 1);
    CHECK_THROWS_AS(mobius_partition_lattice(SetPartition::coarsest(3), SetPartition::finest(3)), OrderError);
}

TEST_CASE("Moebius values agree with the defining recursion on every interval (n <= 4)") {
    const auto all = enumerate_partitions(4);
    for (const auto& p : all)
        for (const auto& q : all)
            if (refines(p, q)) CHECK(mobius_partition_lattice(p, q) == brute_mobius(p, q, all));
}

TEST_CASE("sum of mu(p, q) over an interval vanishes unless p == q") {
    const auto all = enumerate_partitions(5);
    const auto bottom = SetPartition::finest(5);
    for (const auto& q : all) {
        BigInt s = 0;
        for (const auto& r : all)
            if (refines(r, q)) s += mobius_partition_lattice(bottom, r);
        CHECK(s == (q == bottom ? 1 : 0));
    }
}

TEST_CASE("non-crossing partitions") {
    CHECK_FALSE(is_noncrossing(P(4, {{1, 3}, {2, 4}})));
    CHECK(is_noncrossing(P(4, {{1, 4}, {2, 3}})));
    CHECK(enumerate_noncrossing(4).size() == 14);
    for (int n = 1; n <= 8; ++n) {
        std::size_t filtered = 0;
        for (const auto& p : enumerate_partitions(n)) filtered += is_noncrossing(p) ? 1 : 0;
        CHECK(enumerate_noncrossing(n).size() == filtered);
        CHECK(BigInt(filtered) == catalan(n));
    }
    CHECK(least_nc_majorant(P(4, {{1, 3}, {2, 4}})) == SetPartition::coarsest(4));
}

TEST_CASE("least non-crossing majorant is the smallest non-crossing partition above") {
    const auto nc = enumerate_noncrossing(5);
    for (const auto& p : enumerate_partitions(5)) {
        const auto m = least_nc_majorant(p);
        CHECK(is_noncrossing(m));
        CHECK(refines(p, m));
        for (const auto& q : nc)
            if (refines(p, q)) CHECK(refines(m, q));
    }
}

TEST_CASE("Moebius function of the non-crossing lattice") {
    CHECK(mobius_nc(SetPartition::finest(4), SetPartition::coarsest(4)) == -5);
    CHECK(mobius_nc(SetPartition::finest(2), SetPartition::coarsest(2)) == -1);
    for (const auto& p : enumerate_noncrossing(4)) CHECK(mobius_nc(p, p) == 1);
    // (-1)^(n-1) Cat_(n-1)
    for (int n = 1; n <= 8; ++n) {
        BigInt expect = catalan(n - 1);
        if (n % 2 == 0) expect = -expect;
        CHECK(mobius_nc(SetPartition::finest(n), SetPartition::coarsest(n)) == expect);
    }
}

TEST_CASE("Kreweras complement sizes add up to n + 1 blocks in total") {
    for (const auto& p : enumerate_noncrossing(6)) {
        const auto sizes = kreweras_complement_sizes(p);
        int total = 0;
        for (int s : sizes) total += s;
        CHECK(total == 6);
        CHECK(static_cast<int>(sizes.size()) + p.block_count() == 7);
    }
}

TEST_CASE("enumeration above the size cap is an error") {
    CHECK_THROWS_AS(enumerate_partitions(kMaxEnumeratedPartitionSize + 1), SizeLimitError);
}

TEST_CASE("number sequences") {
    CHECK(bell(5) == 52);
    CHECK(catalan(4) == 14);
    CHECK(factorial(20) == BigInt("2432902008176640000"));
    CHECK(binomial(10, 3) == 120);
}
