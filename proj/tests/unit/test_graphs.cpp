#include <doctest.h>

#include <random>

#include "ssepfree/errors.hpp"
#include "ssepfree/graphs.hpp"
#include "ssepfree/numbers.hpp"
#include "ssepfree/oracles.hpp"

using namespace ssepfree;

namespace {

// Two K(1), two K(2) and one K(1,2): whites 1 and 2 each meet three blacks.
TaggedBipartiteGraph two_triangles() { return TaggedBipartiteGraph::from_black_tag_sets({1, 1, 2, 2, 3}); }

SimpleGraph random_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("chromatic polynomials of standard graphs") {
    const auto k3 = chromatic_polynomial(SimpleGraph::complete(3));
    CHECK(k3 == IntPolynomial::falling_factorial(3));
    CHECK(k3.evaluate(BigInt(3)) == 6);
    const auto z = IntPolynomial::variable();
    const auto one = IntPolynomial::constant(1);
    CHECK(chromatic_polynomial(SimpleGraph::path(4)) == z * (z - one).pow(3));
    CHECK(chromatic_polynomial(SimpleGraph(1)) == z);
}

TEST_CASE("chromatic polynomial counts proper colourings (random graphs)") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 6;
        const auto g = random_graph(n, 0.5, rng);
        const auto chi = chromatic_polynomial(g);
        for (int k = 1; k <= 4; ++k) CHECK(chi.evaluate(BigInt(k)) == oracle::count_colourings(g, k));
    }
}

TEST_CASE("Moebius values of graphs") {
    CHECK(mu_graph(SimpleGraph::complete(3)) == 2);
    CHECK(mu_graph(two_triangles().black_graph()) == 4);
    for (int n = 1; n <= 8; ++n) {
        CHECK(mu_graph(SimpleGraph::path(n)) == (n % 2 == 1 ? 1 : -1));
        std::vector<std::pair<int, int>> star;
        for (int v = 2; v <= n; ++v) star.push_back({1, v});
        CHECK(mu_graph(SimpleGraph::from_edges(n, star)) == (n % 2 == 1 ? 1 : -1));
    }
    // complete graph: (-1)^(n-1) (n-1)!
    for (int n = 1; n <= 7; ++n) {
        BigInt expect = factorial(n - 1);
        if (n % 2 == 0) expect = -expect;
        CHECK(mu_graph(SimpleGraph::complete(n)) == expect);
    }
}

TEST_CASE("connected-partition lattices") {
    CHECK(connected_partition_lattice(SimpleGraph::cycle(4)).size() == 12);
    for (int n = 1; n <= 5; ++n) CHECK(BigInt(connected_partition_lattice(SimpleGraph::complete(n)).size()) == bell(n));
    const auto edge = connected_partition_lattice(SimpleGraph::complete(2));
    REQUIRE(edge.size() == 2);
    CHECK(std::find(edge.begin(), edge.end(), SetPartition::finest(2)) != edge.end());
    CHECK(std::find(edge.begin(), edge.end(), SetPartition::coarsest(2)) != edge.end());
}

TEST_CASE("meet_g stays inside the connected-partition lattice") {
    const auto g = SimpleGraph::cycle(5);
    const auto lat = connected_partition_lattice(g);
    for (const auto& a : lat)
        for (const auto& b : lat) {
            const auto m = meet_g(g, a, b);
            CHECK(is_connected_partition(g, m));
            CHECK(refines(m, a));
            CHECK(refines(m, b));
        }
}

TEST_CASE("sum over connected partitions of quotient chromatic polynomials is k^n") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 5;
        auto g = random_graph(n, 0.6, rng);
        if (!g.is_connected()) continue;
        for (int k = 1; k <= 5; ++k) {
            BigInt sum = 0;
            for (const auto& p : connected_partition_lattice(g)) sum += chromatic_polynomial(g.quotient(p)).evaluate(BigInt(k));
            BigInt kn = 1;
            for (int i = 0; i < n; ++i) kn *= k;
            CHECK(sum == kn);
        }
    }
}

TEST_CASE("black graphs") {
    CHECK(mu_graph(TaggedBipartiteGraph::from_black_tag_sets({3, 6, 5}).black_graph()) == 2);
    CHECK(TaggedBipartiteGraph::from_black_tag_sets({3, 6, 5}).black_graph() == SimpleGraph::complete(3));
    const auto single = TaggedBipartiteGraph::make(1, {1, 2, 3}, {{0, 0}, {0, 1}, {0, 2}});
    CHECK(single.black_graph().vertex_count() == 1);
    CHECK(single.black_graph().edge_count() == 0);
    const auto bg = two_triangles().black_graph();
    CHECK(bg.vertex_count() == 5);
    CHECK(bg.edge_count() == 6);
    CHECK(chromatic_polynomial(bg) == chromatic_polynomial(SimpleGraph::complete(3)) * chromatic_polynomial(SimpleGraph::complete(3))
                                          .divided_by(IntPolynomial::variable()));
}

TEST_CASE("automorphism counts") {
    const auto h = two_triangles();
    CHECK(automorphism_count(h, false) == 8);
    CHECK(automorphism_count(h, true) == 4);
    CHECK(automorphism_count(TaggedBipartiteGraph::make(1, {1}, {{0, 0}})) == 1);
    CHECK(automorphism_count(TaggedBipartiteGraph::make(2, {1}, {{0, 0}, {1, 0}})) == 2);
}

TEST_CASE("tagged-graph validation") {
    CHECK_THROWS_AS(TaggedBipartiteGraph::make(1, {1, 1}, {{0, 0}, {0, 1}}), DomainError);
    CHECK_THROWS_AS(TaggedBipartiteGraph::make(1, {1}, {{0, 3}}), DomainError);
}

TEST_CASE("enumeration of chromatic-class graphs") {
    const auto one = enumerate_chromatic_graphs(1, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].blacks == 1);
    CHECK(one[0].edges.size() == 1);

    auto contains = [](const std::vector<TaggedBipartiteGraph>& list, const TaggedBipartiteGraph& g) {
        for (const auto& x : list)
            if (x.chromatic_key() == g.chromatic_key()) return true;
        return false;
    };
    CHECK(contains(enumerate_chromatic_graphs(2, 2), TaggedBipartiteGraph::from_black_tag_sets({3})));
    // five edges: K(1)K(1)K(2)K(2)K(1,2) has 2 + 2 + 2 edges on the pair block
    CHECK(contains(enumerate_chromatic_graphs(2, 6), two_triangles()));
    for (const auto& g : enumerate_chromatic_graphs(3, 4)) {
        CHECK(g.connected());
        CHECK(g.chromatic_class());
        CHECK(static_cast<int>(g.edges.size()) <= 4);
    }
}

TEST_CASE("coverings") {
    const auto tree = TaggedBipartiteGraph::from_black_tag_sets({1, 3});
    REQUIRE(tree.cycle_rank() == 0);
    const auto c = coverings(tree);
    REQUIRE(c.size() == 1);
    CHECK(c[0].graph.chromatic_key() == tree.chromatic_key());

    const auto pair = TaggedBipartiteGraph::from_black_tag_sets({3});
    CHECK(coverings(pair).size() == 1);

    const auto h = two_triangles();
    Rational sum = 0;
    for (const auto& cov : coverings(h)) sum += cov.weight();
    CHECK(sum == Rational(black_mobius(h), BigInt(automorphism_count(h, true))));
    CHECK(sum == 1);
}

TEST_CASE("covering identity holds for every small chromatic-class graph") {
    for (int N = 1; N <= 2; ++N)
        for (const auto& g : enumerate_chromatic_graphs(N, 5)) {
            Rational sum = 0;
            for (const auto& cov : coverings(g)) sum += cov.weight();
            CHECK(sum == Rational(black_mobius(g), BigInt(automorphism_count(g, true))));
        }
}

TEST_CASE("size caps are errors") {
    CHECK_THROWS_AS(chromatic_polynomial(SimpleGraph::complete(kMaxChromaticVertices + 1)), SizeLimitError);
    CHECK_THROWS_AS(enumerate_chromatic_graphs(kMaxEnumerationSites + 1, 2), SizeLimitError);
    CHECK_THROWS_AS(connected_graphs_up_to_isomorphism(7), SizeLimitError);
}

TEST_CASE("connected graphs up to isomorphism") {
    const std::size_t expected[] = {1, 1, 2, 6, 21, 112};
    for (int n = 1; n <= 6; ++n) CHECK(connected_graphs_up_to_isomorphism(n).size() == expected[n - 1]);
}
