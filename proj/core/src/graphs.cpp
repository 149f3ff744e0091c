#include "ssepfree/graphs.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "ssepfree/errors.hpp"

namespace ssepfree {

namespace {

using Adjacency = std::vector<std::uint32_t>;

std::uint32_t drop_bit(std::uint32_t m, int v) {
    std::uint32_t low = m & ((std::uint32_t{1} << v) - 1);
    return low | ((m >> (v + 1)) << v);
}

Adjacency remove_vertex(const Adjacency& adj, int v) {
    Adjacency out;
    out.reserve(adj.size() - 1);
    for (std::size_t i = 0; i < adj.size(); ++i)
        if (static_cast<int>(i) != v) out.push_back(drop_bit(adj[i], v));
    return out;
}

Adjacency contract(Adjacency adj, int u, int v) {
    // merge v into u
    std::uint32_t nv = adj[static_cast<std::size_t>(v)] & ~(std::uint32_t{1} << u);
    adj[static_cast<std::size_t>(u)] |= nv;
    adj[static_cast<std::size_t>(u)] &= ~(std::uint32_t{1} << u);
    for (int w = 0; w < static_cast<int>(adj.size()); ++w)
        if ((nv >> w) & 1U) adj[static_cast<std::size_t>(w)] |= std::uint32_t{1} << u;
    return remove_vertex(adj, v);
}

int edge_total(const Adjacency& adj) {
    int e = 0;
    for (auto m : adj) e += std::popcount(m);
    return e / 2;
}

std::uint32_t component_of(const Adjacency& adj, int start, std::uint32_t allowed) {
    std::uint32_t seen = std::uint32_t{1} << start, frontier = seen;
    while (frontier) {
        std::uint32_t next = 0;
        for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[static_cast<std::size_t>(std::countr_zero(f))];
        next &= allowed & ~seen;
        seen |= next;
        frontier = next;
    }
    return seen;
}

Adjacency induced(const Adjacency& adj, std::uint32_t mask) {
    std::vector<int> keep;
    for (std::uint32_t m = mask; m; m &= m - 1) keep.push_back(std::countr_zero(m));
    Adjacency out(keep.size(), 0);
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            if ((adj[static_cast<std::size_t>(keep[i])] >> keep[j]) & 1U) out[i] |= std::uint32_t{1} << j;
    return out;
}

class ChromaticSolver {
public:
    IntPolynomial solve(const Adjacency& adj) {
        const int n = static_cast<int>(adj.size());
        if (n == 0) return IntPolynomial::constant(1);
        auto it = memo_.find(adj);
        if (it != memo_.end()) return it->second;
        IntPolynomial r = compute(adj, n);
        memo_.emplace(adj, r);
        return r;
    }

private:
    IntPolynomial compute(const Adjacency& adj, int n) {
        const std::uint32_t all = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
        std::uint32_t comp = component_of(adj, 0, all);
        if (comp != all) return solve(induced(adj, comp)) * solve(induced(adj, all & ~comp));
        const int e = edge_total(adj);
        const IntPolynomial z = IntPolynomial::variable();
        if (e == n - 1) return z * (z - IntPolynomial::constant(1)).pow(n - 1);
        if (e == n * (n - 1) / 2) return IntPolynomial::falling_factorial(n);
        for (int v = 0; v < n; ++v)
            if (std::popcount(adj[static_cast<std::size_t>(v)]) == 1)
                return (z - IntPolynomial::constant(1)) * solve(remove_vertex(adj, v));
        // vertex of maximum degree
        int u = 0;
        for (int v = 1; v < n; ++v)
            if (std::popcount(adj[static_cast<std::size_t>(v)]) > std::popcount(adj[static_cast<std::size_t>(u)])) u = v;
        if (4 * e > n * (n - 1)) {
            // dense: chi(G) = chi(G + uv) + chi(G / uv) on a non-edge
            std::uint32_t non = all & ~adj[static_cast<std::size_t>(u)] & ~(std::uint32_t{1} << u);
            if (non == 0) {
                for (u = 0; u < n; ++u) {
                    non = all & ~adj[static_cast<std::size_t>(u)] & ~(std::uint32_t{1} << u);
                    if (non) break;
                }
            }
            int v = std::countr_zero(non);
            Adjacency plus = adj;
            plus[static_cast<std::size_t>(u)] |= std::uint32_t{1} << v;
            plus[static_cast<std::size_t>(v)] |= std::uint32_t{1} << u;
            return solve(plus) + solve(contract(adj, u, v));
        }
        int v = std::countr_zero(adj[static_cast<std::size_t>(u)]);
        Adjacency minus = adj;
        minus[static_cast<std::size_t>(u)] &= ~(std::uint32_t{1} << v);
        minus[static_cast<std::size_t>(v)] &= ~(std::uint32_t{1} << u);
        return solve(minus) - solve(contract(adj, u, v));
    }

    std::map<Adjacency, IntPolynomial> memo_;
};

BigInt signed_factorial(int k) {
    BigInt f = factorial(k - 1);
    return (k % 2 == 0) ? BigInt(-f) : f;
}

struct DisjointSets {
    explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
    std::vector<int> parent;
};

}  // namespace

// ---------------------------------------------------------------- SimpleGraph

SimpleGraph::SimpleGraph(int n) {
    if (n < 0 || n > 32) throw SizeLimitError("graphs support up to 32 vertices");
    adj_.assign(static_cast<std::size_t>(n), 0);
}

SimpleGraph SimpleGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    SimpleGraph g(n);
    for (auto [a, b] : edges) {
        if (a < 1 || a > n || b < 1 || b > n) throw DomainError("edge endpoint outside 1..n");
        if (a == b) throw DomainError("loops are not allowed in a simple graph");
        g.add_edge(a - 1, b - 1);
    }
    return g;
}

SimpleGraph SimpleGraph::complete(int n) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

SimpleGraph SimpleGraph::path(int n) {
    SimpleGraph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

SimpleGraph SimpleGraph::cycle(int n) {
    SimpleGraph g = path(n);
    if (n >= 3) g.add_edge(0, n - 1);
    return g;
}

int SimpleGraph::edge_count() const { return edge_total(adj_); }

void SimpleGraph::add_edge(int u, int v) {
    if (u == v) throw DomainError("loops are not allowed in a simple graph");
    adj_.at(static_cast<std::size_t>(u)) |= std::uint32_t{1} << v;
    adj_.at(static_cast<std::size_t>(v)) |= std::uint32_t{1} << u;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < vertex_count(); ++u)
        for (int v = u + 1; v < vertex_count(); ++v)
            if (adjacent(u, v)) out.emplace_back(u + 1, v + 1);
    return out;
}

bool SimpleGraph::is_connected() const {
    const int n = vertex_count();
    if (n == 0) return false;
    std::uint32_t all = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    return component_of(adj_, 0, all) == all;
}

bool SimpleGraph::induces_connected(std::uint32_t mask) const {
    if (mask == 0) return false;
    return component_of(adj_, std::countr_zero(mask), mask) == mask;
}

SimpleGraph SimpleGraph::quotient(const SetPartition& p) const {
    if (p.size() != vertex_count()) throw DomainError("partition does not match the vertex set");
    SimpleGraph q(p.block_count());
    for (auto [a, b] : edges()) {
        int ba = p.block_of(a), bb = p.block_of(b);
        if (ba != bb) q.add_edge(ba, bb);
    }
    return q;
}

std::string SimpleGraph::canonical_form() const {
    const int n = vertex_count();
    if (n > 8) throw SizeLimitError("canonical_form supports up to 8 vertices");
    // only permutations that list vertices by nondecreasing degree
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    auto deg = [&](int v) { return std::popcount(adj_[static_cast<std::size_t>(v)]); };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg(a) < deg(b); });
    std::vector<std::pair<int, int>> groups;  // [begin, end) of equal degree
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && deg(order[static_cast<std::size_t>(j)]) == deg(order[static_cast<std::size_t>(i)])) ++j;
        groups.emplace_back(i, j);
        i = j;
    }
    std::string best;
    std::function<void(std::size_t)> rec = [&](std::size_t gi) {
        if (gi == groups.size()) {
            std::string s;
            s.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) s.push_back(adjacent(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]) ? '1' : '0');
            if (best.empty() || s < best) best = s;
            return;
        }
        auto [b, e] = groups[gi];
        std::sort(order.begin() + b, order.begin() + e);
        do {
            rec(gi + 1);
        } while (std::next_permutation(order.begin() + b, order.begin() + e));
    };
    rec(0);
    // degree prefix keeps graphs of different degree sequences apart
    std::vector<int> degs;
    for (int v = 0; v < n; ++v) degs.push_back(deg(v));
    std::sort(degs.begin(), degs.end());
    std::ostringstream key;
    key << n << ':';
    for (int d : degs) key << d << ',';
    key << ':' << best;
    return key.str();
}

IntPolynomial chromatic_polynomial(const SimpleGraph& g) {
    if (g.vertex_count() > kMaxChromaticVertices)
        throw SizeLimitError("chromatic_polynomial supports up to " + std::to_string(kMaxChromaticVertices) + " vertices");
    ChromaticSolver solver;
    return solver.solve(g.adjacency());
}

BigInt mu_graph(const SimpleGraph& g) {
    if (!g.is_connected()) throw ConnectivityError("mu_graph requires a connected graph");
    return chromatic_polynomial(g).coefficient(1);
}

bool is_connected_partition(const SimpleGraph& g, const SetPartition& p) {
    if (p.size() != g.vertex_count()) throw DomainError("partition does not match the vertex set");
    for (auto m : p.block_masks())
        if (!g.induces_connected(static_cast<std::uint32_t>(m))) return false;
    return true;
}

std::vector<SetPartition> connected_partition_lattice(const SimpleGraph& g) {
    const int n = g.vertex_count();
    if (n < 1 || n > kMaxLatticeVertices)
        throw SizeLimitError("connected_partition_lattice supports 1..." + std::to_string(kMaxLatticeVertices) + " vertices");
    std::vector<SetPartition> out;
    std::vector<std::uint32_t> masks;
    for_each_partition(n, [&](const std::vector<int>& labels, int k) {
        masks.assign(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < n; ++i) masks[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] |= std::uint32_t{1} << i;
        for (auto m : masks)
            if (!g.induces_connected(m)) return;
        out.push_back(SetPartition::from_labels(labels));
    });
    return out;
}

SetPartition meet_g(const SimpleGraph& g, const SetPartition& a, const SetPartition& b) {
    SetPartition m = meet(a, b);
    if (m.size() != g.vertex_count()) throw DomainError("partition does not match the vertex set");
    std::vector<int> labels(static_cast<std::size_t>(m.size()), -1);
    int next = 0;
    for (auto mask : m.block_masks()) {
        auto rest = static_cast<std::uint32_t>(mask);
        while (rest) {
            std::uint32_t comp = component_of(g.adjacency(), std::countr_zero(rest), rest);
            for (std::uint32_t c = comp; c; c &= c - 1) labels[static_cast<std::size_t>(std::countr_zero(c))] = next;
            ++next;
            rest &= ~comp;
        }
    }
    return SetPartition::from_labels(labels);
}

std::vector<SimpleGraph> connected_graphs_up_to_isomorphism(int n) {
    if (n < 1 || n > 6) throw SizeLimitError("connected graph enumeration supports 1..6 vertices");
    const int pairs = n * (n - 1) / 2;
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::set<std::string> seen;
    std::vector<SimpleGraph> out;
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << pairs); ++bits) {
        SimpleGraph g(n);
        for (int s = 0; s < pairs; ++s)
            if ((bits >> s) & 1U) g.add_edge(slots[static_cast<std::size_t>(s)].first, slots[static_cast<std::size_t>(s)].second);
        if (!g.is_connected()) continue;
        if (seen.insert(g.canonical_form()).second) out.push_back(g);
    }
    return out;
}

// ------------------------------------------------------- TaggedBipartiteGraph

TaggedBipartiteGraph TaggedBipartiteGraph::make(int blacks, std::vector<int> white_tags, std::vector<std::pair<int, int>> edges) {
    TaggedBipartiteGraph g{blacks, std::move(white_tags), std::move(edges)};
    std::sort(g.edges.begin(), g.edges.end());
    g.validate();
    return g;
}

TaggedBipartiteGraph TaggedBipartiteGraph::from_black_tag_sets(const std::vector<std::uint32_t>& sets) {
    std::uint32_t all = 0;
    for (auto s : sets) {
        if (s == 0) throw DomainError("black vertex without white neighbours");
        all |= s;
    }
    std::vector<int> tags;
    std::map<int, int> position;
    for (std::uint32_t m = all; m; m &= m - 1) {
        int t = std::countr_zero(m) + 1;
        position[t] = static_cast<int>(tags.size());
        tags.push_back(t);
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t b = 0; b < sets.size(); ++b)
        for (std::uint32_t m = sets[b]; m; m &= m - 1) edges.emplace_back(static_cast<int>(b), position[std::countr_zero(m) + 1]);
    return make(static_cast<int>(sets.size()), std::move(tags), std::move(edges));
}

void TaggedBipartiteGraph::validate() const {
    if (blacks < 0) throw DomainError("negative number of black vertices");
    if (blacks + whites() > 32) throw SizeLimitError("bipartite graphs support up to 32 vertices");
    for (int t : white_tags)
        if (t < 1 || t > 32) throw DomainError("white tags must lie in 1..32");
    std::vector<std::set<int>> seen(static_cast<std::size_t>(blacks));
    std::vector<int> bdeg(static_cast<std::size_t>(blacks), 0), wdeg(static_cast<std::size_t>(whites()), 0);
    for (auto [b, w] : edges) {
        if (b < 0 || b >= blacks || w < 0 || w >= whites()) throw DomainError("edge endpoint out of range");
        int tag = white_tags[static_cast<std::size_t>(w)];
        if (!seen[static_cast<std::size_t>(b)].insert(tag).second)
            throw DomainError("black vertex " + std::to_string(b) + " touches two whites with tag " + std::to_string(tag));
        ++bdeg[static_cast<std::size_t>(b)];
        ++wdeg[static_cast<std::size_t>(w)];
    }
    for (int d : bdeg)
        if (d == 0) throw DomainError("isolated black vertex");
    for (int d : wdeg)
        if (d == 0) throw DomainError("isolated white vertex");
}

bool TaggedBipartiteGraph::chromatic_class() const {
    std::set<int> t(white_tags.begin(), white_tags.end());
    return t.size() == white_tags.size();
}

bool TaggedBipartiteGraph::connected() const {
    const int n = blacks + whites();
    if (n == 0) return false;
    DisjointSets ds(n);
    for (auto [b, w] : edges) ds.unite(b, blacks + w);
    for (int v = 1; v < n; ++v)
        if (ds.find(v) != ds.find(0)) return false;
    return true;
}

int TaggedBipartiteGraph::cycle_rank() const {
    const int n = blacks + whites();
    DisjointSets ds(n);
    for (auto [b, w] : edges) ds.unite(b, blacks + w);
    int comps = 0;
    for (int v = 0; v < n; ++v)
        if (ds.find(v) == v) ++comps;
    return static_cast<int>(edges.size()) - n + comps;
}

std::vector<int> TaggedBipartiteGraph::white_degrees() const {
    std::vector<int> d(static_cast<std::size_t>(whites()), 0);
    for (auto e : edges) ++d[static_cast<std::size_t>(e.second)];
    return d;
}

std::vector<int> TaggedBipartiteGraph::black_degrees() const {
    std::vector<int> d(static_cast<std::size_t>(blacks), 0);
    for (auto e : edges) ++d[static_cast<std::size_t>(e.first)];
    return d;
}

std::vector<std::uint32_t> TaggedBipartiteGraph::black_white_masks() const {
    std::vector<std::uint32_t> m(static_cast<std::size_t>(blacks), 0);
    for (auto [b, w] : edges) m[static_cast<std::size_t>(b)] |= std::uint32_t{1} << w;
    return m;
}

std::vector<std::uint32_t> TaggedBipartiteGraph::black_tag_sets() const {
    std::vector<std::uint32_t> m(static_cast<std::size_t>(blacks), 0);
    for (auto [b, w] : edges) m[static_cast<std::size_t>(b)] |= std::uint32_t{1} << (white_tags[static_cast<std::size_t>(w)] - 1);
    return m;
}

SimpleGraph TaggedBipartiteGraph::black_graph() const {
    SimpleGraph g(blacks);
    auto m = black_white_masks();
    for (int a = 0; a < blacks; ++a)
        for (int b = a + 1; b < blacks; ++b)
            if (m[static_cast<std::size_t>(a)] & m[static_cast<std::size_t>(b)]) g.add_edge(a, b);
    return g;
}

SimpleGraph TaggedBipartiteGraph::white_graph() const {
    SimpleGraph g(whites());
    for (auto m : black_white_masks())
        for (std::uint32_t x = m; x; x &= x - 1)
            for (std::uint32_t y = x & (x - 1); y; y &= y - 1) g.add_edge(std::countr_zero(x), std::countr_zero(y));
    return g;
}

std::vector<std::uint32_t> TaggedBipartiteGraph::chromatic_key() const {
    if (!chromatic_class()) throw ClassError("graph has repeated white tags");
    auto s = black_tag_sets();
    std::sort(s.begin(), s.end());
    return s;
}

std::string TaggedBipartiteGraph::to_string() const {
    std::ostringstream os;
    os << "blacks=" << blacks << " whites=[";
    for (std::size_t i = 0; i < white_tags.size(); ++i) os << (i ? "," : "") << white_tags[i];
    os << "] edges=[";
    for (std::size_t i = 0; i < edges.size(); ++i) os << (i ? "," : "") << '(' << edges[i].first << ',' << edges[i].second << ')';
    os << ']';
    return os.str();
}

namespace {

long count_automorphisms(const TaggedBipartiteGraph& g, bool respect_tags) {
    const int n = g.blacks + g.whites();
    std::vector<std::vector<int>> mult(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (auto [b, w] : g.edges) {
        ++mult[static_cast<std::size_t>(b)][static_cast<std::size_t>(g.blacks + w)];
        ++mult[static_cast<std::size_t>(g.blacks + w)][static_cast<std::size_t>(b)];
    }
    std::vector<int> colour(static_cast<std::size_t>(n), 0), degree(static_cast<std::size_t>(n), 0);
    for (int w = 0; w < g.whites(); ++w) colour[static_cast<std::size_t>(g.blacks + w)] = respect_tags ? g.white_tags[static_cast<std::size_t>(w)] : 1;
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u) degree[static_cast<std::size_t>(v)] += mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
    std::vector<int> image(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    long count = 0;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            ++count;
            return;
        }
        for (int j = 0; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)] || colour[static_cast<std::size_t>(j)] != colour[static_cast<std::size_t>(i)] ||
                degree[static_cast<std::size_t>(j)] != degree[static_cast<std::size_t>(i)])
                continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k)
                ok = mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] == mult[static_cast<std::size_t>(j)][static_cast<std::size_t>(image[static_cast<std::size_t>(k)])];
            if (!ok) continue;
            image[static_cast<std::size_t>(i)] = j;
            used[static_cast<std::size_t>(j)] = true;
            rec(i + 1);
            used[static_cast<std::size_t>(j)] = false;
        }
    };
    rec(0);
    return count;
}

// Permutations of blacks preserving the white neighbourhood of every black;
// for distinct tags these are all the tag-preserving automorphisms.
std::vector<std::vector<int>> black_symmetries(const TaggedBipartiteGraph& g) {
    auto masks = g.black_white_masks();
    std::map<std::uint32_t, std::vector<int>> classes;
    for (int b = 0; b < g.blacks; ++b) classes[masks[static_cast<std::size_t>(b)]].push_back(b);
    std::vector<std::vector<int>> perms{std::vector<int>(static_cast<std::size_t>(g.blacks))};
    std::iota(perms[0].begin(), perms[0].end(), 0);
    for (auto& [mask, members] : classes) {
        std::vector<std::vector<int>> next;
        std::vector<int> img = members;
        do {
            for (const auto& p : perms) {
                auto q = p;
                for (std::size_t i = 0; i < members.size(); ++i) q[static_cast<std::size_t>(members[i])] = img[i];
                next.push_back(std::move(q));
            }
        } while (std::next_permutation(img.begin(), img.end()));
        perms = std::move(next);
    }
    return perms;
}

}  // namespace

long automorphism_count(const TaggedBipartiteGraph& g, bool respect_tags) {
    if (g.blacks + g.whites() > kMaxAutomorphismVertices)
        throw SizeLimitError("automorphism_count supports up to " + std::to_string(kMaxAutomorphismVertices) + " vertices");
    return count_automorphisms(g, respect_tags);
}

BigInt black_mobius(const TaggedBipartiteGraph& g) { return mu_graph(g.black_graph()); }

BigInt white_eta(const TaggedBipartiteGraph& g) {
    BigInt r = 1;
    for (int k : g.white_degrees()) r *= signed_factorial(k);
    return r;
}

namespace {

// Connected multisets of nonempty tag sets over {1..N}; cost(set) is charged
// against the budget.
template <class Cost>
std::vector<TaggedBipartiteGraph> enumerate_tag_multisets(int N, int budget0, Cost cost) {
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << N); ++s) subsets.push_back(s);
    std::sort(subsets.begin(), subsets.end(), [](auto a, auto b) {
        return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
    });
    std::vector<TaggedBipartiteGraph> out;
    std::vector<std::uint32_t> chosen;
    auto connected_sets = [&]() {
        // union of tag sets forms one component when sets are linked by shared tags
        std::uint32_t reach = chosen[0];
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto s : chosen)
                if ((s & reach) && (s | reach) != reach) {
                    reach |= s;
                    grew = true;
                }
        }
        for (auto s : chosen)
            if (!(s & reach)) return false;
        return true;
    };
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int budget) {
        if (!chosen.empty() && connected_sets()) out.push_back(TaggedBipartiteGraph::from_black_tag_sets(chosen));
        for (std::size_t i = from; i < subsets.size(); ++i) {
            int c = cost(subsets[i]);
            if (c > budget) continue;
            chosen.push_back(subsets[i]);
            rec(i, budget - c);
            chosen.pop_back();
        }
    };
    rec(0, budget0);
    return out;
}

}  // namespace

std::vector<TaggedBipartiteGraph> enumerate_chromatic_graphs(int N, int max_edges) {
    if (N < 1 || N > kMaxEnumerationSites) throw SizeLimitError("enumerate_chromatic_graphs supports 1 <= N <= 6");
    if (max_edges < 1 || max_edges > kMaxEnumerationEdges) throw SizeLimitError("enumerate_chromatic_graphs supports 1 <= max_edges <= 8");
    return enumerate_tag_multisets(N, max_edges, [](std::uint32_t s) { return std::popcount(s); });
}

std::vector<TaggedBipartiteGraph> enumerate_chromatic_graphs_by_blacks(int N, int max_blacks) {
    if (N < 1 || N > 4) throw SizeLimitError("enumerate_chromatic_graphs_by_blacks supports 1 <= N <= 4");
    if (max_blacks < 1 || max_blacks > 4) throw SizeLimitError("enumerate_chromatic_graphs_by_blacks supports 1 <= max_blacks <= 4");
    return enumerate_tag_multisets(N, max_blacks, [](std::uint32_t) { return 1; });
}

std::vector<Covering> coverings(const TaggedBipartiteGraph& g) {
    g.validate();
    if (!g.chromatic_class()) throw ClassError("coverings require distinct white tags");
    if (!g.connected()) throw ConnectivityError("coverings require a connected graph");
    if (static_cast<int>(g.edges.size()) > kMaxCoveringEdges) throw SizeLimitError("coverings support up to " + std::to_string(kMaxCoveringEdges) + " edges");

    // blacks incident to each white
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(g.whites()));
    for (auto [b, w] : g.edges) incident[static_cast<std::size_t>(w)].push_back(b);
    // candidate splittings per white, each a list of black bitmasks
    std::vector<std::vector<std::vector<std::uint32_t>>> options(static_cast<std::size_t>(g.whites()));
    for (int w = 0; w < g.whites(); ++w) {
        const auto& inc = incident[static_cast<std::size_t>(w)];
        for_each_partition(static_cast<int>(inc.size()), [&](const std::vector<int>& labels, int k) {
            std::vector<std::uint32_t> blocks(static_cast<std::size_t>(k), 0);
            for (std::size_t i = 0; i < inc.size(); ++i) blocks[static_cast<std::size_t>(labels[i])] |= std::uint32_t{1} << inc[i];
            options[static_cast<std::size_t>(w)].push_back(std::move(blocks));
        });
    }
    const auto symmetries = black_symmetries(g);
    auto key_of = [&](const std::vector<const std::vector<std::uint32_t>*>& choice) {
        std::vector<std::uint32_t> best;
        for (const auto& perm : symmetries) {
            std::vector<std::uint32_t> key;
            for (const auto* blocks : choice) {
                std::vector<std::uint32_t> mapped;
                for (auto m : *blocks) {
                    std::uint32_t x = 0;
                    for (std::uint32_t r = m; r; r &= r - 1) x |= std::uint32_t{1} << perm[static_cast<std::size_t>(std::countr_zero(r))];
                    mapped.push_back(x);
                }
                std::sort(mapped.begin(), mapped.end());
                key.insert(key.end(), mapped.begin(), mapped.end());
                key.push_back(0);
            }
            if (best.empty() || key < best) best = std::move(key);
        }
        return best;
    };

    std::set<std::vector<std::uint32_t>> seen;
    std::vector<Covering> out;
    std::vector<const std::vector<std::uint32_t>*> choice(static_cast<std::size_t>(g.whites()));
    std::function<void(int)> rec = [&](int w) {
        if (w == g.whites()) {
            TaggedBipartiteGraph h;
            h.blacks = g.blacks;
            for (int v = 0; v < g.whites(); ++v)
                for (auto m : *choice[static_cast<std::size_t>(v)]) {
                    int pos = static_cast<int>(h.white_tags.size());
                    h.white_tags.push_back(g.white_tags[static_cast<std::size_t>(v)]);
                    for (std::uint32_t r = m; r; r &= r - 1) h.edges.emplace_back(std::countr_zero(r), pos);
                }
            std::sort(h.edges.begin(), h.edges.end());
            if (!h.connected()) return;
            if (!seen.insert(key_of(choice)).second) return;
            h.validate();
            out.push_back(Covering{h, white_eta(h), count_automorphisms(h, true)});
            return;
        }
        for (const auto& opt : options[static_cast<std::size_t>(w)]) {
            choice[static_cast<std::size_t>(w)] = &opt;
            rec(w + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace ssepfree

namespace ssepfree {

SimpleGraph interaction_graph(const SetPartition& pi, const SetPartition& gamma) {
    if (pi.size() != gamma.size()) throw DomainError("partitions of different ground sets");
    SimpleGraph g(pi.block_count());
    for (auto gm : gamma.block_masks()) {
        std::uint32_t touched = 0;
        for (auto r = gm; r; r &= r - 1) touched |= std::uint32_t{1} << pi.labels()[static_cast<std::size_t>(std::countr_zero(r))];
        for (std::uint32_t x = touched; x; x &= x - 1)
            for (std::uint32_t y = x & (x - 1); y; y &= y - 1) g.add_edge(std::countr_zero(x), std::countr_zero(y));
    }
    return g;
}

SimpleGraph crossing_graph(const SetPartition& pi) {
    auto blocks = pi.blocks();
    SimpleGraph g(pi.block_count());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (blocks_cross(blocks[i], blocks[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

}  // namespace ssepfree
