#ifndef SSEPFREE_GRAPHS_HPP
#define SSEPFREE_GRAPHS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ssepfree/numbers.hpp"
#include "ssepfree/partitions.hpp"
#include "ssepfree/polynomial.hpp"

namespace ssepfree {

constexpr int kMaxChromaticVertices = 16;
constexpr int kMaxLatticeVertices = 10;
constexpr int kMaxAutomorphismVertices = 12;
constexpr int kMaxEnumerationSites = 6;
constexpr int kMaxEnumerationEdges = 8;
constexpr int kMaxCoveringEdges = 9;

/// Simple undirected graph on vertices 0..n-1 (exposed as 1..n in I/O).
class SimpleGraph {
public:
    explicit SimpleGraph(int n = 0);
    /// Edges given with 1-based endpoints.
    static SimpleGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
    static SimpleGraph complete(int n);
    static SimpleGraph path(int n);
    static SimpleGraph cycle(int n);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const;
    bool adjacent(int u, int v) const { return (adj_[static_cast<std::size_t>(u)] >> v) & 1U; }
    std::uint32_t neighbours(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    const std::vector<std::uint32_t>& adjacency() const { return adj_; }
    void add_edge(int u, int v);
    /// Edges as 1-based pairs (u < v), lexicographic.
    std::vector<std::pair<int, int>> edges() const;

    bool is_connected() const;
    /// Is the subgraph induced on the vertex bitmask connected (empty mask: false)?
    bool induces_connected(std::uint32_t mask) const;
    /// Graph on the blocks of p; two blocks adjacent iff some edge joins them.
    SimpleGraph quotient(const SetPartition& p) const;
    /// Canonical edge bitstring under all vertex relabelings (n <= 8).
    std::string canonical_form() const;

    friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

private:
    std::vector<std::uint32_t> adj_;
};

IntPolynomial chromatic_polynomial(const SimpleGraph& g);
/// Moebius value of the bond lattice between bottom and top: [z] chi_G(z).
BigInt mu_graph(const SimpleGraph& g);
bool is_connected_partition(const SimpleGraph& g, const SetPartition& p);
/// Partitions of V(g) whose blocks induce connected subgraphs.
std::vector<SetPartition> connected_partition_lattice(const SimpleGraph& g);
/// Meet in the connected-partition lattice: ordinary meet, then split blocks into components.
SetPartition meet_g(const SimpleGraph& g, const SetPartition& a, const SetPartition& b);
/// Graph on the blocks of pi; two blocks adjacent iff some block of gamma meets both.
SimpleGraph interaction_graph(const SetPartition& pi, const SetPartition& gamma);
/// Graph on the blocks of pi; two blocks adjacent iff they cross.
SimpleGraph crossing_graph(const SetPartition& pi);
/// All connected simple graphs on n vertices up to isomorphism (n <= 6).
std::vector<SimpleGraph> connected_graphs_up_to_isomorphism(int n);

/// Bipartite graph with black vertices 0..blacks-1 and tagged white vertices.
/// Edge (b, w) joins black b to white w (both 0-based positions).
/// Invariant: whites adjacent to a common black carry distinct tags.
struct TaggedBipartiteGraph {
    int blacks = 0;
    std::vector<int> white_tags;
    std::vector<std::pair<int, int>> edges;

    static TaggedBipartiteGraph make(int blacks, std::vector<int> white_tags, std::vector<std::pair<int, int>> edges);
    /// Chromatic-class graph from the tag sets (bit t-1 for tag t) of its blacks.
    static TaggedBipartiteGraph from_black_tag_sets(const std::vector<std::uint32_t>& sets);

    /// Throws DomainError on bad indices or a violated distinct-tag condition.
    void validate() const;
    int whites() const { return static_cast<int>(white_tags.size()); }
    /// All white tags distinct.
    bool chromatic_class() const;
    bool connected() const;
    int cycle_rank() const;
    std::vector<int> white_degrees() const;
    std::vector<int> black_degrees() const;
    /// For each black, bitmask of white positions it touches.
    std::vector<std::uint32_t> black_white_masks() const;
    /// For each black, bitmask of white tags it touches.
    std::vector<std::uint32_t> black_tag_sets() const;
    /// Blacks adjacent iff they share a white neighbour.
    SimpleGraph black_graph() const;
    /// Whites adjacent iff they share a black neighbour.
    SimpleGraph white_graph() const;
    /// Canonical key of a chromatic-class graph: sorted black tag sets.
    std::vector<std::uint32_t> chromatic_key() const;

    std::string to_string() const;
};

/// Number of automorphisms: permutations of blacks and whites preserving
/// edges (with multiplicity) and, if respect_tags, white tags.
long automorphism_count(const TaggedBipartiteGraph& g, bool respect_tags = true);
/// mu of the black graph.
BigInt black_mobius(const TaggedBipartiteGraph& g);
/// Product over whites of (-1)^(k-1) (k-1)!, k the white degree.
BigInt white_eta(const TaggedBipartiteGraph& g);

/// Connected chromatic-class graphs with white tags in {1..N} and at most
/// max_edges edges, one per distinct graph (tag-preserving isomorphism).
std::vector<TaggedBipartiteGraph> enumerate_chromatic_graphs(int N, int max_edges);
/// Same family bounded by the number of blacks instead of edges.
std::vector<TaggedBipartiteGraph> enumerate_chromatic_graphs_by_blacks(int N, int max_blacks);

struct Covering {
    TaggedBipartiteGraph graph;
    BigInt eta;
    long automorphisms;
    Rational weight() const { return Rational(eta, automorphisms); }
};

/// Connected graphs obtained from a chromatic-class graph by splitting each
/// white into equally tagged whites, one per isomorphism class.
std::vector<Covering> coverings(const TaggedBipartiteGraph& g);

}  // namespace ssepfree

#endif
