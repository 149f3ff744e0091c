#ifndef SSEPFREE_CUMULANTS_HPP
#define SSEPFREE_CUMULANTS_HPP

#include <functional>
#include <map>
#include <vector>

#include "ssepfree/partitions.hpp"

namespace ssepfree {

constexpr int kMaxCumulantOrder = 10;

/// Real values keyed by multisets of variable indices (commutative
/// variables). Either explicit entries or a callable supplying them.
class MultisetTable {
public:
    using Key = std::vector<int>;
    MultisetTable() = default;
    explicit MultisetTable(std::function<double(const Key&)> source) : source_(std::move(source)) {}

    void set(Key key, double value);
    /// Key is sorted before lookup; throws IncompleteTableError if absent.
    double at(Key key) const;
    bool contains(Key key) const;
    const std::map<Key, double>& entries() const { return values_; }

private:
    std::map<Key, double> values_;
    std::function<double(const Key&)> source_;
};

using MomentTable = MultisetTable;
using CumulantTable = MultisetTable;

/// Values of the sub-multiset of `indices` picked by each element of `mask`.
std::vector<int> select(const std::vector<int>& indices, std::uint64_t mask);

/// Joint classical cumulant K(a_i1, ..., a_in) from moments.
double moments_to_cumulants(const MomentTable& m, const std::vector<int>& indices);
/// Joint moment from classical cumulants.
double cumulants_to_moments(const CumulantTable& k, const std::vector<int>& indices);

/// Cumulant of the products over blocks of gamma, grouped by the blocks of xi
/// (xi must be coarser than gamma): sum of K_pi over pi with pi v gamma = xi.
double product_cumulant(const CumulantTable& k, const std::vector<int>& indices, const SetPartition& gamma,
                        const SetPartition& xi);
/// Same, for arbitrary xi, through gamma ^ xi.
double product_cumulant_meet(const CumulantTable& k, const std::vector<int>& indices, const SetPartition& gamma,
                             const SetPartition& xi);

/// Cumulant of the products over the restriction of gamma to a block.
/// Receives the block as sorted 1-based positions.
using GammaCumulant = std::function<double(const std::vector<int>& block)>;

/// Recovers K(a_1..a_n) from cumulants of products over gamma:
/// sum over pi with pi v gamma = 1 of mu(G_{pi,gamma}) prod_blocks gamma-cumulants.
double inverse_product_cumulant(const GammaCumulant& kgamma, const SetPartition& gamma);

/// Free cumulant R(a_s1, ..., a_sn) of an ordered sequence (moments commutative).
double free_cumulants_multilinear(const MomentTable& m, const std::vector<int>& sequence);
/// Free cumulant of the sequence from classical cumulants: sum of K_pi over
/// pi whose least non-crossing majorant is the full block.
double free_from_classical(const CumulantTable& k, const std::vector<int>& sequence);
/// Classical cumulant from free cumulants through crossing graphs.
double classical_from_free(const std::function<double(const std::vector<int>&)>& free_cumulant,
                           const std::vector<int>& sequence);

/// Non-crossing partitions of {1..n} with mu_NC(pi, 1_n), cached.
struct NcTerm {
    std::vector<std::uint64_t> blocks;
    double mobius;
};
const std::vector<NcTerm>& noncrossing_terms(int n);

}  // namespace ssepfree

#endif
