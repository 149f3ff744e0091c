#ifndef SSEPFREE_PARTITIONS_HPP
#define SSEPFREE_PARTITIONS_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ssepfree/numbers.hpp"

namespace ssepfree {

constexpr int kMaxEnumeratedPartitionSize = 12;

/// Set partition of {1..n}. Stored as a restricted growth string: element i
/// (0-based) carries the index of its block, blocks numbered by first
/// appearance. Two partitions compare equal iff they have the same blocks.
class SetPartition {
public:
    SetPartition() = default;

    /// Blocks hold 1-based elements; every element of {1..n} must occur once.
    static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
    /// Arbitrary integer labels per element; equal labels share a block.
    static SetPartition from_labels(const std::vector<int>& labels);
    static SetPartition finest(int n);
    static SetPartition coarsest(int n);

    int size() const { return static_cast<int>(labels_.size()); }
    int block_count() const { return blocks_; }
    const std::vector<int>& labels() const { return labels_; }
    /// Block index (0-based) of a 1-based element.
    int block_of(int element) const { return labels_.at(static_cast<std::size_t>(element - 1)); }
    /// Blocks as sorted lists of 1-based elements, ordered by smallest element.
    std::vector<std::vector<int>> blocks() const;
    /// Block i as a bitmask over 0-based elements (n <= 64).
    std::vector<std::uint64_t> block_masks() const;
    std::vector<int> block_sizes() const;

    std::string to_string() const;

    friend bool operator==(const SetPartition&, const SetPartition&) = default;
    friend auto operator<=>(const SetPartition&, const SetPartition&) = default;

private:
    std::vector<int> labels_;
    int blocks_ = 0;
};

/// Calls f(labels, block_count) for every partition of {1..n} in
/// restricted-growth order. No size cap; cost is Bell(n).
void for_each_partition(int n, const std::function<void(const std::vector<int>&, int)>& f);

std::vector<SetPartition> enumerate_partitions(int n);

bool refines(const SetPartition& finer, const SetPartition& coarser);
SetPartition join(const SetPartition& a, const SetPartition& b);
SetPartition meet(const SetPartition& a, const SetPartition& b);

/// Moebius function of the full partition lattice on [p1, p2].
BigInt mobius_partition_lattice(const SetPartition& p1, const SetPartition& p2);

bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b);
bool is_noncrossing(const SetPartition& p);
std::vector<SetPartition> enumerate_noncrossing(int n);
/// Smallest non-crossing partition above p: merge crossing blocks until none cross.
SetPartition least_nc_majorant(const SetPartition& p);
/// Block sizes of the Kreweras complement of a non-crossing partition.
std::vector<int> kreweras_complement_sizes(const SetPartition& p);
/// Moebius function of the non-crossing lattice on [p1, p2].
BigInt mobius_nc(const SetPartition& p1, const SetPartition& p2);

}  // namespace ssepfree

#endif
