#include "ssepfree/partitions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "ssepfree/errors.hpp"

namespace ssepfree {

namespace {

std::vector<int> canonical_labels(const std::vector<int>& labels, int& count) {
    std::map<int, int> rename;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = rename.find(labels[i]);
        if (it == rename.end()) it = rename.emplace(labels[i], static_cast<int>(rename.size())).first;
        out[i] = it->second;
    }
    count = static_cast<int>(rename.size());
    return out;
}

void require_same_size(const SetPartition& a, const SetPartition& b) {
    if (a.size() != b.size()) throw DomainError("partitions of different ground sets");
}

BigInt signed_catalan(int k) {
    // (-1)^(k-1) Cat_(k-1): Moebius value of NC(k) between bottom and top
    BigInt c = catalan(k - 1);
    return (k % 2 == 0) ? BigInt(-c) : c;
}

}  // namespace

SetPartition SetPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    if (n < 0) throw DomainError("negative ground set size");
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw DomainError("empty block");
        for (int e : blocks[b]) {
            if (e < 1 || e > n) throw DomainError("element " + std::to_string(e) + " outside 1.." + std::to_string(n));
            if (labels[static_cast<std::size_t>(e - 1)] != -1)
                throw DomainError("element " + std::to_string(e) + " occurs twice");
            labels[static_cast<std::size_t>(e - 1)] = static_cast<int>(b);
        }
    }
    for (int i = 0; i < n; ++i)
        if (labels[static_cast<std::size_t>(i)] == -1) throw DomainError("element " + std::to_string(i + 1) + " missing");
    return from_labels(labels);
}

SetPartition SetPartition::from_labels(const std::vector<int>& labels) {
    SetPartition p;
    p.labels_ = canonical_labels(labels, p.blocks_);
    return p;
}

SetPartition SetPartition::finest(int n) {
    std::vector<int> l(static_cast<std::size_t>(n));
    std::iota(l.begin(), l.end(), 0);
    return from_labels(l);
}

SetPartition SetPartition::coarsest(int n) { return from_labels(std::vector<int>(static_cast<std::size_t>(n), 0)); }

std::vector<std::vector<int>> SetPartition::blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks_));
    for (std::size_t i = 0; i < labels_.size(); ++i) out[static_cast<std::size_t>(labels_[i])].push_back(static_cast<int>(i) + 1);
    return out;
}

std::vector<std::uint64_t> SetPartition::block_masks() const {
    if (size() > 64) throw SizeLimitError("block masks need n <= 64");
    std::vector<std::uint64_t> out(static_cast<std::size_t>(blocks_), 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) out[static_cast<std::size_t>(labels_[i])] |= std::uint64_t{1} << i;
    return out;
}

std::vector<int> SetPartition::block_sizes() const {
    std::vector<int> out(static_cast<std::size_t>(blocks_), 0);
    for (int l : labels_) ++out[static_cast<std::size_t>(l)];
    return out;
}

std::string SetPartition::to_string() const {
    std::ostringstream os;
    os << '[';
    auto bs = blocks();
    for (std::size_t b = 0; b < bs.size(); ++b) {
        if (b) os << ',';
        os << '[';
        for (std::size_t i = 0; i < bs[b].size(); ++i) {
            if (i) os << ',';
            os << bs[b][i];
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

void for_each_partition(int n, const std::function<void(const std::vector<int>&, int)>& f) {
    if (n < 0) throw DomainError("negative ground set size");
    if (n == 0) {
        f({}, 0);
        return;
    }
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::vector<int> maxprefix(static_cast<std::size_t>(n), 0);  // max label among a[0..i]
    while (true) {
        f(a, maxprefix.back() + 1);
        int i = n - 1;
        while (i > 0 && a[static_cast<std::size_t>(i)] > maxprefix[static_cast<std::size_t>(i - 1)]) --i;
        if (i == 0) return;
        ++a[static_cast<std::size_t>(i)];
        maxprefix[static_cast<std::size_t>(i)] = std::max(maxprefix[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n; ++j) {
            a[static_cast<std::size_t>(j)] = 0;
            maxprefix[static_cast<std::size_t>(j)] = maxprefix[static_cast<std::size_t>(j - 1)];
        }
    }
}

std::vector<SetPartition> enumerate_partitions(int n) {
    if (n < 1 || n > kMaxEnumeratedPartitionSize)
        throw SizeLimitError("enumerate_partitions supports 1 <= n <= " + std::to_string(kMaxEnumeratedPartitionSize));
    std::vector<SetPartition> out;
    out.reserve(bell(n).convert_to<std::size_t>());
    for_each_partition(n, [&](const std::vector<int>& l, int) { out.push_back(SetPartition::from_labels(l)); });
    return out;
}

bool refines(const SetPartition& finer, const SetPartition& coarser) {
    require_same_size(finer, coarser);
    std::vector<int> image(static_cast<std::size_t>(finer.block_count()), -1);
    for (int i = 0; i < finer.size(); ++i) {
        int& img = image[static_cast<std::size_t>(finer.labels()[static_cast<std::size_t>(i)])];
        int c = coarser.labels()[static_cast<std::size_t>(i)];
        if (img == -1) img = c;
        else if (img != c) return false;
    }
    return true;
}

SetPartition join(const SetPartition& a, const SetPartition& b) {
    require_same_size(a, b);
    const int n = a.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const SetPartition* p : {&a, &b}) {
        std::vector<int> first(static_cast<std::size_t>(p->block_count()), -1);
        for (int i = 0; i < n; ++i) {
            int& f = first[static_cast<std::size_t>(p->labels()[static_cast<std::size_t>(i)])];
            if (f == -1) f = i;
            else parent[static_cast<std::size_t>(find(i))] = find(f);
        }
    }
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = find(i);
    return SetPartition::from_labels(labels);
}

SetPartition meet(const SetPartition& a, const SetPartition& b) {
    require_same_size(a, b);
    std::vector<int> labels(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i)
        labels[static_cast<std::size_t>(i)] = a.labels()[static_cast<std::size_t>(i)] * (b.block_count() + 1) + b.labels()[static_cast<std::size_t>(i)];
    return SetPartition::from_labels(labels);
}

BigInt mobius_partition_lattice(const SetPartition& p1, const SetPartition& p2) {
    if (!refines(p1, p2)) throw OrderError("first partition does not refine the second");
    // [p1, p2] is a product of full partition lattices, one per block of p2,
    // each on the p1-blocks it contains.
    std::vector<int> inside(static_cast<std::size_t>(p2.block_count()), 0);
    std::vector<bool> seen(static_cast<std::size_t>(p1.block_count()), false);
    for (int i = 0; i < p1.size(); ++i) {
        int b1 = p1.labels()[static_cast<std::size_t>(i)];
        if (!seen[static_cast<std::size_t>(b1)]) {
            seen[static_cast<std::size_t>(b1)] = true;
            ++inside[static_cast<std::size_t>(p2.labels()[static_cast<std::size_t>(i)])];
        }
    }
    BigInt r = 1;
    for (int k : inside) {
        r *= factorial(k - 1);
        if (k % 2 == 0) r = -r;
    }
    return r;
}

bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b) {
    // a and b cross if there are a1 < b1 < a2 < b2 or b1 < a1 < b2 < a2
    for (int a1 : a)
        for (int a2 : a) {
            if (a1 >= a2) continue;
            bool inner = false, outer = false;
            for (int x : b) {
                if (x > a1 && x < a2) inner = true;
                else outer = true;
            }
            if (inner && outer) return true;
        }
    return false;
}

bool is_noncrossing(const SetPartition& p) {
    // Scan with a stack of open blocks: a block may be resumed only if it is on top.
    const auto& l = p.labels();
    std::vector<int> last(static_cast<std::size_t>(p.block_count()), -1);
    for (int i = 0; i < p.size(); ++i) last[static_cast<std::size_t>(l[static_cast<std::size_t>(i)])] = i;
    std::vector<int> stack;
    for (int i = 0; i < p.size(); ++i) {
        int b = l[static_cast<std::size_t>(i)];
        if (!stack.empty() && stack.back() == b) {
        } else {
            if (std::find(stack.begin(), stack.end(), b) != stack.end()) return false;
            stack.push_back(b);
        }
        if (last[static_cast<std::size_t>(b)] == i) stack.pop_back();
    }
    return true;
}

std::vector<SetPartition> enumerate_noncrossing(int n) {
    if (n < 1 || n > kMaxEnumeratedPartitionSize)
        throw SizeLimitError("enumerate_noncrossing supports 1 <= n <= " + std::to_string(kMaxEnumeratedPartitionSize));
    std::vector<SetPartition> out;
    for_each_partition(n, [&](const std::vector<int>& l, int) {
        SetPartition p = SetPartition::from_labels(l);
        if (is_noncrossing(p)) out.push_back(std::move(p));
    });
    return out;
}

SetPartition least_nc_majorant(const SetPartition& p) {
    auto blocks = p.blocks();
    bool merged = true;
    while (merged) {
        merged = false;
        for (std::size_t i = 0; i < blocks.size() && !merged; ++i)
            for (std::size_t j = i + 1; j < blocks.size() && !merged; ++j)
                if (blocks_cross(blocks[i], blocks[j])) {
                    blocks[i].insert(blocks[i].end(), blocks[j].begin(), blocks[j].end());
                    std::sort(blocks[i].begin(), blocks[i].end());
                    blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                }
    }
    return SetPartition::from_blocks(p.size(), blocks);
}

std::vector<int> kreweras_complement_sizes(const SetPartition& p) {
    if (!is_noncrossing(p)) throw DomainError("partition is not non-crossing");
    const int n = p.size();
    // next[i]: successor of i inside its block, cyclically
    std::vector<int> next(static_cast<std::size_t>(n));
    for (const auto& b : p.blocks())
        for (std::size_t k = 0; k < b.size(); ++k) next[static_cast<std::size_t>(b[k] - 1)] = b[(k + 1) % b.size()] - 1;
    std::vector<int> prev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) prev[static_cast<std::size_t>(next[static_cast<std::size_t>(i)])] = i;
    // complement permutation: prev o shift
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    std::vector<int> sizes;
    for (int i = 0; i < n; ++i) {
        if (done[static_cast<std::size_t>(i)]) continue;
        int len = 0;
        for (int j = i; !done[static_cast<std::size_t>(j)]; j = prev[static_cast<std::size_t>((j + 1) % n)]) {
            done[static_cast<std::size_t>(j)] = true;
            ++len;
        }
        sizes.push_back(len);
    }
    return sizes;
}

BigInt mobius_nc(const SetPartition& p1, const SetPartition& p2) {
    if (!is_noncrossing(p1) || !is_noncrossing(p2)) throw DomainError("partition is not non-crossing");
    if (!refines(p1, p2)) throw OrderError("first partition does not refine the second");
    BigInt r = 1;
    for (const auto& block : p2.blocks()) {
        std::vector<int> restricted;
        restricted.reserve(block.size());
        for (int e : block) restricted.push_back(p1.block_of(e));
        for (int k : kreweras_complement_sizes(SetPartition::from_labels(restricted))) r *= signed_catalan(k);
    }
    return r;
}

}  // namespace ssepfree
