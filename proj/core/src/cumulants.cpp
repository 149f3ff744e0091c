#include "ssepfree/cumulants.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

#include "ssepfree/errors.hpp"
#include "ssepfree/graphs.hpp"

namespace ssepfree {

namespace {

void check_order(std::size_t n) {
    if (n == 0) throw DomainError("empty index list");
    if (n > static_cast<std::size_t>(kMaxCumulantOrder))
        throw SizeLimitError("cumulant order is limited to " + std::to_string(kMaxCumulantOrder));
}

std::vector<std::uint64_t> masks_of(const std::vector<int>& labels, int k) {
    std::vector<std::uint64_t> m(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) m[static_cast<std::size_t>(labels[i])] |= std::uint64_t{1} << i;
    return m;
}

double product_over_blocks(const MultisetTable& t, const std::vector<int>& indices, const std::vector<std::uint64_t>& blocks) {
    double r = 1.0;
    for (auto b : blocks) r *= t.at(select(indices, b));
    return r;
}

// mu(pi, 1_n) in the full partition lattice as a double
double partition_mobius_to_top(int k) {
    double f = 1.0;
    for (int i = 2; i < k; ++i) f *= i;
    return (k % 2 == 0) ? -f : f;
}

}  // namespace

void MultisetTable::set(Key key, double value) {
    std::sort(key.begin(), key.end());
    values_[std::move(key)] = value;
}

double MultisetTable::at(Key key) const {
    std::sort(key.begin(), key.end());
    auto it = values_.find(key);
    if (it != values_.end()) return it->second;
    if (source_) return source_(key);
    std::string s;
    for (int i : key) s += (s.empty() ? "" : ",") + std::to_string(i);
    throw IncompleteTableError("table has no entry for {" + s + "}");
}

bool MultisetTable::contains(Key key) const {
    std::sort(key.begin(), key.end());
    return source_ || values_.count(key) > 0;
}

std::vector<int> select(const std::vector<int>& indices, std::uint64_t mask) {
    std::vector<int> out;
    for (auto r = mask; r; r &= r - 1) out.push_back(indices[static_cast<std::size_t>(std::countr_zero(r))]);
    return out;
}

double moments_to_cumulants(const MomentTable& m, const std::vector<int>& indices) {
    check_order(indices.size());
    double sum = 0.0;
    for_each_partition(static_cast<int>(indices.size()), [&](const std::vector<int>& labels, int k) {
        sum += partition_mobius_to_top(k) * product_over_blocks(m, indices, masks_of(labels, k));
    });
    return sum;
}

double cumulants_to_moments(const CumulantTable& k, const std::vector<int>& indices) {
    check_order(indices.size());
    double sum = 0.0;
    for_each_partition(static_cast<int>(indices.size()), [&](const std::vector<int>& labels, int nb) {
        sum += product_over_blocks(k, indices, masks_of(labels, nb));
    });
    return sum;
}

double product_cumulant(const CumulantTable& k, const std::vector<int>& indices, const SetPartition& gamma,
                        const SetPartition& xi) {
    check_order(indices.size());
    if (gamma.size() != static_cast<int>(indices.size()) || xi.size() != gamma.size())
        throw DomainError("partition size does not match the number of indices");
    if (!refines(gamma, xi)) throw OrderError("xi must be coarser than gamma");
    double sum = 0.0;
    for_each_partition(gamma.size(), [&](const std::vector<int>& labels, int nb) {
        SetPartition pi = SetPartition::from_labels(labels);
        if (!refines(pi, xi)) return;
        if (join(pi, gamma) != xi) return;
        sum += product_over_blocks(k, indices, masks_of(labels, nb));
    });
    return sum;
}

double product_cumulant_meet(const CumulantTable& k, const std::vector<int>& indices, const SetPartition& gamma,
                             const SetPartition& xi) {
    return product_cumulant(k, indices, meet(gamma, xi), xi);
}

double inverse_product_cumulant(const GammaCumulant& kgamma, const SetPartition& gamma) {
    const int n = gamma.size();
    check_order(static_cast<std::size_t>(n));
    const SetPartition top = SetPartition::coarsest(n);
    double sum = 0.0;
    for_each_partition(n, [&](const std::vector<int>& labels, int) {
        SetPartition pi = SetPartition::from_labels(labels);
        if (join(pi, gamma) != top) return;
        double term = to_double(mu_graph(interaction_graph(pi, gamma)));
        for (const auto& block : pi.blocks()) term *= kgamma(block);
        sum += term;
    });
    return sum;
}

const std::vector<NcTerm>& noncrossing_terms(int n) {
    if (n < 1 || n > kMaxCumulantOrder) throw SizeLimitError("non-crossing order is limited to 10");
    static std::mutex mutex;
    static std::vector<std::vector<NcTerm>> cache(static_cast<std::size_t>(kMaxCumulantOrder + 1));
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[static_cast<std::size_t>(n)];
    if (slot.empty()) {
        const SetPartition top = SetPartition::coarsest(n);
        for (const auto& p : enumerate_noncrossing(n)) slot.push_back(NcTerm{p.block_masks(), to_double(mobius_nc(p, top))});
    }
    return slot;
}

double free_cumulants_multilinear(const MomentTable& m, const std::vector<int>& sequence) {
    check_order(sequence.size());
    double sum = 0.0;
    for (const auto& t : noncrossing_terms(static_cast<int>(sequence.size()))) sum += t.mobius * product_over_blocks(m, sequence, t.blocks);
    return sum;
}

double free_from_classical(const CumulantTable& k, const std::vector<int>& sequence) {
    check_order(sequence.size());
    const int n = static_cast<int>(sequence.size());
    const SetPartition top = SetPartition::coarsest(n);
    double sum = 0.0;
    for_each_partition(n, [&](const std::vector<int>& labels, int nb) {
        if (least_nc_majorant(SetPartition::from_labels(labels)) != top) return;
        sum += product_over_blocks(k, sequence, masks_of(labels, nb));
    });
    return sum;
}

double classical_from_free(const std::function<double(const std::vector<int>&)>& free_cumulant,
                           const std::vector<int>& sequence) {
    check_order(sequence.size());
    const int n = static_cast<int>(sequence.size());
    const SetPartition top = SetPartition::coarsest(n);
    double sum = 0.0;
    for_each_partition(n, [&](const std::vector<int>& labels, int nb) {
        SetPartition pi = SetPartition::from_labels(labels);
        if (least_nc_majorant(pi) != top) return;
        double term = to_double(mu_graph(crossing_graph(pi)));
        for (auto b : masks_of(labels, nb)) term *= free_cumulant(select(sequence, b));
        sum += term;
    });
    return sum;
}

}  // namespace ssepfree
