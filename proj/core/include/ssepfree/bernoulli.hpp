#ifndef SSEPFREE_BERNOULLI_HPP
#define SSEPFREE_BERNOULLI_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssepfree/cumulants.hpp"
#include "ssepfree/graphs.hpp"
#include "ssepfree/numbers.hpp"

namespace ssepfree {

constexpr int kMaxBernoulliSites = 12;
constexpr int kMaxExpansionSites = 6;
constexpr int kMaxExpansionDegree = 8;

/// Joint law of N Bernoulli variables. Configuration c has b_i = bit (i-1) of c.
class BernoulliModel {
public:
    BernoulliModel(int N, std::vector<double> probabilities);
    static BernoulliModel independent(const std::vector<double>& g);
    /// Random weights from a flat Dirichlet law.
    template <class Rng>
    static BernoulliModel random(int N, Rng& rng);

    int sites() const { return N_; }
    const std::vector<double>& probabilities() const { return p_; }
    /// E[prod_{i in mask} b_i].
    double moment(std::uint32_t mask) const { return moments_[mask]; }
    /// E over multiset indices (1-based); repeats collapse since b^2 = b.
    double moment(const std::vector<int>& indices) const;

private:
    int N_;
    std::vector<double> p_;
    std::vector<double> moments_;
};

/// log E[exp(sum h_i b_i)].
double exact_log_partition(const BernoulliModel& model, const std::vector<double>& h);

/// K(b_i1..b_ik) for every nonempty set of distinct sites, keyed by sorted 1-based sites.
CumulantTable noncoincident_cumulants(const BernoulliModel& model);

/// Cumulant with repeated sites rebuilt from non-coincident cumulants alone.
double reconstruct_coincident_cumulant(const CumulantTable& table, int sites, const std::vector<int>& indices);

/// Product of K over blocks: multiset of tag-set masks (bit i-1 for site i), sorted.
using KMonomial = std::vector<std::uint32_t>;
/// Symbolic series in non-coincident cumulants. The e-exponents of a term
/// are fixed by its monomial: site i appears once per block containing it.
using SymbolicSeries = std::map<KMonomial, Rational>;

int e_degree(const KMonomial& m);
std::vector<int> e_exponents(const KMonomial& m, int sites);
std::string to_string(const KMonomial& m);

/// Connected chromatic-class graphs weighted by mu(black graph) / |Aut|.
SymbolicSeries chromatic_series(int sites, int max_degree);
/// Same monomials summed over all Feynman-class coverings.
SymbolicSeries feynman_series(int sites, int max_degree);
/// log of 1 + sum_I e_I sum_pi K_pi expanded formally, zero terms dropped.
SymbolicSeries taylor_series(int sites, int max_degree);

/// Series in e_i = exp(h_i) - 1, keyed by exponent vectors.
struct ExpansionSeries {
    int sites = 0;
    int max_degree = 0;
    std::map<std::vector<int>, double> terms;

    double coefficient(const std::vector<int>& exponents) const;
    double evaluate(const std::vector<double>& e) const;
    /// Largest coefficient difference over the union of monomials.
    double max_difference(const ExpansionSeries& other) const;
};

/// Numerical series from a symbolic one by substituting cumulants;
/// contributions to each e-monomial are combined by pairwise summation.
ExpansionSeries evaluate_series(const SymbolicSeries& s, const CumulantTable& table, int sites, int max_degree);

ExpansionSeries graph_expansion_W(const CumulantTable& table, int sites, int max_degree);
ExpansionSeries feynman_expansion_W(const CumulantTable& table, int sites, int max_degree);
/// Taylor coefficients of log Z in e computed from the subset moments of the model.
ExpansionSeries taylor_expansion_W(const BernoulliModel& model, int max_degree);

/// Sum of absolute graph weights at e = 1 split by cycle rank.
struct TreeWeights {
    double tree = 0;
    double loop = 0;
};
TreeWeights tree_loop_weights(const CumulantTable& table, int sites, int max_degree);

/// Pairwise (cascade) summation.
double pairwise_sum(std::vector<double> values);

template <class Rng>
BernoulliModel BernoulliModel::random(int N, Rng& rng) {
    std::vector<double> p(std::size_t{1} << N);
    double total = 0;
    for (auto& v : p) {
        // exponential variates give a uniform point on the simplex
        double u = (static_cast<double>(rng() - Rng::min()) + 0.5) / (static_cast<double>(Rng::max() - Rng::min()) + 1.0);
        v = -std::log(u);
        total += v;
    }
    for (auto& v : p) v /= total;
    return BernoulliModel(N, std::move(p));
}

}  // namespace ssepfree

#endif
