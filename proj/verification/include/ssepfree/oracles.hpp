#ifndef SSEPFREE_ORACLES_HPP
#define SSEPFREE_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ssepfree/graphs.hpp"

// Brute-force reference computations, deliberately sharing no code path with
// the library routines they check.
namespace ssepfree::oracle {

/// Proper k-colourings by exhaustive assignment.
long long count_colourings(const SimpleGraph& g, int k);

/// Finite joint law of real random variables.
struct DiscreteLaw {
    int vars = 0;
    std::vector<std::vector<double>> outcomes;
    std::vector<double> weights;

    /// Every variable takes values in {0, 1, 2}; weights drawn at random.
    static DiscreteLaw random(int vars, std::mt19937_64& rng);
    double expect(const std::function<double(const std::vector<double>&)>& f) const;
};

/// Joint cumulant of m quantities as the coefficient of t_1...t_m in
/// log E[prod (1 + t_j X_j)]; subset_moment(S) = E[prod_{j in S} X_j].
double joint_cumulant(int m, const std::function<double(std::uint32_t)>& subset_moment);

/// Joint cumulant of the products prod_{i in group} a_i, one per group, under law.
double cumulant_of_products(const DiscreteLaw& law, const std::vector<std::vector<int>>& groups);

/// Uniform random sorted tuple in (0,1) with gaps of at least min_gap.
std::vector<double> sorted_points(int n, std::mt19937_64& rng, double min_gap = 1e-3);

}  // namespace ssepfree::oracle

#endif
