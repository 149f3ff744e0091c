#ifndef SSEPFREE_FREEPROB_HPP
#define SSEPFREE_FREEPROB_HPP

#include <vector>

#include "ssepfree/grid.hpp"

namespace ssepfree {

constexpr int kMaxMomentOrder = 12;

/// m_p = integral of b^p over [0, 1] for p = 0..P (m_0 = 1).
std::vector<double> moments_of_b(const GridFunction& b, int P);
/// Free cumulants R_1..R_n (index 0 holds 0) of a single variable with
/// moments m_0..m_n, by order-by-order inversion of 1 + sum R_p G^p = z G.
std::vector<double> free_cumulants_from_moments(const std::vector<double>& m, int n_max);
/// Cauchy transform G(z) = integral of 1/(z - b); needs z > max b.
double resolvent(const GridFunction& b, double z);
double resolvent_derivative(const GridFunction& b, double z);
/// The z > max b with G(z) = v, v > 0.
double solve_z(const GridFunction& b, double v);
/// Coefficients c_0..c_n of v z(v) = 1 + sum_p R_p v^p.
std::vector<double> vz_series(const std::vector<double>& m, int n_max);
/// Truncated R-transform 1/w + sum_{p<=n} R_p w^(p-1) from R_1..R_n.
double r_transform(const std::vector<double>& free_cumulants, double w);

}  // namespace ssepfree

#endif
