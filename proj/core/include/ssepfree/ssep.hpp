#ifndef SSEPFREE_SSEP_HPP
#define SSEPFREE_SSEP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ssepfree/grid.hpp"
#include "ssepfree/scaling.hpp"

namespace ssepfree {

constexpr int kMaxPsiSharpOrder = 8;
constexpr int kMaxPsiSsepOrder = 7;
constexpr int kMaxExactChainSites = 12;

/// Free cumulant R_n(1_{x_1}, ..., 1_{x_n}) of indicator functions of [0, x]
/// under Lebesgue measure, in the given order. Points must be distinct in (0,1).
double psi_sharp(const std::vector<double>& points);
/// Scaled connected correlation of the open symmetric exclusion process with
/// reservoir densities 0 (left) and 1 (right): (-1)^(n-1) times the sum of
/// psi_sharp over the (n-1)! cyclic orderings.
double psi_ssep(const std::vector<double>& points);

/// psi_ssep of fixed order compiled into sum_rho c_rho prod_{B in rho} min(x_B).
/// Accepts coincident points (continuous extension).
class SsepKernel {
public:
    explicit SsepKernel(int order);
    int order() const { return order_; }
    double operator()(std::span<const double> x) const;

private:
    struct Term {
        double coefficient;
        std::vector<std::uint32_t> blocks;
    };
    int order_;
    std::vector<Term> terms_;
};

CumulantKernelSet ssep_kernels(int n_max);

/// Integral form of the generating functional: F0[a] = integral log(z - b) - z + 1,
/// b = -(integral of a over [x, 1]), integral 1/(z - b) = 1. Gradient
/// g(x) = integral_0^x dy/(z - b(y)); auxiliary value z.
F0Functional ssep_functional();
double F0_ssep(const GridFunction& a);
/// psi_n[a] = integral psi_n a...a for n = 1..n_max (index 0 holds 0), from the
/// free cumulants of b.
std::vector<double> ssep_cumulant_integrals(const GridFunction& a, int n_max);

VariationalSolution F_ssep_free(const GridFunction& h, const SolverOptions& options = {});

struct ClassicalSolution {
    double F = 0.0;
    double initial_slope = 0.0;
    double ode_residual = 0.0;
    /// g and g' on the integration grid (steps + 1 points).
    std::vector<double> g;
    std::vector<double> dg;
    /// g and g' sampled on the grid of h.
    GridFunction g_grid;
    GridFunction dg_grid;
};

/// max over g of integral log(1 + g e) - log g' with g(0) = 0, g(1) = 1, through
/// the Euler-Lagrange equation (1 + g e) g'' = g'^2 e, solved by RK4 shooting.
ClassicalSolution classical_F_ssep(const GridFunction& h, int steps = 10000);

/// Rate function of a density profile; the end values are set to the
/// reservoir densities 0 and 1.
RateSolution rate_function_ssep(const GridFunction& n, const SolverOptions& options = {});

struct EquivalenceReport {
    double F_free = 0.0;
    double F_classical = 0.0;
    double relative_difference = 0.0;
    /// Cell-wise slope of g against 1/(z - l) averaged by the trapezoid rule.
    double slope_identity_residual = 0.0;
    /// |integral q g - (1 - z)|
    double pairing_identity_residual = 0.0;
    /// Classical g' times (z - l) from the free solution, minus 1, at interior nodes.
    double cross_identity_residual = 0.0;
    double ode_residual = 0.0;
    long iterations = 0;
    double z = 0.0;
};
EquivalenceReport equivalence_report(const GridFunction& h, const SolverOptions& options = {});

struct SteadyState {
    int sites = 0;
    std::vector<double> probabilities;  // indexed by occupation bitmask, bit i-1 = site i
    double mean(int i) const;
    double moment(const std::vector<int>& sites) const;
    double connected(int i, int j) const;
    double connected(int i, int j, int k) const;
};
/// Stationary law of the chain with N sites: bulk hops at rate 1, site 1
/// empties at rate 1, site N fills at rate 1.
SteadyState exact_steady_state(int N);

struct ChainStatistics {
    int sites = 0;
    double time = 0.0;
    long events = 0;
    std::vector<double> mean;
    std::vector<double> standard_error;
    /// Time-averaged connected two-point function, row-major N x N.
    std::vector<double> covariance;
    bool low_statistics = false;
};
ChainStatistics simulate_ssep(int N, double t_max, std::uint64_t seed, int batches = 20);

}  // namespace ssepfree

#endif
