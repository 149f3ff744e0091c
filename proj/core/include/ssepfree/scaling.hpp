#ifndef SSEPFREE_SCALING_HPP
#define SSEPFREE_SCALING_HPP

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "ssepfree/grid.hpp"

namespace ssepfree {

constexpr int kMaxKernelOrder = 6;

/// Symmetric scaled cumulant kernels psi_n on [0,1]^n, kernels[n-1] = psi_n.
using Kernel = std::function<double(std::span<const double>)>;
struct CumulantKernelSet {
    std::vector<Kernel> kernels;
    int max_order() const { return static_cast<int>(kernels.size()); }
};

/// Kernel set with psi_1 = g0 and nothing else (independent sites).
CumulantKernelSet independent_kernels(const std::function<double(double)>& g0);

/// F0[q] = sum_{n<=n_max} (1/n!) integral psi_n q...q, tensor trapezoid rule.
double F0_eval(const CumulantKernelSet& kernels, const GridFunction& q, int n_max);
/// Functional derivative of F0_eval at q, node by node.
GridFunction F0_gradient(const CumulantKernelSet& kernels, const GridFunction& q, int n_max);

/// A generating functional with its functional derivative. `jacobian`
/// (optional) returns d gradient_k / d q_l; `auxiliary` (optional) returns a
/// scalar attached to the evaluation, e.g. the root z of the integral form.
struct F0Functional {
    std::function<double(const GridFunction&)> value;
    std::function<GridFunction(const GridFunction&)> gradient;
    std::function<Eigen::MatrixXd(const GridFunction&)> jacobian;
    std::function<double(const GridFunction&)> auxiliary;
};

F0Functional series_functional(CumulantKernelSet kernels, int n_max);
/// F0[q] = integral g0 q.
F0Functional linear_functional(const GridFunction& g0);

struct SolverOptions {
    double damping = 0.5;
    double tolerance = 1e-10;
    long max_iterations = 10000;
};

struct VariationalSolution {
    GridFunction e;
    GridFunction g;
    GridFunction q;
    double F = 0.0;
    long iterations = 0;
    double residual = 0.0;
    double auxiliary = std::numeric_limits<double>::quiet_NaN();
    /// Mean density (1+e) g / (1+e g): the derivative of F with respect to h.
    GridFunction density() const;
};

/// max over (g, q) of integral [log(1+e g) - q g] + F0[q], by damped
/// alternating fixed-point iteration q = e/(1+e g), g = dF0/dq.
VariationalSolution solve_variational(const GridFunction& e, const F0Functional& f0, const SolverOptions& options = {});
/// Same with e = exp(h) - 1.
VariationalSolution solve_free_energy(const GridFunction& h, const F0Functional& f0, const SolverOptions& options = {});

/// integral log(1 + g0 e): the free energy of independent sites.
double independent_free_energy(const GridFunction& e, const GridFunction& g0);
/// integral n log(n/g0) + (1-n) log((1-n)/(1-g0)).
double independent_rate_function(const GridFunction& n, const GridFunction& g0);

struct RateSolution {
    double value = 0.0;
    GridFunction g;
    GridFunction q;
    long iterations = 0;
    double residual = 0.0;
    /// Field h = log(n (1-g) / (g (1-n))) realising the profile (interior nodes).
    GridFunction field;
};

/// Stationary value of integral [n log(n/g) + (1-n) log((1-n)/(1-g)) + q g] - F0[q].
/// Interior densities must lie in (0,1); endpoint densities may be 0 or 1.
/// Newton's method when f0 has a jacobian, damped fixed point otherwise.
RateSolution rate_function(const GridFunction& n, const F0Functional& f0, const SolverOptions& options = {});

struct FreeEnergyEvaluation {
    double value;
    /// dF/dh per unit length; empty if unavailable (finite differences are used).
    std::vector<double> density;
};
using FreeEnergyFunctional = std::function<FreeEnergyEvaluation(const GridFunction& h)>;

struct LegendreOptions {
    int starts = 5;
    unsigned seed = 12345;
    double tolerance = 1e-8;
    long max_iterations = 2000;
    double fd_step = 1e-6;
};

struct LegendreResult {
    double value = 0.0;
    GridFunction h;
    long iterations = 0;
    double gradient_norm = 0.0;
    /// Largest difference between the values reached from the different starts.
    double spread = 0.0;
    bool converged = false;
};

/// sup over h of integral h n - F[h], by gradient ascent from several starts.
LegendreResult legendre_transform(const FreeEnergyFunctional& F, const GridFunction& n, const LegendreOptions& options = {});

/// Piecewise-constant reduction of the variational problem on B equal blocks:
/// -sum g_a q_a + sum p_a log(1 + e_a g_a) + sum_k (1/k!) sum Phi_k(a_1..a_k) q_a1..q_ak.
struct BlockProblem {
    std::vector<double> e;
    std::vector<double> p;
    /// phi[k-1] is the order-k tensor flattened in row-major order, size B^k.
    std::vector<std::vector<double>> phi;
};
struct BlockSolution {
    std::vector<double> g;
    std::vector<double> q;
    double F = 0.0;
    long iterations = 0;
    double residual = 0.0;
};
/// Rectangle averages of the kernels over B equal blocks, using `sub` midpoint
/// nodes per block and dimension.
std::vector<std::vector<double>> block_tensors(const CumulantKernelSet& kernels, int blocks, int n_max, int sub);
BlockSolution solve_blocks(const BlockProblem& problem, const SolverOptions& options = {});

}  // namespace ssepfree

#endif
