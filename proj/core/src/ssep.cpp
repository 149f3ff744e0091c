#include "ssepfree/ssep.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <bit>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "ssepfree/cumulants.hpp"
#include "ssepfree/errors.hpp"
#include "ssepfree/freeprob.hpp"

namespace ssepfree {

namespace {

void check_points(const std::vector<double>& x, int cap) {
    if (x.empty()) throw DomainError("at least one point is required");
    if (static_cast<int>(x.size()) > cap) throw SizeLimitError("order is limited to " + std::to_string(cap));
    for (double v : x)
        if (!(v > 0.0 && v < 1.0)) throw DomainError("points must lie in (0,1)");
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] == x[j]) throw CoincidenceError("points must be distinct");
}

MomentTable min_moments(const std::vector<double>& x) {
    return MomentTable([x](const MultisetTable::Key& key) {
        double m = 1.0;
        for (int i : key) m = std::min(m, x[static_cast<std::size_t>(i - 1)]);
        return m;
    });
}

}  // namespace

double psi_sharp(const std::vector<double>& points) {
    check_points(points, kMaxPsiSharpOrder);
    std::vector<int> seq(points.size());
    std::iota(seq.begin(), seq.end(), 1);
    return free_cumulants_multilinear(min_moments(points), seq);
}

double psi_ssep(const std::vector<double>& points) {
    check_points(points, kMaxPsiSsepOrder);
    const auto m = min_moments(points);
    std::vector<int> seq(points.size());
    std::iota(seq.begin(), seq.end(), 1);
    double s = 0.0;
    do {
        s += free_cumulants_multilinear(m, seq);
    } while (std::next_permutation(seq.begin() + 1, seq.end()));
    return (points.size() % 2 == 1) ? s : -s;
}

SsepKernel::SsepKernel(int order) : order_(order) {
    if (order < 1 || order > kMaxPsiSsepOrder) throw SizeLimitError("kernel order must lie in 1..7");
    const auto& nc = noncrossing_terms(order);
    std::map<std::vector<std::uint32_t>, double> acc;
    std::vector<int> seq(static_cast<std::size_t>(order));
    std::iota(seq.begin(), seq.end(), 0);
    const double sign = (order % 2 == 1) ? 1.0 : -1.0;
    do {
        for (const auto& t : nc) {
            std::vector<std::uint32_t> blocks;
            for (auto b : t.blocks) {
                std::uint32_t pm = 0;
                for (auto r = b; r; r &= r - 1) pm |= std::uint32_t{1} << seq[static_cast<std::size_t>(std::countr_zero(r))];
                blocks.push_back(pm);
            }
            std::sort(blocks.begin(), blocks.end());
            acc[blocks] += sign * t.mobius;
        }
    } while (std::next_permutation(seq.begin() + 1, seq.end()));
    for (auto& [blocks, c] : acc)
        if (c != 0.0) terms_.push_back(Term{c, blocks});
}

double SsepKernel::operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != order_) throw DomainError("wrong number of points for kernel");
    double s = 0.0;
    for (const auto& t : terms_) {
        double prod = t.coefficient;
        for (auto b : t.blocks) {
            double m = 1.0;
            for (auto r = b; r; r &= r - 1) m = std::min(m, x[static_cast<std::size_t>(std::countr_zero(r))]);
            prod *= m;
        }
        s += prod;
    }
    return s;
}

CumulantKernelSet ssep_kernels(int n_max) {
    if (n_max < 1 || n_max > kMaxKernelOrder) throw SizeLimitError("kernel order must lie in 1..6");
    CumulantKernelSet k;
    for (int n = 1; n <= n_max; ++n) {
        auto kern = std::make_shared<SsepKernel>(n);
        k.kernels.push_back([kern](std::span<const double> x) { return (*kern)(x); });
    }
    return k;
}

namespace {

struct IntegralForm {
    std::vector<double> ell;
    std::vector<double> f;  // 1/(z - ell)
    double z;
};

IntegralForm integral_form(const GridFunction& q) {
    auto r = right_cumulative(q.values());
    for (double& v : r) v = -v;
    GridFunction ell(q.intervals(), r);
    double z = solve_z(ell, 1.0);
    IntegralForm out{std::move(r), {}, z};
    out.f.resize(out.ell.size());
    for (std::size_t j = 0; j < out.ell.size(); ++j) out.f[j] = 1.0 / (z - out.ell[j]);
    return out;
}

Eigen::MatrixXd right_cumulative_matrix(int N) {
    const int M = N - 1;
    const auto w = trapezoid_weights(M);
    const double h = 1.0 / M;
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(N, N);
    for (int j = 0; j < N; ++j) {
        if (j > 0) R(j, j) = 0.5 * h;
        for (int k = j + 1; k < N; ++k) R(j, k) = w[static_cast<std::size_t>(k)];
    }
    return R;
}

}  // namespace

F0Functional ssep_functional() {
    F0Functional f;
    f.value = [](const GridFunction& q) {
        auto form = integral_form(q);
        const auto w = trapezoid_weights(q.intervals());
        double s = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * std::log(form.z - form.ell[j]);
        return s - form.z + 1.0;
    };
    f.gradient = [](const GridFunction& q) {
        auto form = integral_form(q);
        return GridFunction(q.intervals(), left_cumulative(form.f));
    };
    f.auxiliary = [](const GridFunction& q) { return integral_form(q).z; };
    f.jacobian = [](const GridFunction& q) {
        // g = L f, f_j = 1/(z - l_j), l = -R q, sum_j w_j f_j = 1
        auto form = integral_form(q);
        const int N = q.size();
        const auto w = trapezoid_weights(q.intervals());
        Eigen::VectorXd f2(N), s(N);
        double norm = 0.0;
        for (int j = 0; j < N; ++j) {
            f2(j) = form.f[static_cast<std::size_t>(j)] * form.f[static_cast<std::size_t>(j)];
            s(j) = w[static_cast<std::size_t>(j)] * f2(j);
            norm += s(j);
        }
        s /= norm;
        Eigen::MatrixXd X = right_cumulative_matrix(N);
        Eigen::RowVectorXd sx = s.transpose() * X;
        X.rowwise() -= sx;
        X = f2.asDiagonal() * X;
        // apply L column by column, negate
        const double h = 1.0 / q.intervals();
        Eigen::MatrixXd A(N, N);
        A.row(0).setZero();
        for (int k = 1; k < N; ++k) A.row(k) = A.row(k - 1) + 0.5 * h * (X.row(k - 1) + X.row(k));
        return Eigen::MatrixXd(-A);
    };
    return f;
}

double F0_ssep(const GridFunction& a) { return ssep_functional().value(a); }

std::vector<double> ssep_cumulant_integrals(const GridFunction& a, int n_max) {
    auto r = right_cumulative(a.values());
    for (double& v : r) v = -v;
    GridFunction b(a.intervals(), r);
    auto R = free_cumulants_from_moments(moments_of_b(b, n_max), n_max);
    std::vector<double> psi(static_cast<std::size_t>(n_max + 1), 0.0);
    double fact = 1.0;  // (n-1)!
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) fact *= n - 1;
        psi[static_cast<std::size_t>(n)] = -fact * R[static_cast<std::size_t>(n)];
    }
    return psi;
}

VariationalSolution F_ssep_free(const GridFunction& h, const SolverOptions& options) {
    return solve_free_energy(h, ssep_functional(), options);
}

ClassicalSolution classical_F_ssep(const GridFunction& h, int steps) {
    if (steps < 100 || steps % 2 != 0) throw DomainError("steps must be an even number >= 100");
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline(h.values().begin(), h.values().end(), 0.0, h.step());
    const double dx = 1.0 / steps;
    std::vector<double> e(static_cast<std::size_t>(2 * steps + 1));
    for (int k = 0; k <= 2 * steps; ++k) e[static_cast<std::size_t>(k)] = std::expm1(spline(0.5 * k * dx));
    for (double v : e)
        if (!std::isfinite(v)) throw DomainError("field too large");
    // RK4 for g'' = g'^2 e / (1 + g e); returns false if 1 + g e <= 0 or blow-up
    auto integrate = [&](double s, std::vector<double>* gs, std::vector<double>* ps) {
        double g = 0.0, p = s;
        if (gs) {
            gs->assign(static_cast<std::size_t>(steps + 1), 0.0);
            ps->assign(static_cast<std::size_t>(steps + 1), 0.0);
            (*gs)[0] = g;
            (*ps)[0] = p;
        }
        auto acc = [&](int half, double gg, double pp, bool& ok) {
            double ev = e[static_cast<std::size_t>(half)];
            double d = 1.0 + gg * ev;
            if (!(d > 0.0)) ok = false;
            return pp * pp * ev / d;
        };
        for (int k = 0; k < steps; ++k) {
            bool ok = true;
            double k1g = p, k1p = acc(2 * k, g, p, ok);
            double k2g = p + 0.5 * dx * k1p, k2p = acc(2 * k + 1, g + 0.5 * dx * k1g, p + 0.5 * dx * k1p, ok);
            double k3g = p + 0.5 * dx * k2p, k3p = acc(2 * k + 1, g + 0.5 * dx * k2g, p + 0.5 * dx * k2p, ok);
            double k4g = p + dx * k3p, k4p = acc(2 * k + 2, g + dx * k3g, p + dx * k3p, ok);
            g += dx / 6.0 * (k1g + 2 * k2g + 2 * k3g + k4g);
            p += dx / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
            if (!ok || !std::isfinite(g) || !std::isfinite(p) || g > 1e8) return std::numeric_limits<double>::infinity();
            if (gs) {
                (*gs)[static_cast<std::size_t>(k + 1)] = g;
                (*ps)[static_cast<std::size_t>(k + 1)] = p;
            }
        }
        return g;
    };
    auto miss = [&](double s) {
        double g1 = integrate(s, nullptr, nullptr);
        return std::isfinite(g1) ? g1 - 1.0 : 1e8;
    };
    double lo = 1e-6, hi = 1e3;
    for (int k = 0; k < 40 && miss(lo) > 0; ++k) lo /= 10;
    for (int k = 0; k < 40 && miss(hi) < 0; ++k) hi *= 10;
    double flo = miss(lo), fhi = miss(hi);
    if (flo > 0 || fhi < 0) throw ConvergenceError("shooting bracket could not be established", 0, std::min(std::abs(flo), std::abs(fhi)));
    std::uintmax_t iters = 300;
    auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2);
    auto [a, b] = boost::math::tools::toms748_solve(miss, lo, hi, flo, fhi, tol, iters);
    ClassicalSolution out;
    out.initial_slope = 0.5 * (a + b);
    integrate(out.initial_slope, &out.g, &out.dg);
    for (double p : out.dg)
        if (!(p > 0.0)) throw DomainError("non-positive slope along the classical solution");
    // Simpson rule for the action
    double F = 0.0;
    for (int k = 0; k <= steps; ++k) {
        double wk = (k == 0 || k == steps) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        double ev = e[static_cast<std::size_t>(2 * k)];
        F += wk * (std::log1p(out.g[static_cast<std::size_t>(k)] * ev) - std::log(out.dg[static_cast<std::size_t>(k)]));
    }
    out.F = F * dx / 3.0;
    double res = 0.0;
    for (int k = 2; k + 2 <= steps; ++k) {
        const auto& p = out.dg;
        double ddg = (-p[static_cast<std::size_t>(k + 2)] + 8 * p[static_cast<std::size_t>(k + 1)] - 8 * p[static_cast<std::size_t>(k - 1)] + p[static_cast<std::size_t>(k - 2)]) / (12 * dx);
        double ev = e[static_cast<std::size_t>(2 * k)];
        double pk = p[static_cast<std::size_t>(k)];
        res = std::max(res, std::abs((1 + out.g[static_cast<std::size_t>(k)] * ev) * ddg - pk * pk * ev));
    }
    out.ode_residual = res;
    // cubic Hermite sampling on the grid of h
    auto sample = [&](double x, bool derivative) {
        double t = x * steps;
        int k = std::min(static_cast<int>(t), steps - 1);
        double u = t - k;
        double g0 = out.g[static_cast<std::size_t>(k)], g1 = out.g[static_cast<std::size_t>(k + 1)];
        double p0 = out.dg[static_cast<std::size_t>(k)], p1 = out.dg[static_cast<std::size_t>(k + 1)];
        if (!derivative) {
            double h00 = 2 * u * u * u - 3 * u * u + 1, h10 = u * u * u - 2 * u * u + u, h01 = -2 * u * u * u + 3 * u * u, h11 = u * u * u - u * u;
            return h00 * g0 + h10 * dx * p0 + h01 * g1 + h11 * dx * p1;
        }
        auto second = [&](int i) {
            double ev = e[static_cast<std::size_t>(2 * i)];
            double pi = out.dg[static_cast<std::size_t>(i)];
            return pi * pi * ev / (1 + out.g[static_cast<std::size_t>(i)] * ev);
        };
        double d0 = second(k), d1 = second(k + 1);
        double h00 = 2 * u * u * u - 3 * u * u + 1, h10 = u * u * u - 2 * u * u + u, h01 = -2 * u * u * u + 3 * u * u, h11 = u * u * u - u * u;
        return h00 * p0 + h10 * dx * d0 + h01 * p1 + h11 * dx * d1;
    };
    out.g_grid = GridFunction::from_function(h.intervals(), [&](double x) { return sample(x, false); });
    out.dg_grid = GridFunction::from_function(h.intervals(), [&](double x) { return sample(x, true); });
    return out;
}

RateSolution rate_function_ssep(const GridFunction& n, const SolverOptions& options) {
    GridFunction pinned = n;
    pinned[0] = 0.0;
    pinned[pinned.size() - 1] = 1.0;
    return rate_function(pinned, ssep_functional(), options);
}

EquivalenceReport equivalence_report(const GridFunction& h, const SolverOptions& options) {
    EquivalenceReport rep;
    VariationalSolution free = F_ssep_free(h, options);
    ClassicalSolution cl = classical_F_ssep(h);
    rep.F_free = free.F;
    rep.F_classical = cl.F;
    // absolute difference when the free energy itself vanishes
    rep.relative_difference = std::abs(free.F - cl.F) / std::max(std::abs(cl.F), 1e-8);
    rep.iterations = free.iterations;
    rep.ode_residual = cl.ode_residual;
    auto form = integral_form(free.q);
    rep.z = form.z;
    const int N = h.size();
    const double dx = h.step();
    double slope = 0.0, cross = 0.0;
    for (int k = 0; k + 1 < N; ++k) {
        double cell = (free.g[k + 1] - free.g[k]) / dx;
        double avg = 0.5 * (form.f[static_cast<std::size_t>(k)] + form.f[static_cast<std::size_t>(k + 1)]);
        slope = std::max(slope, std::abs(cell / avg - 1.0));
    }
    for (int k = 1; k + 1 < N; ++k) cross = std::max(cross, std::abs(cl.dg_grid[k] * (form.z - form.ell[static_cast<std::size_t>(k)]) - 1.0));
    rep.slope_identity_residual = slope;
    rep.cross_identity_residual = cross;
    const auto w = trapezoid_weights(h.intervals());
    double pair = 0.0;
    for (int k = 0; k < N; ++k) pair += w[static_cast<std::size_t>(k)] * free.q[k] * free.g[k];
    rep.pairing_identity_residual = std::abs(pair - (1.0 - form.z));
    return rep;
}

// ---------------------------------------------------------------- chain

double SteadyState::moment(const std::vector<int>& which) const {
    std::uint32_t mask = 0;
    for (int i : which) mask |= std::uint32_t{1} << (i - 1);
    double s = 0.0;
    for (std::size_t st = 0; st < probabilities.size(); ++st)
        if ((static_cast<std::uint32_t>(st) & mask) == mask) s += probabilities[st];
    return s;
}

double SteadyState::mean(int i) const { return moment({i}); }

double SteadyState::connected(int i, int j) const { return moment({i, j}) - mean(i) * mean(j); }

double SteadyState::connected(int i, int j, int k) const {
    return moment({i, j, k}) - moment({i, j}) * mean(k) - moment({i, k}) * mean(j) - moment({j, k}) * mean(i) +
           2 * mean(i) * mean(j) * mean(k);
}

namespace {

template <class F>
void for_each_transition(int N, std::uint32_t s, F&& f) {
    for (int i = 0; i + 1 < N; ++i)
        if (((s >> i) & 1U) != ((s >> (i + 1)) & 1U)) f(s ^ (std::uint32_t{3} << i), 1.0);
    if (s & 1U) f(s & ~std::uint32_t{1}, 1.0);
    if (!((s >> (N - 1)) & 1U)) f(s | (std::uint32_t{1} << (N - 1)), 1.0);
}

}  // namespace

SteadyState exact_steady_state(int N) {
    if (N < 2 || N > kMaxExactChainSites) throw SizeLimitError("exact_steady_state supports 2 <= N <= 12");
    const int S = 1 << N;
    std::vector<Eigen::Triplet<double>> trip;
    // rows: balance equations sum_s pi_s Q(s, t) = 0 for t < S-1; last row normalisation
    for (int s = 0; s < S; ++s) {
        double out = 0.0;
        for_each_transition(N, static_cast<std::uint32_t>(s), [&](std::uint32_t t, double rate) {
            out += rate;
            if (static_cast<int>(t) != S - 1) trip.emplace_back(static_cast<int>(t), s, rate);
        });
        if (s != S - 1) trip.emplace_back(s, s, -out);
        trip.emplace_back(S - 1, s, 1.0);
    }
    Eigen::SparseMatrix<double> A(S, S);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw ConvergenceError("steady-state factorisation failed", 0, 0.0);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(S);
    rhs(S - 1) = 1.0;
    Eigen::VectorXd pi = lu.solve(rhs);
    SteadyState st;
    st.sites = N;
    st.probabilities.assign(pi.data(), pi.data() + S);
    return st;
}

ChainStatistics simulate_ssep(int N, double t_max, std::uint64_t seed, int batches) {
    if (N < 2 || N > 30) throw SizeLimitError("simulate_ssep supports 2 <= N <= 30");
    if (!(t_max > 0)) throw DomainError("t_max must be positive");
    if (batches < 2) throw DomainError("need at least two batches");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double burn = std::min(0.1 * t_max, 10.0 * N * N);
    const double span = t_max - burn;
    const double batch_len = span / batches;
    std::vector<double> occ(static_cast<std::size_t>(N), 0.0), pair(static_cast<std::size_t>(N * N), 0.0);
    std::vector<std::vector<double>> batch_occ(static_cast<std::size_t>(batches), std::vector<double>(static_cast<std::size_t>(N), 0.0));
    std::uint32_t s = 0;
    double t = 0.0;
    long events = 0;
    std::vector<std::uint32_t> targets;
    auto accumulate = [&](double from, double to) {
        // add occupation of state s over [from, to) clipped to the measured window
        double a = std::max(from, burn), b = std::min(to, t_max);
        while (a < b) {
            int bi = std::min(batches - 1, static_cast<int>((a - burn) / batch_len));
            // rounding can place a on the right edge of batch bi
            while (bi < batches - 1 && burn + (bi + 1) * batch_len <= a) ++bi;
            double end = std::min(b, burn + (bi + 1) * batch_len);
            if (bi == batches - 1) end = b;
            double dt = end - a;
            for (int i = 0; i < N; ++i)
                if ((s >> i) & 1U) {
                    occ[static_cast<std::size_t>(i)] += dt;
                    batch_occ[static_cast<std::size_t>(bi)][static_cast<std::size_t>(i)] += dt;
                    for (int j = 0; j < N; ++j)
                        if ((s >> j) & 1U) pair[static_cast<std::size_t>(i * N + j)] += dt;
                }
            a = end;
        }
    };
    while (t < t_max) {
        targets.clear();
        for_each_transition(N, s, [&](std::uint32_t to, double) { targets.push_back(to); });
        double total = static_cast<double>(targets.size());  // all rates are 1
        double dt = -std::log(1.0 - unif(rng)) / total;
        accumulate(t, t + dt);
        t += dt;
        if (t >= t_max) break;
        s = targets[std::min(targets.size() - 1, static_cast<std::size_t>(unif(rng) * total))];
        ++events;
    }
    ChainStatistics out;
    out.sites = N;
    out.time = t_max;
    out.events = events;
    out.mean.resize(static_cast<std::size_t>(N));
    out.standard_error.resize(static_cast<std::size_t>(N));
    out.covariance.resize(static_cast<std::size_t>(N * N));
    for (int i = 0; i < N; ++i) {
        out.mean[static_cast<std::size_t>(i)] = occ[static_cast<std::size_t>(i)] / span;
        double m = 0, m2 = 0;
        for (int b = 0; b < batches; ++b) {
            double v = batch_occ[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)] / batch_len;
            m += v;
            m2 += v * v;
        }
        m /= batches;
        double var = std::max(0.0, (m2 / batches - m * m) * batches / (batches - 1));
        out.standard_error[static_cast<std::size_t>(i)] = std::sqrt(var / batches);
    }
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            out.covariance[static_cast<std::size_t>(i * N + j)] =
                pair[static_cast<std::size_t>(i * N + j)] / span - out.mean[static_cast<std::size_t>(i)] * out.mean[static_cast<std::size_t>(j)];
    // mixing time of the chain grows like N^2
    out.low_statistics = span < 1000.0 * N * N;
    return out;
}

}  // namespace ssepfree
