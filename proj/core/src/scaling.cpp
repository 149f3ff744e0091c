#include "ssepfree/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ssepfree/errors.hpp"

namespace ssepfree {

namespace {

// Visits nondecreasing index tuples of length r over 0..n-1 with the factor
// 1/prod(multiplicity!) that converts the ordered sum into a sorted one.
void for_each_sorted_tuple(int n, int r, const std::function<void(const std::vector<int>&, double)>& f) {
    std::vector<int> idx(static_cast<std::size_t>(r), 0);
    if (r == 0) {
        f(idx, 1.0);
        return;
    }
    std::function<void(int, int)> rec = [&](int pos, int from) {
        if (pos == r) {
            double inv = 1.0;
            int run = 1;
            for (int i = 1; i < r; ++i) {
                if (idx[static_cast<std::size_t>(i)] == idx[static_cast<std::size_t>(i - 1)]) inv /= ++run;
                else run = 1;
            }
            f(idx, inv);
            return;
        }
        for (int i = from; i < n; ++i) {
            idx[static_cast<std::size_t>(pos)] = i;
            rec(pos + 1, i);
        }
    };
    rec(0, 0);
}

void check_kernels(const CumulantKernelSet& k, int n_max) {
    if (n_max < 1 || n_max > kMaxKernelOrder) throw SizeLimitError("kernel order must lie in 1..6");
    if (k.max_order() < n_max) throw DomainError("kernel set has fewer orders than requested");
}

double wsum(const std::vector<double>& w, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

CumulantKernelSet independent_kernels(const std::function<double(double)>& g0) {
    return CumulantKernelSet{{[g0](std::span<const double> x) { return g0(x[0]); }}};
}

double F0_eval(const CumulantKernelSet& kernels, const GridFunction& q, int n_max) {
    check_kernels(kernels, n_max);
    const auto w = trapezoid_weights(q.intervals());
    const int N = q.size();
    std::vector<double> wq(static_cast<std::size_t>(N)), xs(static_cast<std::size_t>(n_max));
    for (int i = 0; i < N; ++i) wq[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] * q[i];
    double total = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        const auto& psi = kernels.kernels[static_cast<std::size_t>(n - 1)];
        double s = 0.0;
        for_each_sorted_tuple(N, n, [&](const std::vector<int>& idx, double inv) {
            double prod = inv;
            for (int k = 0; k < n; ++k) {
                prod *= wq[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
                xs[static_cast<std::size_t>(k)] = q.x(idx[static_cast<std::size_t>(k)]);
            }
            if (prod != 0.0) s += prod * psi(std::span<const double>(xs.data(), static_cast<std::size_t>(n)));
        });
        total += s;
    }
    return total;
}

GridFunction F0_gradient(const CumulantKernelSet& kernels, const GridFunction& q, int n_max) {
    check_kernels(kernels, n_max);
    const auto w = trapezoid_weights(q.intervals());
    const int N = q.size();
    std::vector<double> wq(static_cast<std::size_t>(N)), xs(static_cast<std::size_t>(n_max));
    for (int i = 0; i < N; ++i) wq[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] * q[i];
    GridFunction g = GridFunction::constant(q.intervals(), 0.0);
    for (int n = 1; n <= n_max; ++n) {
        const auto& psi = kernels.kernels[static_cast<std::size_t>(n - 1)];
        for_each_sorted_tuple(N, n - 1, [&](const std::vector<int>& idx, double inv) {
            double prod = inv;
            for (int k = 0; k < n - 1; ++k) {
                prod *= wq[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
                xs[static_cast<std::size_t>(k + 1)] = q.x(idx[static_cast<std::size_t>(k)]);
            }
            if (prod == 0.0) return;
            for (int j = 0; j < N; ++j) {
                xs[0] = q.x(j);
                g[j] += prod * psi(std::span<const double>(xs.data(), static_cast<std::size_t>(n)));
            }
        });
    }
    return g;
}

F0Functional series_functional(CumulantKernelSet kernels, int n_max) {
    check_kernels(kernels, n_max);
    F0Functional f;
    f.value = [kernels, n_max](const GridFunction& q) { return F0_eval(kernels, q, n_max); };
    f.gradient = [kernels, n_max](const GridFunction& q) { return F0_gradient(kernels, q, n_max); };
    f.jacobian = [kernels, n_max](const GridFunction& q) {
        const auto w = trapezoid_weights(q.intervals());
        const int N = q.size();
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(N, N);
        std::vector<double> wq(static_cast<std::size_t>(N)), xs(static_cast<std::size_t>(n_max));
        for (int i = 0; i < N; ++i) wq[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] * q[i];
        for (int n = 2; n <= n_max; ++n) {
            const auto& psi = kernels.kernels[static_cast<std::size_t>(n - 1)];
            for_each_sorted_tuple(N, n - 2, [&](const std::vector<int>& idx, double inv) {
                double prod = inv;
                for (int k = 0; k < n - 2; ++k) {
                    prod *= wq[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
                    xs[static_cast<std::size_t>(k + 2)] = q.x(idx[static_cast<std::size_t>(k)]);
                }
                if (prod == 0.0) return;
                for (int a = 0; a < N; ++a)
                    for (int b = 0; b < N; ++b) {
                        xs[0] = q.x(a);
                        xs[1] = q.x(b);
                        J(a, b) += prod * w[static_cast<std::size_t>(b)] * psi(std::span<const double>(xs.data(), static_cast<std::size_t>(n)));
                    }
            });
        }
        return J;
    };
    return f;
}

F0Functional linear_functional(const GridFunction& g0) {
    F0Functional f;
    f.value = [g0](const GridFunction& q) {
        const auto w = trapezoid_weights(q.intervals());
        return wsum(w, g0.values(), q.values());
    };
    f.gradient = [g0](const GridFunction&) { return g0; };
    f.jacobian = [g0](const GridFunction& q) { return Eigen::MatrixXd::Zero(q.size(), q.size()).eval(); };
    return f;
}

GridFunction VariationalSolution::density() const {
    GridFunction n = g;
    for (int i = 0; i < n.size(); ++i) n[i] = (1.0 + e[i]) * g[i] / (1.0 + e[i] * g[i]);
    return n;
}

VariationalSolution solve_variational(const GridFunction& e, const F0Functional& f0, const SolverOptions& options) {
    for (double v : e.values())
        if (!(v > -1.0)) throw DomainError("e must exceed -1");
    const double theta = options.damping;
    if (!(theta > 0.0 && theta <= 1.0)) throw DomainError("damping must lie in (0, 1]");
    const auto w = trapezoid_weights(e.intervals());
    const int N = e.size();
    GridFunction q = GridFunction::constant(e.intervals(), 0.0);
    GridFunction g = f0.gradient(q);
    auto q_of = [&](const GridFunction& gg) {
        GridFunction out = gg;
        for (int i = 0; i < N; ++i) {
            double d = 1.0 + e[i] * gg[i];
            if (!(d > 0.0)) throw DomainError("1 + e g left the positive range during iteration");
            out[i] = e[i] / d;
        }
        return out;
    };
    q = q_of(g);
    long it = 0;
    double residual = 0.0;
    for (; it < options.max_iterations; ++it) {
        GridFunction q_new = q_of(g);
        double dq = sup_diff(q_new.values(), q.values());
        for (int i = 0; i < N; ++i) q[i] = (1 - theta) * q[i] + theta * q_new[i];
        GridFunction g_new = f0.gradient(q);
        double dg = sup_diff(g_new.values(), g.values());
        for (int i = 0; i < N; ++i) g[i] = (1 - theta) * g[i] + theta * g_new[i];
        residual = std::max(dq, dg);
        if (!std::isfinite(residual)) throw DomainError("iteration produced non-finite values");
        if (residual < options.tolerance) {
            ++it;
            break;
        }
    }
    if (residual >= options.tolerance)
        throw ConvergenceError("variational iteration did not converge", it, residual);
    // finish on the fixed-point map so that g = dF0/dq holds exactly
    q = q_of(g);
    g = f0.gradient(q);
    VariationalSolution s{e, g, q_of(g), 0.0, it, residual};
    double F = 0.0;
    for (int i = 0; i < N; ++i) F += w[static_cast<std::size_t>(i)] * (std::log1p(e[i] * s.g[i]) - s.q[i] * s.g[i]);
    s.F = F + f0.value(s.q);
    if (f0.auxiliary) s.auxiliary = f0.auxiliary(s.q);
    return s;
}

VariationalSolution solve_free_energy(const GridFunction& h, const F0Functional& f0, const SolverOptions& options) {
    return solve_variational(h.map([](double v) { return std::expm1(v); }), f0, options);
}

double independent_free_energy(const GridFunction& e, const GridFunction& g0) {
    double s = 0.0;
    const auto w = trapezoid_weights(e.intervals());
    for (int i = 0; i < e.size(); ++i) s += w[static_cast<std::size_t>(i)] * std::log1p(e[i] * g0[i]);
    return s;
}

namespace {

double xlogy_ratio(double a, double b) {
    // a log(a/b) with 0 log 0 = 0
    if (a == 0.0) return 0.0;
    return a * std::log(a / b);
}

void check_profile(const GridFunction& n) {
    for (int i = 0; i < n.size(); ++i) {
        bool endpoint = (i == 0 || i == n.size() - 1);
        if (endpoint ? !(n[i] >= 0.0 && n[i] <= 1.0) : !(n[i] > 0.0 && n[i] < 1.0))
            throw DomainError("density must lie in (0,1) at interior nodes and in [0,1] at the ends");
    }
}

bool admissible(double n, double g) {
    if (n == 0.0) return g < 1.0 && g >= 0.0;
    if (n == 1.0) return g > 0.0 && g <= 1.0;
    return g > 0.0 && g < 1.0;
}

double q_of_g(double n, double g) {
    double a = (n == 0.0) ? 0.0 : n / g;
    double b = (n == 1.0) ? 0.0 : (1.0 - n) / (1.0 - g);
    return a - b;
}

double dq_dg(double n, double g) {
    double a = (n == 0.0) ? 0.0 : n / (g * g);
    double b = (n == 1.0) ? 0.0 : (1.0 - n) / ((1.0 - g) * (1.0 - g));
    return -a - b;
}

}  // namespace

double independent_rate_function(const GridFunction& n, const GridFunction& g0) {
    check_profile(n);
    const auto w = trapezoid_weights(n.intervals());
    double s = 0.0;
    for (int i = 0; i < n.size(); ++i)
        s += w[static_cast<std::size_t>(i)] * (xlogy_ratio(n[i], g0[i]) + xlogy_ratio(1.0 - n[i], 1.0 - g0[i]));
    return s;
}

RateSolution rate_function(const GridFunction& n, const F0Functional& f0, const SolverOptions& options) {
    check_profile(n);
    const int N = n.size();
    const auto w = trapezoid_weights(n.intervals());
    auto q_from = [&](const GridFunction& g) {
        GridFunction q = g;
        for (int i = 0; i < N; ++i) {
            if (!admissible(n[i], g[i])) throw DomainError("profile is not reachable: g left (0,1)");
            q[i] = q_of_g(n[i], g[i]);
        }
        return q;
    };
    auto feasible = [&](const GridFunction& g) {
        for (int i = 0; i < N; ++i)
            if (!admissible(n[i], g[i])) return false;
        return true;
    };
    // start from dF0/dq at q = 0 where admissible, else from the density itself
    GridFunction g = f0.gradient(GridFunction::constant(n.intervals(), 0.0));
    for (int i = 0; i < N; ++i)
        if (!admissible(n[i], g[i])) g[i] = std::clamp(n[i], 1e-3, 1.0 - 1e-3);
    auto residual_of = [&](const GridFunction& gg, GridFunction& r) {
        GridFunction grad = f0.gradient(q_from(gg));
        r = gg;
        for (int i = 0; i < N; ++i) r[i] = gg[i] - grad[i];
        return r.sup_norm();
    };
    GridFunction r;
    double res = residual_of(g, r);
    long it = 0;
    for (; it < options.max_iterations && res >= options.tolerance; ++it) {
        GridFunction step = r;
        if (f0.jacobian) {
            GridFunction q = q_from(g);
            Eigen::MatrixXd J = -f0.jacobian(q);
            for (int j = 0; j < N; ++j) J.col(j) *= dq_dg(n[j], g[j]);
            J += Eigen::MatrixXd::Identity(N, N);
            Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(r.values().data(), N);
            Eigen::VectorXd d = J.partialPivLu().solve(rhs);
            for (int i = 0; i < N; ++i) step[i] = d(i);
        } else {
            for (int i = 0; i < N; ++i) step[i] = options.damping * r[i];
        }
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k, lambda *= 0.5) {
            GridFunction trial = g;
            for (int i = 0; i < N; ++i) trial[i] = g[i] - lambda * step[i];
            if (!feasible(trial)) continue;
            GridFunction rt;
            double rnew = residual_of(trial, rt);
            if (!f0.jacobian || rnew < res || k == 59) {
                g = trial;
                r = rt;
                res = rnew;
                accepted = true;
                break;
            }
        }
        if (!accepted) throw ConvergenceError("rate function iteration stalled", it, res);
    }
    if (res >= options.tolerance) throw ConvergenceError("rate function iteration did not converge", it, res);
    RateSolution s;
    s.g = g;
    s.q = q_from(g);
    s.iterations = it;
    s.residual = res;
    double v = 0.0;
    for (int i = 0; i < N; ++i)
        v += w[static_cast<std::size_t>(i)] * (xlogy_ratio(n[i], g[i]) + xlogy_ratio(1.0 - n[i], 1.0 - g[i]) + s.q[i] * g[i]);
    s.value = v - f0.value(s.q);
    s.field = g;
    for (int i = 0; i < N; ++i) {
        bool interior = n[i] > 0.0 && n[i] < 1.0;
        s.field[i] = interior ? std::log(n[i] * (1.0 - g[i]) / (g[i] * (1.0 - n[i]))) : 0.0;
    }
    return s;
}

LegendreResult legendre_transform(const FreeEnergyFunctional& F, const GridFunction& n, const LegendreOptions& options) {
    const int N = n.size();
    const auto w = trapezoid_weights(n.intervals());
    auto evaluate = [&](const GridFunction& h, std::vector<double>& grad) {
        FreeEnergyEvaluation ev = F(h);
        std::vector<double> dens = ev.density;
        if (dens.empty()) {
            dens.assign(static_cast<std::size_t>(N), 0.0);
            for (int k = 0; k < N; ++k) {
                GridFunction hp = h, hm = h;
                hp[k] += options.fd_step;
                hm[k] -= options.fd_step;
                dens[static_cast<std::size_t>(k)] = (F(hp).value - F(hm).value) / (2 * options.fd_step * w[static_cast<std::size_t>(k)]);
            }
        }
        grad.resize(static_cast<std::size_t>(N));
        for (int k = 0; k < N; ++k) grad[static_cast<std::size_t>(k)] = n[k] - dens[static_cast<std::size_t>(k)];
        return wsum(w, h.values(), n.values()) - ev.value;
    };
    std::mt19937 rng(options.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    LegendreResult best;
    bool have = false;
    double lo = 0, hi = 0;
    for (int s = 0; s < std::max(1, options.starts); ++s) {
        GridFunction h = GridFunction::constant(n.intervals(), 0.0);
        if (s > 0)
            for (int k = 0; k < N; ++k) h[k] = unif(rng);
        std::vector<double> grad, grad_old;
        double phi = evaluate(h, grad);
        double alpha = 1.0;
        long it = 0;
        double gnorm = 0;
        GridFunction h_old = h;
        for (; it < options.max_iterations; ++it) {
            gnorm = 0;
            for (double v : grad) gnorm = std::max(gnorm, std::abs(v));
            if (gnorm < options.tolerance) break;
            double g2 = wsum(w, grad, grad);
            double step = alpha;
            GridFunction trial = h;
            std::vector<double> tgrad;
            double tphi = phi;
            bool ok = false;
            for (int k = 0; k < 50; ++k, step *= 0.5) {
                for (int i = 0; i < N; ++i) trial[i] = h[i] + step * grad[static_cast<std::size_t>(i)];
                try {
                    tphi = evaluate(trial, tgrad);
                } catch (const Error&) {
                    continue;
                }
                if (tphi >= phi + 1e-4 * step * g2) {
                    ok = true;
                    break;
                }
            }
            if (!ok) break;
            // Barzilai-Borwein step for the next iteration
            double sy = 0, ss = 0;
            for (int i = 0; i < N; ++i) {
                double sv = trial[i] - h[i];
                double yv = grad[static_cast<std::size_t>(i)] - tgrad[static_cast<std::size_t>(i)];
                ss += w[static_cast<std::size_t>(i)] * sv * sv;
                sy += w[static_cast<std::size_t>(i)] * sv * yv;
            }
            alpha = (sy > 0) ? std::clamp(ss / sy, 1e-3, 1e3) : std::min(2 * step, 1e3);
            h = trial;
            phi = tphi;
            grad = tgrad;
        }
        if (!have || phi > best.value) {
            best.value = phi;
            best.h = h;
            best.iterations = it;
            best.gradient_norm = gnorm;
            best.converged = gnorm < options.tolerance;
        }
        lo = have ? std::min(lo, phi) : phi;
        hi = have ? std::max(hi, phi) : phi;
        have = true;
    }
    best.spread = hi - lo;
    return best;
}

std::vector<std::vector<double>> block_tensors(const CumulantKernelSet& kernels, int blocks, int n_max, int sub) {
    check_kernels(kernels, n_max);
    if (blocks < 1 || sub < 1) throw DomainError("blocks and sub-nodes must be positive");
    // midpoint nodes inside every block
    std::vector<std::vector<double>> nodes(static_cast<std::size_t>(blocks));
    for (int a = 0; a < blocks; ++a)
        for (int s = 0; s < sub; ++s) nodes[static_cast<std::size_t>(a)].push_back((a + (s + 0.5) / sub) / blocks);
    std::vector<std::vector<double>> out;
    for (int k = 1; k <= n_max; ++k) {
        const auto& psi = kernels.kernels[static_cast<std::size_t>(k - 1)];
        std::size_t cells = 1;
        for (int i = 0; i < k; ++i) cells *= static_cast<std::size_t>(blocks);
        std::vector<double> t(cells, 0.0);
        std::vector<double> xs(static_cast<std::size_t>(k));
        std::vector<int> a(static_cast<std::size_t>(k)), s(static_cast<std::size_t>(k));
        for (std::size_t c = 0; c < cells; ++c) {
            std::size_t r = c;
            for (int i = k - 1; i >= 0; --i) {
                a[static_cast<std::size_t>(i)] = static_cast<int>(r % static_cast<std::size_t>(blocks));
                r /= static_cast<std::size_t>(blocks);
            }
            std::size_t inner = 1;
            for (int i = 0; i < k; ++i) inner *= static_cast<std::size_t>(sub);
            double acc = 0;
            for (std::size_t m = 0; m < inner; ++m) {
                std::size_t rr = m;
                for (int i = k - 1; i >= 0; --i) {
                    s[static_cast<std::size_t>(i)] = static_cast<int>(rr % static_cast<std::size_t>(sub));
                    rr /= static_cast<std::size_t>(sub);
                    xs[static_cast<std::size_t>(i)] = nodes[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])][static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
                }
                acc += psi(std::span<const double>(xs.data(), xs.size()));
            }
            t[c] = acc / static_cast<double>(inner);
        }
        out.push_back(std::move(t));
    }
    return out;
}

BlockSolution solve_blocks(const BlockProblem& pb, const SolverOptions& options) {
    const std::size_t B = pb.e.size();
    if (pb.p.size() != B) throw DomainError("block weights and fields differ in length");
    const double theta = options.damping;
    // gradient of sum_k (1/k!) Phi_k q...q in q_a: sum_k (1/(k-1)!) sum Phi_k(a, ...) q...q
    auto gradient = [&](const std::vector<double>& q) {
        std::vector<double> g(B, 0.0);
        double fact = 1.0;  // (k-1)!
        for (std::size_t k = 1; k <= pb.phi.size(); ++k) {
            if (k > 1) fact *= static_cast<double>(k - 1);
            const auto& t = pb.phi[k - 1];
            std::size_t rest = t.size() / B;
            for (std::size_t a = 0; a < B; ++a) {
                double acc = 0;
                for (std::size_t r = 0; r < rest; ++r) {
                    double prod = t[a * rest + r];
                    std::size_t rr = r;
                    for (std::size_t i = 1; i < k; ++i) {
                        prod *= q[rr % B];
                        rr /= B;
                    }
                    acc += prod;
                }
                g[a] += acc / fact;
            }
        }
        return g;
    };
    auto f0 = [&](const std::vector<double>& q) {
        double s = 0, fact = 1.0;
        for (std::size_t k = 1; k <= pb.phi.size(); ++k) {
            fact *= static_cast<double>(k);
            const auto& t = pb.phi[k - 1];
            double part = 0;
            for (std::size_t c = 0; c < t.size(); ++c) {
                double prod = t[c];
                std::size_t r = c;
                for (std::size_t i = 0; i < k; ++i) {
                    prod *= q[r % B];
                    r /= B;
                }
                part += prod;
            }
            s += part / fact;
        }
        return s;
    };
    auto q_of = [&](const std::vector<double>& g) {
        std::vector<double> q(B);
        for (std::size_t a = 0; a < B; ++a) {
            double d = 1.0 + pb.e[a] * g[a];
            if (!(d > 0)) throw DomainError("1 + e g left the positive range during iteration");
            q[a] = pb.p[a] * pb.e[a] / d;
        }
        return q;
    };
    std::vector<double> q(B, 0.0);
    std::vector<double> g = gradient(q);
    q = q_of(g);
    double residual = 0;
    long it = 0;
    for (; it < options.max_iterations; ++it) {
        auto qn = q_of(g);
        double dq = sup_diff(qn, q);
        for (std::size_t a = 0; a < B; ++a) q[a] = (1 - theta) * q[a] + theta * qn[a];
        auto gn = gradient(q);
        double dg = sup_diff(gn, g);
        for (std::size_t a = 0; a < B; ++a) g[a] = (1 - theta) * g[a] + theta * gn[a];
        residual = std::max(dq, dg);
        if (residual < options.tolerance) {
            ++it;
            break;
        }
    }
    if (residual >= options.tolerance) throw ConvergenceError("block iteration did not converge", it, residual);
    q = q_of(g);
    g = gradient(q);
    q = q_of(g);
    BlockSolution s{g, q, 0.0, it, residual};
    double F = 0;
    for (std::size_t a = 0; a < B; ++a) F += -g[a] * q[a] + pb.p[a] * std::log1p(pb.e[a] * g[a]);
    s.F = F + f0(q);
    return s;
}

}  // namespace ssepfree
