#include "ssepfree/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <random>

#include "ssepfree/bernoulli.hpp"
#include "ssepfree/cumulants.hpp"
#include "ssepfree/errors.hpp"
#include "ssepfree/freeprob.hpp"
#include "ssepfree/graphs.hpp"
#include "ssepfree/oracles.hpp"
#include "ssepfree/partitions.hpp"
#include "ssepfree/scaling.hpp"
#include "ssepfree/ssep.hpp"

namespace ssepfree {

namespace {

class Sheet {
public:
    explicit Sheet(SuiteResult& r) : r_(r) {}

    void below(const std::string& label, double value, double bound) { add(label, value, bound, "<", value < bound); }
    void at_most(const std::string& label, double value, double bound) { add(label, value, bound, "<=", value <= bound); }
    void at_least(const std::string& label, double value, double bound) { add(label, value, bound, ">=", value >= bound); }
    void equal(const std::string& label, double value, double expected) { add(label, value, expected, "==", value == expected); }
    void info(const std::string& label, double value) { add(label, value, 0.0, "info", true); }

private:
    void add(const std::string& label, double value, double bound, const char* rel, bool ok) {
        r_.measurements.push_back({label, value, bound, rel, ok});
    }
    SuiteResult& r_;
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<int> iota_indices(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i + 1;
    return v;
}

std::vector<int> sites_in(std::uint32_t mask) {
    std::vector<int> v;
    for (int i = 0; mask >> i; ++i)
        if (mask >> i & 1u) v.push_back(i + 1);
    return v;
}

// --- 1 -------------------------------------------------------------------

void chromatic_suite(Sheet& s, std::uint64_t) {
    int graphs = 0;
    long identity_failures = 0, colouring_mismatches = 0;
    for (int n = 1; n <= 6; ++n) {
        for (const auto& g : connected_graphs_up_to_isomorphism(n)) {
            ++graphs;
            const auto lattice = connected_partition_lattice(g);
            for (int k = 1; k <= 5; ++k) {
                BigInt sum = 0;
                for (const auto& pi : lattice) sum += chromatic_polynomial(g.quotient(pi)).evaluate(BigInt(k));
                BigInt expected = 1;
                for (int i = 0; i < n; ++i) expected *= k;
                if (sum != expected) ++identity_failures;
                if (chromatic_polynomial(g).evaluate(BigInt(k)) != BigInt(oracle::count_colourings(g, k)))
                    ++colouring_mismatches;
            }
        }
    }
    s.equal("connected graphs with <= 6 vertices", graphs, 143);
    s.equal("graphs x k violating sum chi(G_pi)(k) = k^|V|", static_cast<double>(identity_failures), 0);
    s.equal("chi_G(k) differing from brute-force colouring counts", static_cast<double>(colouring_mismatches), 0);
    s.equal("mu(K3)", to_double(mu_graph(SimpleGraph::complete(3))), 2);
    long tree_failures = 0;
    for (int n = 1; n <= 8; ++n) {
        std::vector<std::pair<int, int>> star;
        for (int v = 2; v <= n; ++v) star.push_back({1, v});
        const BigInt expected = (n % 2) ? 1 : -1;
        if (mu_graph(SimpleGraph::path(n)) != expected) ++tree_failures;
        if (mu_graph(SimpleGraph::from_edges(n, star)) != expected) ++tree_failures;
    }
    s.equal("paths and stars (n <= 8) with mu != (-1)^(n-1)", static_cast<double>(tree_failures), 0);
    const auto H = TaggedBipartiteGraph::from_black_tag_sets({1, 1, 2, 2, 3});
    s.equal("mu(H black graph)", to_double(black_mobius(H)), 4);
    s.equal("|Aut H| (whites unlabelled)", static_cast<double>(automorphism_count(H, false)), 8);
    s.info("|Aut H| with site tags fixed", static_cast<double>(automorphism_count(H, true)));
}

// --- 2 -------------------------------------------------------------------

void cumulant_suite(Sheet& s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double round_trip = 0;
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 6;
        MomentTable m;
        for (std::uint32_t S = 1; S < (1u << n); ++S) m.set(sites_in(S), u(rng));
        CumulantTable k;
        for (std::uint32_t S = 1; S < (1u << n); ++S) k.set(sites_in(S), moments_to_cumulants(m, sites_in(S)));
        for (std::uint32_t S = 1; S < (1u << n); ++S)
            round_trip = std::max(round_trip, rel_err(cumulants_to_moments(k, sites_in(S)), m.at(sites_in(S))));
    }
    s.at_most("moments -> cumulants -> moments, 100 random tables n <= 6", round_trip, 1e-12);

    double forward = 0, leonov_sum = 0, inverse = 0;
    long pairs = 0;
    for (int n = 2; n <= 5; ++n) {
        const auto law = oracle::DiscreteLaw::random(n, rng);
        const auto idx = iota_indices(n);
        MomentTable m;
        for (std::uint32_t S = 1; S < (1u << n); ++S) {
            const auto sites = sites_in(S);
            m.set(sites, law.expect([&](const std::vector<double>& x) {
                double p = 1;
                for (int i : sites) p *= x[static_cast<std::size_t>(i - 1)];
                return p;
            }));
        }
        CumulantTable k;
        for (std::uint32_t S = 1; S < (1u << n); ++S) k.set(sites_in(S), moments_to_cumulants(m, sites_in(S)));
        const auto all = enumerate_partitions(n);
        std::vector<std::vector<int>> singletons;
        for (int i = 1; i <= n; ++i) singletons.push_back({i});
        const double K_direct = oracle::cumulant_of_products(law, singletons);
        for (const auto& gamma : all) {
            double total = 0;
            for (const auto& xi : all) {
                if (!refines(gamma, xi)) continue;
                ++pairs;
                const double lib = product_cumulant(k, idx, gamma, xi);
                total += lib;
                double ref = 1;
                for (const auto& B : xi.blocks()) {
                    std::vector<std::vector<int>> groups;
                    for (const auto& G : gamma.blocks())
                        if (std::includes(B.begin(), B.end(), G.begin(), G.end())) groups.push_back(G);
                    ref *= oracle::cumulant_of_products(law, groups);
                }
                forward = std::max(forward, rel_err(lib, ref));
            }
            leonov_sum = std::max(leonov_sum, rel_err(total, m.at(idx)));
            auto kgamma = [&](const std::vector<int>& block) {
                std::vector<std::vector<int>> groups;
                for (const auto& G : gamma.blocks()) {
                    std::vector<int> part;
                    std::set_intersection(G.begin(), G.end(), block.begin(), block.end(), std::back_inserter(part));
                    if (!part.empty()) groups.push_back(part);
                }
                return oracle::cumulant_of_products(law, groups);
            };
            inverse = std::max(inverse, rel_err(inverse_product_cumulant(kgamma, gamma), K_direct));
        }
    }
    s.info("(gamma, xi) pairs checked on discrete laws, n <= 5", static_cast<double>(pairs));
    s.at_most("product cumulant vs cumulants of explicit products", forward, 1e-12);
    s.at_most("sum over xi >= gamma of product cumulants vs joint moment", leonov_sum, 1e-12);
    s.at_most("inverse product-cumulant formula vs direct joint cumulant", inverse, 1e-12);
}

// --- 3 -------------------------------------------------------------------

void expansion_suite(Sheet& s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double ct = 0, ft = 0, cf = 0;
    for (int t = 0; t < 20; ++t) {
        const auto model = BernoulliModel::random(3, rng);
        const auto table = noncoincident_cumulants(model);
        const auto c = graph_expansion_W(table, 3, 4);
        const auto f = feynman_expansion_W(table, 3, 4);
        const auto taylor = taylor_expansion_W(model, 4);
        ct = std::max(ct, c.max_difference(taylor));
        ft = std::max(ft, f.max_difference(taylor));
        cf = std::max(cf, c.max_difference(f));
    }
    s.at_most("chromatic expansion vs Taylor coefficients of log Z (N=3, degree <= 4, 20 models)", ct, 1e-9);
    s.at_most("Feynman expansion vs Taylor coefficients of log Z", ft, 1e-9);
    s.at_most("chromatic vs Feynman expansion", cf, 1e-9);
    const KMonomial graphil{1, 1, 2, 2, 3};
    auto coeff = [&](const SymbolicSeries& series) {
        auto it = series.find(graphil);
        return it == series.end() ? 0.0 : to_double(it->second);
    };
    s.equal("e1^3 e2^3 coefficient of K1(b1)^2 K1(b2)^2 K2(b1,b2), chromatic", coeff(chromatic_series(2, 6)), 1);
    s.equal("same coefficient, Feynman coverings", coeff(feynman_series(2, 6)), 1);
    s.equal("same coefficient, formal log of Z", coeff(taylor_series(2, 6)), 1);
    const auto cs = chromatic_series(3, 4);
    s.equal("symbolic series equal term by term (N=3, degree <= 4)",
            (cs == feynman_series(3, 4) && cs == taylor_series(3, 4)) ? 1 : 0, 1);
}

// --- 4 -------------------------------------------------------------------

void covering_suite(Sheet& s, std::uint64_t) {
    long graphs = 0, failures = 0, coverings_total = 0;
    for (int N = 1; N <= 3; ++N) {
        for (const auto& g : enumerate_chromatic_graphs_by_blacks(N, 3)) {
            if (g.whites() > 3) continue;
            ++graphs;
            Rational sum = 0;
            const auto covs = coverings(g);
            coverings_total += static_cast<long>(covs.size());
            for (const auto& c : covs) sum += c.weight();
            if (sum != Rational(black_mobius(g), BigInt(automorphism_count(g)))) ++failures;
        }
    }
    s.info("chromatic-class graphs checked (<= 3 blacks, <= 3 whites, N <= 3)", static_cast<double>(graphs));
    s.info("Feynman-class coverings enumerated", static_cast<double>(coverings_total));
    s.equal("graphs where sum of covering weights != mu / |Aut| (exact rationals)", static_cast<double>(failures), 0);
}

// --- 5 -------------------------------------------------------------------

void free_cumulant_suite(Sheet& s, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double closed = 0, multilinear = 0, printed_r4 = 0;
    for (int t = 0; t < 10; ++t) {
        const auto b = GridFunction::from_function(64, [&](double) { return u(rng); });
        const auto m = moments_of_b(b, 4);
        const auto R = free_cumulants_from_moments(m, 4);
        const double m1 = m[1], m2 = m[2], m3 = m[3], m4 = m[4];
        const double r2 = m2 - m1 * m1;
        const double r3 = m3 - 3 * m2 * m1 + 2 * m1 * m1 * m1;
        const double r4 = m4 - 4 * m3 * m1 + 10 * m2 * m1 * m1 - 2 * m2 * m2 - 5 * std::pow(m1, 4);
        closed = std::max({closed, rel_err(R[2], r2), rel_err(R[3], r3), rel_err(R[4], r4)});
        printed_r4 = std::max(printed_r4, rel_err(R[4], r4 + 10 * std::pow(m1, 4)));
        MomentTable table([&](const std::vector<int>& key) { return m[key.size()]; });
        for (int n = 2; n <= 4; ++n)
            multilinear = std::max(multilinear,
                                   rel_err(free_cumulants_multilinear(table, std::vector<int>(static_cast<std::size_t>(n), 1)),
                                           R[static_cast<std::size_t>(n)]));
    }
    s.at_most("R2..R4 of b vs moment closed forms (10 random grids)", closed, 1e-10);
    s.at_most("single-variable R2..R4 vs non-crossing Moebius inversion", multilinear, 1e-10);
    s.info("R4 against the variant with +5 m1^4 (sign misprint)", printed_r4);

    double e2 = 0, e3 = 0, e4 = 0;
    double min_gap = INFINITY;
    for (int t = 0; t < 50; ++t) {
        const auto p2 = oracle::sorted_points(2, rng);
        const double x = p2[0], y = p2[1];
        e2 = std::max({e2, std::abs(psi_sharp({x, y}) - x * (1 - y)), std::abs(psi_sharp({y, x}) - x * (1 - y))});
        auto p3 = oracle::sorted_points(3, rng);
        const double want3 = p3[0] * (1 - 2 * p3[1]) * (1 - p3[2]);
        std::vector<double> perm = p3;
        std::sort(perm.begin(), perm.end());
        do e3 = std::max(e3, std::abs(psi_sharp(perm) - want3));
        while (std::next_permutation(perm.begin(), perm.end()));
        const auto q = oracle::sorted_points(4, rng);
        const double x1 = q[0], x2 = q[1], x3 = q[2], x4 = q[3];
        const double a = x1 * (1 - 3 * x2 - 2 * x3 + 5 * x2 * x3) * (1 - x4);
        const double c = x1 * (1 - 4 * x2 - x3 + 5 * x2 * x3) * (1 - x4);
        const double v1 = psi_sharp({x1, x2, x3, x4});
        const double v2 = psi_sharp({x1, x3, x4, x2});
        const double v3 = psi_sharp({x1, x3, x2, x4});
        e4 = std::max({e4, std::abs(v1 - a), std::abs(v2 - a), std::abs(v3 - c)});
        min_gap = std::min(min_gap, std::abs(v3 - v1));
    }
    s.at_most("psi#2 vs x(1-y), both orders, 50 tuples", e2, 1e-12);
    s.at_most("psi#3 vs x(1-2y)(1-z), all 6 orders", e3, 1e-12);
    s.at_most("psi#4 three orderings vs their closed forms", e4, 1e-12);
    s.info("smallest |psi#4(x1,x3,x2,x4) - psi#4(x1,x2,x3,x4)| (order dependence)", min_gap);
}

// --- 6 -------------------------------------------------------------------

double fitted_exponent(const std::vector<double>& v, const std::vector<double>& r) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = std::log(v[i]), y = std::log(r[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void f0_suite(Sheet& s, std::uint64_t) {
    const int M = 512;
    const std::vector<std::pair<std::string, std::function<double(double)>>> profiles = {
        {"constant a = 1", [](double) { return 1.0; }},
        {"a = sin(2 pi x)", [](double x) { return std::sin(2 * M_PI * x); }},
    };
    for (const auto& [name, fn] : profiles) {
        const auto a = GridFunction::from_function(M, fn);
        const auto psi = ssep_cumulant_integrals(a, 5);
        std::vector<double> vs, rs;
        for (int i = 1; i <= 6; ++i) {
            const double v = 0.05 * i;
            double series = 0, fact = 1;
            for (int n = 1; n <= 5; ++n) {
                fact *= n;
                series += std::pow(v, n) * psi[static_cast<std::size_t>(n)] / fact;
            }
            vs.push_back(v);
            rs.push_back(std::abs(F0_ssep(a.map([v](double y) { return v * y; })) - series));
        }
        s.at_least("fitted exponent of F0[v a] - series through n = 5, " + name, fitted_exponent(vs, rs), 5.5);
        s.info("residual at v = 0.05, " + name, rs.front());
    }
}

// --- 7 -------------------------------------------------------------------

void equivalence_suite(Sheet& s, std::uint64_t) {
    const int M = 512;
    const std::vector<std::pair<std::string, std::function<double(double)>>> profiles = {
        {"h = 0.5", [](double) { return 0.5; }},
        {"h = 1", [](double) { return 1.0; }},
        {"h = x(1-x)", [](double x) { return x * (1 - x); }},
        {"h = sin(pi x)", [](double x) { return std::sin(M_PI * x); }},
    };
    for (const auto& [name, fn] : profiles) {
        const auto rep = equivalence_report(GridFunction::from_function(M, fn));
        s.below("relative difference free vs classical, " + name, rep.relative_difference, 1e-4);
        s.at_most("g'(z - l) = 1 residual, " + name, rep.slope_identity_residual, 1e-6);
        s.at_most("integral q g = 1 - z residual, " + name, rep.pairing_identity_residual, 1e-6);
        s.info("classical g' (z - l) - 1 at interior nodes, " + name, rep.cross_identity_residual);
    }
    const auto zero = F_ssep_free(GridFunction::constant(M, 0.0));
    double dev = 0;
    for (int i = 0; i <= M; ++i) dev = std::max(dev, std::abs(zero.g[i] - zero.g.x(i)));
    s.at_most("|F| at h = 0", std::abs(zero.F), 1e-8);
    s.at_most("sup |g - x| at h = 0", dev, 1e-8);
}

// --- 8 -------------------------------------------------------------------

void rate_suite(Sheet& s, std::uint64_t seed) {
    const int M = 128;
    std::mt19937_64 rng(seed);
    const auto typical = GridFunction::from_function(M, [](double x) { return x; });
    s.below("rate at n(x) = x", std::abs(rate_function_ssep(typical).value), 1e-8);

    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double smallest = INFINITY;
    for (int t = 0; t < 50; ++t) {
        double c[3] = {u(rng), u(rng), u(rng)};
        const double norm = std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]);
        for (double& v : c) v *= 0.9 / norm;
        const auto n = GridFunction::from_function(M, [&](double x) {
            double bump = 0;
            for (int k = 0; k < 3; ++k) bump += c[k] * std::sin((k + 1) * M_PI * x);
            return x + x * (1 - x) * bump;
        });
        smallest = std::min(smallest, rate_function_ssep(n).value);
    }
    s.at_least("smallest rate over 50 random smooth profiles", smallest, 0.0);

    const std::vector<std::function<double(double)>> fields = {
        [](double) { return 0.5; },
        [](double) { return 1.0; },
        [](double x) { return std::sin(M_PI * x); },
        [](double x) { return -1 + 2 * x; },
        [](double x) { return 2 * x * (1 - x); },
    };
    const auto w = trapezoid_weights(M);
    double duality = 0;
    for (const auto& fh : fields) {
        const auto h = GridFunction::from_function(M, fh);
        const auto sol = F_ssep_free(h);
        const auto n = sol.density();
        double hn = 0;
        for (int i = 0; i <= M; ++i) hn += w[static_cast<std::size_t>(i)] * h[i] * n[i];
        duality = std::max(duality, std::abs(sol.F + rate_function_ssep(n).value - hn));
    }
    s.below("Legendre duality F[h] + I[n*] - integral h n*, 5 pairs", duality, 1e-4);

    // sup over h computed numerically on a coarse grid
    const int Mc = 32;
    FreeEnergyFunctional F = [](const GridFunction& h) {
        const auto sol = F_ssep_free(h);
        return FreeEnergyEvaluation{sol.F, sol.density().values()};
    };
    const auto hc = GridFunction::from_function(Mc, [](double x) { return std::sin(M_PI * x); });
    const auto nc = F_ssep_free(hc).density();
    const auto lt = legendre_transform(F, nc);
    s.below("numerical sup_h [integral h n - F[h]] vs rate, M = 32", std::abs(lt.value - rate_function_ssep(nc).value), 1e-4);

    const auto g0 = GridFunction::from_function(M, [](double x) { return 0.3 + 0.4 * x; });
    double pointwise = 0, value = 0;
    for (int t = 0; t < 5; ++t) {
        const double c = 0.8 * u(rng);
        const auto n = GridFunction::from_function(M, [&](double x) { return x + c * x * (1 - x); });
        const auto rs = rate_function(n, linear_functional(g0));
        for (int i = 0; i <= M; ++i) pointwise = std::max(pointwise, std::abs(rs.g[i] - g0[i]));
        value = std::max(value, std::abs(rs.value - independent_rate_function(n, g0)));
    }
    s.at_most("independent kernel: sup |g - g0|", pointwise, 1e-10);
    s.at_most("independent kernel: rate vs pointwise n log(n/g0) + (1-n) log((1-n)/(1-g0))", value, 1e-10);
}

// --- 9 -------------------------------------------------------------------

void chain_suite(Sheet& s, std::uint64_t seed) {
    const int N = 8;
    const auto ss = exact_steady_state(N);
    bool monotone = true;
    for (int i = 1; i < N; ++i) monotone = monotone && ss.mean(i) < ss.mean(i + 1);
    s.equal("exact mean profile strictly increasing (N = 8)", monotone ? 1 : 0, 1);
    s.below("mean at site 1 (left reservoir density 0)", ss.mean(1), 0.5);
    s.at_least("mean at site N (right reservoir density 1)", ss.mean(N), 0.5);
    s.info("mean at site 1", ss.mean(1));
    s.info("mean at site N", ss.mean(N));
    double largest = -INFINITY, deviation = 0, deviation_iN = 0;
    for (int i = 1; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j) {
            const double c = ss.connected(i, j);
            largest = std::max(largest, c);
            const double xi = i / (N + 1.0), xj = j / (N + 1.0);
            const double ref = -xi * (1 - xj) / N;
            deviation = std::max(deviation, std::abs(c - ref) / std::abs(ref));
            const double ref_iN = -(double(i) / N) * (1 - double(j) / N) / N;
            deviation_iN = std::max(deviation_iN, ref_iN != 0 ? std::abs(c - ref_iN) / std::abs(ref_iN) : INFINITY);
        }
    s.below("largest connected two-point function, i < j", largest, 0.0);
    s.at_most("relative deviation from -x_i(1-x_j)/N, x_i = i/(N+1)", deviation, 0.3);
    s.info("relative deviation with x_i = i/N (inf where the reference vanishes)", deviation_iN);

    const int Ns = 6;
    const auto exact = exact_steady_state(Ns);
    const auto sim = simulate_ssep(Ns, 1e6, seed);
    double worst = 0;
    for (int i = 1; i <= Ns; ++i) {
        const double se = sim.standard_error[static_cast<std::size_t>(i - 1)];
        worst = std::max(worst, std::abs(sim.mean[static_cast<std::size_t>(i - 1)] - exact.mean(i)) / se);
    }
    s.at_most("Gillespie (N = 6, t = 1e6) vs exact means, in standard errors", worst, 3.0);
    s.info("simulated events", static_cast<double>(sim.events));
}

struct SuiteSpec {
    int criterion;
    const char* name;
    const char* title;
    double time_limit;
    void (*run)(Sheet&, std::uint64_t);
};

const std::vector<SuiteSpec>& registry() {
    static const std::vector<SuiteSpec> r = {
        {1, "chromatic", "Chromatic polynomials and Moebius values", 60, chromatic_suite},
        {2, "cumulants", "Cumulant algebra", 120, cumulant_suite},
        {3, "expansion", "Expansion equivalence", 300, expansion_suite},
        {4, "covering", "Covering identity", 300, covering_suite},
        {5, "free-cumulants", "Free-cumulant closed forms", 60, free_cumulant_suite},
        {6, "f0-series", "F0 integral representation vs cumulant series", 60, f0_suite},
        {7, "equivalence", "Free vs classical free energy", 120, equivalence_suite},
        {8, "rate", "Rate-function properties", 300, rate_suite},
        {9, "chain", "Finite SSEP chain", 600, chain_suite},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& s : registry()) v.push_back(s.name);
        return v;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    auto it = std::find_if(registry().begin(), registry().end(), [&](const SuiteSpec& s) { return name == s.name; });
    if (it == registry().end()) throw ValidationError("unknown suite '" + name + "'");
    SuiteResult r;
    r.criterion = it->criterion;
    r.name = it->name;
    r.title = it->title;
    r.time_limit = it->time_limit;
    Sheet sheet(r);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        it->run(sheet, seed);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.passed = r.error.empty() && r.seconds < r.time_limit &&
               std::all_of(r.measurements.begin(), r.measurements.end(), [](const Measurement& m) { return m.passed; });
    return r;
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, std::uint64_t seed, bool parallel) {
    std::vector<std::string> list;
    for (const auto& n : names) {
        if (n == "all") {
            list.insert(list.end(), suite_names().begin(), suite_names().end());
        } else {
            if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
                throw ValidationError("unknown suite '" + n + "'");
            list.push_back(n);
        }
    }
    std::vector<SuiteResult> out;
    if (!parallel) {
        for (const auto& n : list) out.push_back(run_suite(n, seed));
        return out;
    }
    std::vector<std::future<SuiteResult>> jobs;
    for (const auto& n : list) jobs.push_back(std::async(std::launch::async, [n, seed] { return run_suite(n, seed); }));
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

std::string describe(const SuiteResult& r) {
    std::string out;
    char buf[512];
    for (const auto& m : r.measurements) {
        if (m.relation == "info")
            std::snprintf(buf, sizeof buf, "    %-6s %s = %.6g\n", "info", m.label.c_str(), m.value);
        else
            std::snprintf(buf, sizeof buf, "    %-6s %s = %.6g (%s %.6g)\n", m.passed ? "ok" : "FAILED", m.label.c_str(), m.value,
                          m.relation.c_str(), m.bound);
        out += buf;
    }
    if (!r.error.empty()) out += "    error: " + r.error + "\n";
    std::snprintf(buf, sizeof buf, "    runtime %.2f s (limit %.0f s)\n", r.seconds, r.time_limit);
    out += buf;
    return out;
}

}  // namespace ssepfree
