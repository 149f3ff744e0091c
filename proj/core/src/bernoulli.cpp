#include "ssepfree/bernoulli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "ssepfree/errors.hpp"
#include "ssepfree/partitions.hpp"

namespace ssepfree {

namespace {

std::vector<int> sites_of(std::uint32_t mask) {
    std::vector<int> out;
    for (int i = 0; mask >> i; ++i)
        if (mask >> i & 1u) out.push_back(i + 1);
    return out;
}

std::uint32_t mask_of(const std::vector<int>& sites) {
    std::uint32_t m = 0;
    for (int s : sites) m |= std::uint32_t{1} << (s - 1);
    return m;
}

void check_expansion(int sites, int max_degree) {
    if (sites < 1 || sites > kMaxExpansionSites)
        throw SizeLimitError("expansions support 1 <= N <= " + std::to_string(kMaxExpansionSites));
    if (max_degree < 1 || max_degree > kMaxExpansionDegree)
        throw SizeLimitError("expansions support 1 <= degree <= " + std::to_string(kMaxExpansionDegree));
}

KMonomial merged(const KMonomial& a, const KMonomial& b) {
    KMonomial out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Tag-preserving automorphisms of a chromatic-class graph only permute
// blacks carrying the same tag set.
long tagged_automorphisms(const KMonomial& m) {
    long r = 1;
    for (std::size_t i = 0; i < m.size();) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        for (std::size_t k = 2; k <= j - i; ++k) r *= static_cast<long>(k);
        i = j;
    }
    return r;
}

double monomial_value(const KMonomial& m, const CumulantTable& table) {
    double v = 1.0;
    for (auto s : m) v *= table.at(sites_of(s));
    return v;
}

}  // namespace

BernoulliModel::BernoulliModel(int N, std::vector<double> probabilities) : N_(N), p_(std::move(probabilities)) {
    if (N < 1 || N > kMaxBernoulliSites)
        throw SizeLimitError("Bernoulli models support 1 <= N <= " + std::to_string(kMaxBernoulliSites));
    if (p_.size() != (std::size_t{1} << N)) throw ValidationError("model needs 2^N configuration weights");
    double total = 0;
    for (double v : p_) {
        if (!std::isfinite(v) || v < 0) throw ValidationError("model weights must be finite and nonnegative");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) throw ValidationError("model weights must sum to 1");
    // superset sums give E[prod_{i in S} b_i]
    moments_ = p_;
    for (int i = 0; i < N; ++i)
        for (std::size_t c = 0; c < moments_.size(); ++c)
            if (!(c >> i & 1u)) moments_[c] += moments_[c | (std::size_t{1} << i)];
}

BernoulliModel BernoulliModel::independent(const std::vector<double>& g) {
    const int N = static_cast<int>(g.size());
    if (N < 1 || N > kMaxBernoulliSites)
        throw SizeLimitError("Bernoulli models support 1 <= N <= " + std::to_string(kMaxBernoulliSites));
    for (double v : g)
        if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("independent means must lie in [0,1]");
    std::vector<double> p(std::size_t{1} << N);
    for (std::size_t c = 0; c < p.size(); ++c) {
        double v = 1;
        for (int i = 0; i < N; ++i) v *= (c >> i & 1u) ? g[static_cast<std::size_t>(i)] : 1.0 - g[static_cast<std::size_t>(i)];
        p[c] = v;
    }
    // absorb rounding so the normalisation check holds exactly enough
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto& v : p) v /= total;
    return BernoulliModel(N, std::move(p));
}

double BernoulliModel::moment(const std::vector<int>& indices) const {
    for (int i : indices)
        if (i < 1 || i > N_) throw DomainError("site index out of range");
    return moments_[mask_of(indices)];
}

double exact_log_partition(const BernoulliModel& model, const std::vector<double>& h) {
    const int N = model.sites();
    if (static_cast<int>(h.size()) != N) throw DomainError("field must have one entry per site");
    const auto& p = model.probabilities();
    // shift by the largest exponent for stability
    std::vector<double> expo(p.size());
    double top = -INFINITY;
    for (std::size_t c = 0; c < p.size(); ++c) {
        double s = 0;
        for (int i = 0; i < N; ++i)
            if (c >> i & 1u) s += h[static_cast<std::size_t>(i)];
        expo[c] = s;
        if (p[c] > 0) top = std::max(top, s);
    }
    std::vector<double> terms;
    for (std::size_t c = 0; c < p.size(); ++c)
        if (p[c] > 0) terms.push_back(p[c] * std::exp(expo[c] - top));
    return top + std::log(pairwise_sum(std::move(terms)));
}

CumulantTable noncoincident_cumulants(const BernoulliModel& model) {
    const int N = model.sites();
    const std::uint32_t full = (std::uint32_t{1} << N) - 1;
    std::vector<double> K(std::size_t{full} + 1, 0.0);
    // m(S) = sum over T containing min(S) of K(T) m(S \ T)
    for (std::uint32_t S = 1; S <= full; ++S) {
        std::uint32_t low = S & (~S + 1);
        std::uint32_t rest = S ^ low;
        double v = model.moment(S);
        for (std::uint32_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
            // T = low | sub is a proper subset of S
            std::uint32_t T = low | sub;
            if (T != S) v -= K[T] * model.moment(S ^ T);
            if (sub == 0) break;
        }
        K[S] = v;
    }
    CumulantTable table;
    for (std::uint32_t S = 1; S <= full; ++S) table.set(sites_of(S), K[S]);
    return table;
}

double reconstruct_coincident_cumulant(const CumulantTable& table, int sites, const std::vector<int>& indices) {
    const int n = static_cast<int>(indices.size());
    if (n < 1 || n > 8) throw SizeLimitError("reconstruction supports 1..8 entries");
    for (int i : indices)
        if (i < 1 || i > sites) throw DomainError("index refers to a site outside 1..N");
    // positions sharing a site form one block of gamma
    const SetPartition gamma = SetPartition::from_labels(indices);
    auto kgamma = [&](const std::vector<int>& block) {
        std::vector<int> s;
        for (int pos : block) s.push_back(indices[static_cast<std::size_t>(pos - 1)]);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return table.at(s);
    };
    return inverse_product_cumulant(kgamma, gamma);
}

int e_degree(const KMonomial& m) {
    int d = 0;
    for (auto s : m) d += std::popcount(s);
    return d;
}

std::vector<int> e_exponents(const KMonomial& m, int sites) {
    std::vector<int> e(static_cast<std::size_t>(sites), 0);
    for (auto s : m)
        for (int i : sites_of(s)) {
            if (i > sites) throw DomainError("monomial refers to a site outside 1..N");
            ++e[static_cast<std::size_t>(i - 1)];
        }
    return e;
}

std::string to_string(const KMonomial& m) {
    std::string out;
    for (auto s : m) {
        out += "K(";
        bool first = true;
        for (int i : sites_of(s)) {
            if (!first) out += ",";
            out += std::to_string(i);
            first = false;
        }
        out += ")";
    }
    return out.empty() ? "1" : out;
}

SymbolicSeries chromatic_series(int sites, int max_degree) {
    check_expansion(sites, max_degree);
    SymbolicSeries out;
    for (const auto& g : enumerate_chromatic_graphs(sites, max_degree)) {
        KMonomial key = g.chromatic_key();
        Rational c(black_mobius(g), BigInt(tagged_automorphisms(key)));
        if (c != 0) out[key] += c;
    }
    return out;
}

SymbolicSeries feynman_series(int sites, int max_degree) {
    check_expansion(sites, max_degree);
    SymbolicSeries out;
    for (const auto& g : enumerate_chromatic_graphs(sites, max_degree)) {
        Rational c = 0;
        for (const auto& cov : coverings(g)) c += cov.weight();
        if (c != 0) out[g.chromatic_key()] += c;
    }
    return out;
}

SymbolicSeries taylor_series(int sites, int max_degree) {
    check_expansion(sites, max_degree);
    // X = Z - 1 = sum over nonempty site sets I of sum over partitions of I
    SymbolicSeries X;
    for (std::uint32_t I = 1; I < (std::uint32_t{1} << sites); ++I) {
        if (std::popcount(I) > max_degree) continue;
        const auto members = sites_of(I);
        for (const auto& pi : enumerate_partitions(static_cast<int>(members.size()))) {
            KMonomial m;
            for (auto block : pi.block_masks()) {
                std::uint32_t s = 0;
                for (int b = 0; block >> b; ++b)
                    if (block >> b & 1u) s |= std::uint32_t{1} << (members[static_cast<std::size_t>(b)] - 1);
                m.push_back(s);
            }
            std::sort(m.begin(), m.end());
            X[m] += 1;
        }
    }
    // log(1 + X) = sum_k (-1)^(k-1) X^k / k; every term of X has degree >= 1
    SymbolicSeries out, power = X;
    for (int k = 1; k <= max_degree; ++k) {
        Rational c(k % 2 ? 1 : -1, k);
        for (const auto& [m, v] : power) out[m] += c * v;
        if (k == max_degree) break;
        SymbolicSeries next;
        for (const auto& [a, va] : power)
            for (const auto& [b, vb] : X)
                if (e_degree(a) + e_degree(b) <= max_degree) next[merged(a, b)] += va * vb;
        power = std::move(next);
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

double ExpansionSeries::coefficient(const std::vector<int>& exponents) const {
    auto it = terms.find(exponents);
    return it == terms.end() ? 0.0 : it->second;
}

double ExpansionSeries::evaluate(const std::vector<double>& e) const {
    if (static_cast<int>(e.size()) != sites) throw DomainError("need one e value per site");
    std::vector<double> parts;
    for (const auto& [ex, c] : terms) {
        double v = c;
        for (int i = 0; i < sites; ++i) v *= std::pow(e[static_cast<std::size_t>(i)], ex[static_cast<std::size_t>(i)]);
        parts.push_back(v);
    }
    return pairwise_sum(std::move(parts));
}

double ExpansionSeries::max_difference(const ExpansionSeries& other) const {
    double d = 0;
    for (const auto& [ex, c] : terms) d = std::max(d, std::abs(c - other.coefficient(ex)));
    for (const auto& [ex, c] : other.terms) d = std::max(d, std::abs(c - coefficient(ex)));
    return d;
}

ExpansionSeries evaluate_series(const SymbolicSeries& s, const CumulantTable& table, int sites, int max_degree) {
    std::map<std::vector<int>, std::vector<double>> buckets;
    for (const auto& [m, c] : s) {
        if (e_degree(m) > max_degree) continue;
        buckets[e_exponents(m, sites)].push_back(to_double(c) * monomial_value(m, table));
    }
    ExpansionSeries out;
    out.sites = sites;
    out.max_degree = max_degree;
    for (auto& [ex, parts] : buckets) out.terms[ex] = pairwise_sum(std::move(parts));
    return out;
}

ExpansionSeries graph_expansion_W(const CumulantTable& table, int sites, int max_degree) {
    return evaluate_series(chromatic_series(sites, max_degree), table, sites, max_degree);
}

ExpansionSeries feynman_expansion_W(const CumulantTable& table, int sites, int max_degree) {
    return evaluate_series(feynman_series(sites, max_degree), table, sites, max_degree);
}

ExpansionSeries taylor_expansion_W(const BernoulliModel& model, int max_degree) {
    const int N = model.sites();
    check_expansion(N, max_degree);
    using Poly = std::map<std::vector<int>, double>;
    auto degree = [](const std::vector<int>& ex) { return std::accumulate(ex.begin(), ex.end(), 0); };
    // Z - 1 = sum over nonempty I of E[b_I] prod_{i in I} e_i
    Poly X;
    for (std::uint32_t I = 1; I < (std::uint32_t{1} << N); ++I) {
        if (std::popcount(I) > max_degree) continue;
        std::vector<int> ex(static_cast<std::size_t>(N), 0);
        for (int i = 0; i < N; ++i) ex[static_cast<std::size_t>(i)] = static_cast<int>(I >> i & 1u);
        X[ex] = model.moment(I);
    }
    std::map<std::vector<int>, std::vector<double>> buckets;
    Poly power = X;
    for (int k = 1; k <= max_degree; ++k) {
        double c = (k % 2 ? 1.0 : -1.0) / k;
        for (const auto& [ex, v] : power) buckets[ex].push_back(c * v);
        if (k == max_degree) break;
        Poly next;
        for (const auto& [a, va] : power)
            for (const auto& [b, vb] : X) {
                if (degree(a) + degree(b) > max_degree) continue;
                std::vector<int> ex(a);
                for (std::size_t i = 0; i < ex.size(); ++i) ex[i] += b[i];
                next[ex] += va * vb;
            }
        power = std::move(next);
    }
    ExpansionSeries out;
    out.sites = N;
    out.max_degree = max_degree;
    for (auto& [ex, parts] : buckets) out.terms[ex] = pairwise_sum(std::move(parts));
    return out;
}

TreeWeights tree_loop_weights(const CumulantTable& table, int sites, int max_degree) {
    check_expansion(sites, max_degree);
    std::vector<double> trees, loops;
    for (const auto& g : enumerate_chromatic_graphs(sites, max_degree)) {
        KMonomial key = g.chromatic_key();
        double w = std::abs(to_double(Rational(black_mobius(g), BigInt(tagged_automorphisms(key)))) * monomial_value(key, table));
        (g.cycle_rank() == 0 ? trees : loops).push_back(w);
    }
    return {pairwise_sum(std::move(trees)), pairwise_sum(std::move(loops))};
}

double pairwise_sum(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::size_t n = values.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) values[i] += values[i + half];
        n = half;
    }
    return values[0];
}

}  // namespace ssepfree
