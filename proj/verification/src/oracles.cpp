#include "ssepfree/oracles.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace ssepfree::oracle {

long long count_colourings(const SimpleGraph& g, int k) {
    const int n = g.vertex_count();
    if (n == 0) return 1;
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    long long count = 0;
    while (true) {
        bool proper = true;
        for (int u = 0; u < n && proper; ++u)
            for (int v = u + 1; v < n; ++v)
                if (g.adjacent(u, v) && c[static_cast<std::size_t>(u)] == c[static_cast<std::size_t>(v)]) {
                    proper = false;
                    break;
                }
        if (proper) ++count;
        int i = 0;
        while (i < n && ++c[static_cast<std::size_t>(i)] == k) c[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
    }
    return count;
}

DiscreteLaw DiscreteLaw::random(int vars, std::mt19937_64& rng) {
    DiscreteLaw law;
    law.vars = vars;
    std::uniform_real_distribution<double> u(0.05, 1.0);
    int total = 1;
    for (int i = 0; i < vars; ++i) total *= 3;
    double sum = 0;
    for (int c = 0; c < total; ++c) {
        std::vector<double> x(static_cast<std::size_t>(vars));
        int r = c;
        for (int i = 0; i < vars; ++i) {
            x[static_cast<std::size_t>(i)] = r % 3;
            r /= 3;
        }
        law.outcomes.push_back(std::move(x));
        law.weights.push_back(u(rng));
        sum += law.weights.back();
    }
    for (auto& w : law.weights) w /= sum;
    return law;
}

double DiscreteLaw::expect(const std::function<double(const std::vector<double>&)>& f) const {
    double s = 0;
    for (std::size_t c = 0; c < outcomes.size(); ++c) s += weights[c] * f(outcomes[c]);
    return s;
}

double joint_cumulant(int m, const std::function<double(std::uint32_t)>& subset_moment) {
    // square-free polynomials in t_1..t_m, keyed by monomial bitmask
    using Poly = std::map<std::uint32_t, double>;
    const std::uint32_t full = (std::uint32_t{1} << m) - 1;
    Poly X;
    for (std::uint32_t s = 1; s <= full; ++s) X[s] = subset_moment(s);
    Poly power = X;
    double out = 0;
    for (int k = 1; k <= m; ++k) {
        if (auto it = power.find(full); it != power.end()) out += (k % 2 ? 1.0 : -1.0) / k * it->second;
        Poly next;
        for (const auto& [a, va] : power)
            for (const auto& [b, vb] : X)
                if (!(a & b)) next[a | b] += va * vb;
        power = std::move(next);
    }
    return out;
}

double cumulant_of_products(const DiscreteLaw& law, const std::vector<std::vector<int>>& groups) {
    const int m = static_cast<int>(groups.size());
    return joint_cumulant(m, [&](std::uint32_t s) {
        return law.expect([&](const std::vector<double>& x) {
            double p = 1;
            for (int j = 0; j < m; ++j)
                if (s >> j & 1u)
                    for (int i : groups[static_cast<std::size_t>(j)]) p *= x[static_cast<std::size_t>(i - 1)];
            return p;
        });
    });
}

std::vector<double> sorted_points(int n, std::mt19937_64& rng, double min_gap) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (true) {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = u(rng);
        std::sort(x.begin(), x.end());
        bool ok = x.front() > min_gap && x.back() < 1 - min_gap;
        for (std::size_t i = 1; i < x.size(); ++i) ok = ok && x[i] - x[i - 1] > min_gap;
        if (ok) return x;
    }
}

}  // namespace ssepfree::oracle
