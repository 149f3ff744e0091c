#include "ssepfree/freeprob.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "ssepfree/errors.hpp"

namespace ssepfree {

std::vector<double> moments_of_b(const GridFunction& b, int P) {
    if (P < 0 || P > kMaxMomentOrder) throw SizeLimitError("moments_of_b supports 0 <= P <= " + std::to_string(kMaxMomentOrder));
    const auto w = trapezoid_weights(b.intervals());
    std::vector<double> m(static_cast<std::size_t>(P + 1), 0.0);
    for (int j = 0; j < b.size(); ++j) {
        double pw = 1.0;
        for (int p = 0; p <= P; ++p) {
            m[static_cast<std::size_t>(p)] += w[static_cast<std::size_t>(j)] * pw;
            pw *= b[j];
        }
    }
    return m;
}

std::vector<double> free_cumulants_from_moments(const std::vector<double>& m, int n_max) {
    if (n_max < 1) throw DomainError("n_max must be positive");
    if (static_cast<int>(m.size()) < n_max + 1) throw DomainError("need moments m_0..m_n");
    const auto N = static_cast<std::size_t>(n_max);
    // powers[p] = M(t)^p truncated at degree n_max, M(t) = sum m_k t^k
    std::vector<double> base(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(N + 1));
    base[0] = 1.0;
    std::vector<double> power(N + 1, 0.0);
    power[0] = 1.0;
    std::vector<std::vector<double>> powers{power};
    for (std::size_t p = 1; p <= N; ++p) {
        std::vector<double> next(N + 1, 0.0);
        for (std::size_t i = 0; i <= N; ++i)
            for (std::size_t j = 0; i + j <= N; ++j) next[i + j] += powers.back()[i] * base[j];
        powers.push_back(std::move(next));
    }
    // m_n = sum_{p=1}^{n} R_p [t^{n-p}] M(t)^p
    std::vector<double> r(N + 1, 0.0);
    for (std::size_t n = 1; n <= N; ++n) {
        double s = m[n];
        for (std::size_t p = 1; p < n; ++p) s -= r[p] * powers[p][n - p];
        r[n] = s;  // [t^0] M^n = 1
    }
    return r;
}

double resolvent(const GridFunction& b, double z) {
    if (!(z > b.max())) throw BranchError("resolvent needs z above the range of b");
    const auto w = trapezoid_weights(b.intervals());
    double s = 0.0;
    for (int j = 0; j < b.size(); ++j) s += w[static_cast<std::size_t>(j)] / (z - b[j]);
    return s;
}

double resolvent_derivative(const GridFunction& b, double z) {
    if (!(z > b.max())) throw BranchError("resolvent needs z above the range of b");
    const auto w = trapezoid_weights(b.intervals());
    double s = 0.0;
    for (int j = 0; j < b.size(); ++j) {
        double d = z - b[j];
        s -= w[static_cast<std::size_t>(j)] / (d * d);
    }
    return s;
}

double solve_z(const GridFunction& b, double v) {
    if (!(v > 0) || !std::isfinite(v)) throw DomainError("solve_z needs v > 0");
    const double top = b.max();
    const auto w = trapezoid_weights(b.intervals());
    double mass_at_top = 0.0;
    for (int j = 0; j < b.size(); ++j)
        if (b[j] == top) mass_at_top += w[static_cast<std::size_t>(j)];
    // G(top + d) >= mass/d, so d = mass/(2v) gives G > v; G(top + 1/v) <= v.
    const double lo_gap = mass_at_top / (2.0 * v);
    const double scale = 1.0 + std::abs(top);
    if (lo_gap < 1e-14 * scale) throw EdgeError("root of G(z) = v lies at the edge of the support");
    double lo = top + lo_gap, hi = top + 1.0 / v;
    auto f = [&](double z) { return resolvent(b, z) - v; };
    double fhi = f(hi);
    if (fhi >= 0) return hi;
    double flo = f(lo);
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
    auto [a, c] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    double z = 0.5 * (a + c);
    if (z - top < 1e-14 * scale) throw EdgeError("root of G(z) = v lies at the edge of the support");
    return z;
}

std::vector<double> vz_series(const std::vector<double>& m, int n_max) {
    auto r = free_cumulants_from_moments(m, n_max);
    r[0] = 1.0;
    return r;
}

double r_transform(const std::vector<double>& free_cumulants, double w) {
    double s = 0.0, pw = 1.0;
    for (std::size_t p = 1; p < free_cumulants.size(); ++p) {
        s += free_cumulants[p] * pw;
        pw *= w;
    }
    return 1.0 / w + s;
}

}  // namespace ssepfree
