#include "ssepfree/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ssepfree/errors.hpp"

namespace ssepfree {

GridFunction::GridFunction(int intervals, std::vector<double> values) : values_(std::move(values)) {
    if (intervals < kMinGridIntervals) throw DomainError("grid needs at least " + std::to_string(kMinGridIntervals) + " intervals");
    if (static_cast<int>(values_.size()) != intervals + 1) throw DomainError("grid function needs intervals + 1 values");
    for (double v : values_)
        if (!std::isfinite(v)) throw DomainError("grid function has a non-finite value");
}

GridFunction GridFunction::constant(int intervals, double c) {
    return GridFunction(intervals, std::vector<double>(static_cast<std::size_t>(intervals + 1), c));
}

GridFunction GridFunction::from_function(int intervals, const std::function<double(double)>& f) {
    std::vector<double> v(static_cast<std::size_t>(intervals + 1));
    for (int i = 0; i <= intervals; ++i) v[static_cast<std::size_t>(i)] = f(static_cast<double>(i) / intervals);
    return GridFunction(intervals, std::move(v));
}

double GridFunction::integral() const {
    double s = 0.5 * (values_.front() + values_.back());
    for (std::size_t i = 1; i + 1 < values_.size(); ++i) s += values_[i];
    return s * step();
}

double GridFunction::sup_norm() const {
    double m = 0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }

double GridFunction::interpolate(double x) const {
    x = std::clamp(x, 0.0, 1.0);
    const int M = intervals();
    double s = x * M;
    int i = std::min(static_cast<int>(s), M - 1);
    double t = s - i;
    return (1 - t) * values_[static_cast<std::size_t>(i)] + t * values_[static_cast<std::size_t>(i + 1)];
}

GridFunction GridFunction::map(const std::function<double(double)>& f) const {
    GridFunction out = *this;
    for (double& v : out.values_) v = f(v);
    return out;
}

GridFunction GridFunction::resample(int intervals) const {
    return from_function(intervals, [this](double x) { return interpolate(x); });
}

std::vector<double> trapezoid_weights(int intervals) {
    std::vector<double> w(static_cast<std::size_t>(intervals + 1), 1.0 / intervals);
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

std::vector<double> left_cumulative(const std::vector<double>& f) {
    const std::size_t n = f.size();
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 1; k < n; ++k) out[k] = out[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
    return out;
}

std::vector<double> right_cumulative(const std::vector<double>& q) {
    // (R q)_j = sum_k w_k C_kj q_k / w_j with C the matrix of left_cumulative:
    // (h/2) q_j + sum_{k>j} w_k q_k for j >= 1, and sum_{k>=1} w_k q_k for j = 0.
    const std::size_t n = q.size();
    const auto w = trapezoid_weights(static_cast<int>(n - 1));
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<double> out(n, 0.0);
    double tail = 0.0;  // sum_{k>j} w_k q_k
    for (std::size_t j = n; j-- > 0;) {
        out[j] = (j == 0) ? tail : tail + 0.5 * h * q[j];
        tail += w[j] * q[j];
    }
    return out;
}

}  // namespace ssepfree
