#ifndef SSEPFREE_GRID_HPP
#define SSEPFREE_GRID_HPP

#include <functional>
#include <vector>

namespace ssepfree {

constexpr int kMinGridIntervals = 16;

/// Samples of a function on the uniform grid x_i = i/M, i = 0..M, of [0, 1].
/// Integrals use the trapezoid rule.
class GridFunction {
public:
    GridFunction() = default;
    GridFunction(int intervals, std::vector<double> values);
    static GridFunction constant(int intervals, double c);
    static GridFunction from_function(int intervals, const std::function<double(double)>& f);

    int intervals() const { return static_cast<int>(values_.size()) - 1; }
    int size() const { return static_cast<int>(values_.size()); }
    double step() const { return 1.0 / intervals(); }
    double x(int i) const { return static_cast<double>(i) / intervals(); }
    double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    double integral() const;
    double sup_norm() const;
    double max() const;
    double min() const;
    /// Piecewise linear interpolation, x clamped to [0, 1].
    double interpolate(double x) const;
    GridFunction map(const std::function<double(double)>& f) const;
    /// Values at another resolution by linear interpolation.
    GridFunction resample(int intervals) const;

private:
    std::vector<double> values_;
};

std::vector<double> trapezoid_weights(int intervals);

/// (L f)_k: trapezoid integral of f over [0, x_k].
std::vector<double> left_cumulative(const std::vector<double>& f);
/// Adjoint of left_cumulative with respect to the trapezoid weights:
/// sum_k w_k q_k (L f)_k = sum_j w_j f_j (R q)_j. Approximates the integral
/// of q over [x_j, 1] to second order.
std::vector<double> right_cumulative(const std::vector<double>& q);

}  // namespace ssepfree

#endif
