#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace shockfront {

/// Piecewise-cubic Hermite interpolation with Fritsch-Butland limited
/// slopes (SIAM J Sci Stat Comput 5, 300). Monotone data yields a monotone
/// interpolant; evaluation outside the abscissa range clamps to the
/// endpoint values.
class MonotoneCubic {
public:
  MonotoneCubic() = default;

  MonotoneCubic(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
      throw std::invalid_argument("MonotoneCubic: need >= 2 matching samples");
    for (std::size_t k = 0; k + 1 < n; ++k)
      if (!(x_[k + 1] > x_[k]))
        throw std::invalid_argument("MonotoneCubic: abscissae not increasing");

    std::vector<double> d(n - 1), h(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      h[k] = x_[k + 1] - x_[k];
      d[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double prod = d[k] * d[k - 1];
      if (prod > 0.0) {
        const double a = (h[k - 1] + 2.0 * h[k]) / (3.0 * (h[k - 1] + h[k]));
        slope_[k] = prod / (a * d[k] + (1.0 - a) * d[k - 1]);
      }
    }
  }

  double operator()(double x) const {
    if (x <= x_.front())
      return y_.front();
    if (x >= x_.back())
      return y_.back();
    const std::size_t k = segment(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    return y_[k] * h00(t) + h * slope_[k] * h10(t) + y_[k + 1] * h00(1.0 - t) -
           h * slope_[k + 1] * h10(1.0 - t);
  }

  double derivative(double x) const {
    if (x <= x_.front() || x >= x_.back())
      return 0.0;
    const std::size_t k = segment(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    return (y_[k] * dh00(t) - y_[k + 1] * dh00(1.0 - t)) / h +
           slope_[k] * dh10(t) + slope_[k + 1] * dh10(1.0 - t);
  }

  const std::vector<double>& abscissae() const { return x_; }
  const std::vector<double>& ordinates() const { return y_; }

private:
  static double h00(double t) { return (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t); }
  static double h10(double t) { return t * (1.0 - t) * (1.0 - t); }
  static double dh00(double t) { return 6.0 * t * (t - 1.0); }
  static double dh10(double t) { return 3.0 * t * t - 4.0 * t + 1.0; }

  std::size_t segment(double x) const {
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo != 1) {
      const std::size_t mid = (lo + hi) / 2;
      (x_[mid] > x ? hi : lo) = mid;
    }
    return lo;
  }

  std::vector<double> x_, y_, slope_;
};

} // namespace shockfront
