#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace shockfront {

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n < 2)
    throw std::invalid_argument("linspace: need at least two points");
  std::vector<double> x(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = a + h * static_cast<double>(i);
  x.back() = b;
  return x;
}

/// Least-squares slope of y against x.
inline double fitted_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fitted_slope: need matching samples, >= 2");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0)
    throw std::invalid_argument("fitted_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

/// Cumulative trapezoid of samples y on grid x, anchored so the entry at
/// index `anchor` is zero.
inline std::vector<double> cumulative_trapezoid(const std::vector<double>& x,
                                                const std::vector<double>& y,
                                                std::size_t anchor) {
  if (x.size() != y.size() || x.size() < 2 || anchor >= x.size())
    throw std::invalid_argument("cumulative_trapezoid: bad arguments");
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t i = anchor + 1; i < x.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  for (std::size_t i = anchor; i-- > 0;)
    out[i] = out[i + 1] - 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  return out;
}

} // namespace shockfront
