#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "shockfront/errors.hpp"

namespace shockfront {

namespace detail {

// Gauss 7 / Kronrod 15 rule on [-1, 1]. Kronrod abscissae; the Gauss
// points are the odd-indexed entries.
inline constexpr double kGk15Nodes[8] = {
    0.0000000000000000000000000, 0.2077849550078984676006894,
    0.4058451513773971669066064, 0.5860872354676911302941448,
    0.7415311855993944398638648, 0.8648644233597690727897128,
    0.9491079123427585245261897, 0.9914553711208126392068547};

inline constexpr double kK15Weights[8] = {
    0.2094821410847278280129992, 0.2044329400752988924141620,
    0.1903505780647854099132564, 0.1690047266392679028265834,
    0.1406532597155259187451896, 0.1047900103222501838398763,
    0.0630920926299785532907007, 0.0229353220105292249637320};

inline constexpr double kG7Weights[4] = {
    0.4179591836734693877551020, 0.3818300505051189449503698,
    0.2797053914892766679014678, 0.1294849661688696932706114};

template <class F>
inline void gk15(F& f, double a, double b, double& kronrod, double& err) {
  const double m = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fk = kK15Weights[0] * f(m);
  double fg = kG7Weights[0] * f(m);
  for (int i = 1; i < 8; ++i) {
    const double x = h * kGk15Nodes[i];
    const double v = f(m - x) + f(m + x);
    fk += kK15Weights[i] * v;
    if (i % 2 == 0)
      fg += kG7Weights[i / 2] * v;
  }
  kronrod = fk * h;
  err = std::abs((fk - fg) * h);
}

template <class F>
inline double integrate_interval(F& f, double a, double b, double tol,
                                 int depth) {
  double value, err;
  gk15(f, a, b, value, err);
  if (err <= tol || b - a < 1e-14 * (1.0 + std::abs(a) + std::abs(b)))
    return value;
  if (depth <= 0) {
    std::ostringstream msg;
    msg << "quadrature failed to converge on [" << a << ", " << b
        << "]: local error " << err << " exceeds tolerance " << tol;
    throw numeric_error(msg.str());
  }
  const double m = 0.5 * (a + b);
  return integrate_interval(f, a, m, 0.5 * tol, depth - 1) +
         integrate_interval(f, m, b, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Gauss(7)-Legendre quadrature with Kronrod(15) error control and
/// absolute tolerance. Throws numeric_error when bisection bottoms out.
template <class F>
inline double integrate(F&& f, double a, double b, double abs_tol = 1e-11,
                        int max_depth = 48) {
  if (a == b)
    return 0.0;
  if (b < a)
    return -integrate(std::forward<F>(f), b, a, abs_tol, max_depth);
  return detail::integrate_interval(f, a, b, abs_tol, max_depth);
}

/// Same, pre-split at the given interior breakpoints. A narrow feature
/// (mollifier spike, CDF transition) must be bracketed by cuts on both
/// sides -- a wide panel whose nodes all miss it reports zero error.
template <class F>
inline double integrate(F&& f, double a, double b,
                        std::vector<double> breakpoints, double abs_tol = 1e-11,
                        int max_depth = 48) {
  if (a == b)
    return 0.0;
  if (b < a)
    return -integrate(std::forward<F>(f), b, a, std::move(breakpoints),
                      abs_tol, max_depth);
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double c : breakpoints)
    if (c > cuts.back() && c < b)
      cuts.push_back(c);
  cuts.push_back(b);
  const double tol_each = abs_tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += detail::integrate_interval(f, cuts[i], cuts[i + 1], tol_each,
                                        max_depth);
  return total;
}

/// Fixed-panel Gauss-Kronrod sum with no convergence requirement. Used to
/// average data that may be discontinuous inside the interval.
template <class F>
inline double integrate_fixed(F&& f, double a, double b, int panels = 8) {
  double total = 0.0, err = 0.0, v = 0.0;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    detail::gk15(f, a + i * h, a + (i + 1) * h, v, err);
    total += v;
  }
  return total;
}

} // namespace shockfront
