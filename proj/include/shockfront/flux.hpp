#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shockfront/errors.hpp"
#include "shockfront/interpolation.hpp"

namespace shockfront {

/// Flux f(u) with first and second derivatives. All wave speeds, switch
/// functions and the entropy oracle are driven through this interface; the
/// standing assumption downstream is f'' >= 0 on the solution range.
class FluxFunction {
public:
  using Fn = std::function<double(double)>;

  FluxFunction(std::string label, Fn f, Fn df, Fn ddf)
      : label_(std::move(label)), f_(std::move(f)), df_(std::move(df)),
        ddf_(std::move(ddf)) {
    if (!f_ || !df_ || !ddf_)
      throw std::invalid_argument("FluxFunction: missing callable");
  }

  static FluxFunction quadratic() {
    return FluxFunction(
        "u2", [](double u) { return u * u; }, [](double u) { return 2.0 * u; },
        [](double) { return 2.0; });
  }

  static FluxFunction half_quadratic() {
    return FluxFunction(
        "u2_half", [](double u) { return 0.5 * u * u; },
        [](double u) { return u; }, [](double) { return 1.0; });
  }

  static FluxFunction quartic() {
    return FluxFunction(
        "u4", [](double u) { return u * u * u * u; },
        [](double u) { return 4.0 * u * u * u; },
        [](double u) { return 12.0 * u * u; });
  }

  static FluxFunction exponential() {
    return FluxFunction(
        "exp", [](double u) { return std::exp(u); },
        [](double u) { return std::exp(u); },
        [](double u) { return std::exp(u); });
  }

  /// Tabulated (u, f(u)) pairs, interpolated with a monotone cubic; the
  /// second derivative is differenced from the interpolant slope.
  static FluxFunction tabulated(std::vector<double> u,
                                std::vector<double> values) {
    auto interp =
        std::make_shared<MonotoneCubic>(std::move(u), std::move(values));
    const double span =
        interp->abscissae().back() - interp->abscissae().front();
    const double h = 1e-5 * span;
    auto f = [interp](double x) { return (*interp)(x); };
    auto df = [interp](double x) { return interp->derivative(x); };
    auto ddf = [interp, h](double x) {
      return (interp->derivative(x + h) - interp->derivative(x - h)) /
             (2.0 * h);
    };
    return FluxFunction("tabulated", f, df, ddf);
  }

  static FluxFunction from_label(const std::string& label) {
    if (label == "u2" || label == "hopf")
      return quadratic();
    if (label == "u2_half" || label == "burgers")
      return half_quadratic();
    if (label == "u4")
      return quartic();
    if (label == "exp")
      return exponential();
    throw std::invalid_argument("FluxFunction: unknown label '" + label + "'");
  }

  double operator()(double u) const { return f_(u); }
  double prime(double u) const { return df_(u); }
  double second(double u) const { return ddf_(u); }
  const std::string& label() const { return label_; }

private:
  std::string label_;
  Fn f_, df_, ddf_;
};

/// Rankine-Hugoniot speed (f(a) - f(b)) / (a - b); symmetric in its
/// arguments.
inline double rh_speed(const FluxFunction& f, double u_left, double u_right) {
  if (u_left == u_right)
    throw std::domain_error("rh_speed: degenerate jump (u_left == u_right)");
  return (f(u_left) - f(u_right)) / (u_left - u_right);
}

/// True iff f'' >= -1e-12 at every sample point of [lo, hi].
inline bool check_convexity(const FluxFunction& f, double lo, double hi,
                            int samples = 201) {
  if (!(hi > lo) || samples < 2)
    throw std::invalid_argument("check_convexity: degenerate interval");
  for (int i = 0; i < samples; ++i) {
    const double u = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    if (f.second(u) < -1e-12)
      return false;
  }
  return true;
}

/// Riemann-type data for one shock over a smooth background: u = u0 + e
/// left of the front, u = u0 right of it, with e > 0 for stability.
struct SingleShockState {
  std::function<double(double)> background; // u0 at t = 0
  std::function<double(double)> amplitude;  // e at t = 0, positive
  double front_x0 = 0.0;
  double horizon = std::numeric_limits<double>::infinity();
};

/// Largest guaranteed smooth-propagation time: characteristics on either
/// side of the front must not cross before it. Derivatives of the data are
/// centered differences on the supplied grid; returns +infinity when both
/// one-sided infima are nonnegative.
inline double existence_time_bound(const FluxFunction& f,
                                   const SingleShockState& s,
                                   const std::vector<double>& grid) {
  std::vector<double> right, left;
  for (double x : grid)
    (x > s.front_x0 ? right : left).push_back(x);
  if (left.size() < 3 || right.size() < 3)
    throw std::domain_error(
        "existence_time_bound: grid must cover both sides of the front");

  auto side_infimum = [&](const std::vector<double>& xs, bool add_amplitude) {
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      auto value = [&](double x) {
        return s.background(x) + (add_amplitude ? s.amplitude(x) : 0.0);
      };
      const double dv = (value(xs[i + 1]) - value(xs[i - 1])) /
                        (xs[i + 1] - xs[i - 1]);
      inf = std::min(inf, dv * f.second(value(xs[i])));
    }
    return inf;
  };

  const double m = std::max({0.0, -side_infimum(right, false),
                             -side_infimum(left, true)});
  if (m == 0.0)
    return std::numeric_limits<double>::infinity();
  return 1.0 / m;
}

} // namespace shockfront
