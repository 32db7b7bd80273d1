#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "shockfront/ansatz.hpp"
#include "shockfront/errors.hpp"
#include "shockfront/flux.hpp"
#include "shockfront/quadrature.hpp"

namespace shockfront {

/// Finite-volume cell averages at the requested snapshot times. Serves as
/// the independent entropy-solution reference for everything else in the
/// library.
struct GridSolution {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_cells = 0;
  double cfl = 0.0;
  std::string flux_label;
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> dt_history;
  // Worst per-step discrepancy between the mass update and the boundary
  // fluxes; machine-zero for a conservative update.
  double mass_balance_defect = 0.0;

  double dx() const { return (x_max - x_min) / n_cells; }

  std::vector<double> centers() const {
    std::vector<double> c(static_cast<std::size_t>(n_cells));
    const double h = dx();
    for (int i = 0; i < n_cells; ++i)
      c[static_cast<std::size_t>(i)] = x_min + (i + 0.5) * h;
    return c;
  }

  const std::vector<double>& at_time(double t) const {
    for (std::size_t i = 0; i < times.size(); ++i)
      if (std::abs(times[i] - t) <= 1e-9 * (1.0 + std::abs(t)))
        return states[i];
    throw std::invalid_argument("GridSolution: no snapshot at requested time");
  }
};

namespace detail {

struct SonicPoint {
  bool present = false;
  double u = 0.0;
};

/// Interior minimum of a convex flux on [lo, hi], if any: f' is
/// nondecreasing, so bisect its sign change.
inline SonicPoint find_sonic(const FluxFunction& f, double lo, double hi) {
  SonicPoint s;
  if (!(f.prime(lo) < 0.0) || !(f.prime(hi) > 0.0))
    return s;
  double a = lo, b = hi;
  for (int i = 0; i < 100 && b - a > 1e-14 * (1.0 + std::abs(a)); ++i) {
    const double m = 0.5 * (a + b);
    (f.prime(m) < 0.0 ? a : b) = m;
  }
  s.present = true;
  s.u = 0.5 * (a + b);
  return s;
}

inline double godunov_flux(const FluxFunction& f, double ul, double ur,
                           const SonicPoint& sonic) {
  if (ul > ur)
    return std::max(f(ul), f(ur));
  if (sonic.present && ul < sonic.u && sonic.u < ur)
    return f(sonic.u);
  return std::min(f(ul), f(ur));
}

} // namespace detail

/// First-order Godunov scheme with the exact convex-flux Riemann solution
/// and outflow (copy) boundaries. The time step is cfl * dx / max|f'| over
/// the invariant data range; snapshot times are landed on exactly.
inline GridSolution godunov_solve(const FluxFunction& f,
                                  const std::function<double(double)>& initial,
                                  double x_min, double x_max, int n_cells,
                                  std::vector<double> snapshot_times,
                                  double cfl = 0.9) {
  if (!(x_max > x_min) || n_cells < 4)
    throw std::invalid_argument("godunov_solve: bad domain");
  if (!(cfl > 0.0) || cfl > 0.9)
    throw std::invalid_argument("godunov_solve: cfl must lie in (0, 0.9]");
  std::sort(snapshot_times.begin(), snapshot_times.end());
  if (snapshot_times.empty() || snapshot_times.front() < 0.0)
    throw std::invalid_argument("godunov_solve: need nonnegative snapshot times");

  GridSolution g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_cells = n_cells;
  g.cfl = cfl;
  g.flux_label = f.label();

  const double h = g.dx();
  std::vector<double> u(static_cast<std::size_t>(n_cells));
  for (int i = 0; i < n_cells; ++i) {
    const double a = x_min + i * h;
    u[static_cast<std::size_t>(i)] =
        integrate_fixed(initial, a, a + h, 8) / h;
  }

  double umin = u[0], umax = u[0];
  for (double v : u) {
    umin = std::min(umin, v);
    umax = std::max(umax, v);
  }
  const detail::SonicPoint sonic =
      umin < umax ? detail::find_sonic(f, umin, umax) : detail::SonicPoint{};
  const double max_speed =
      umin < umax ? std::max(std::abs(f.prime(umin)), std::abs(f.prime(umax)))
                  : std::abs(f.prime(umin));
  if (!std::isfinite(max_speed) || max_speed > 1e12) {
    std::ostringstream msg;
    msg << "godunov_solve: characteristic speed unbounded on data range ["
        << umin << ", " << umax << "]";
    throw numeric_error(msg.str());
  }

  const double dt0 = max_speed > 1e-14
                         ? cfl * h / max_speed
                         : std::numeric_limits<double>::infinity();

  std::vector<double> flux(static_cast<std::size_t>(n_cells) + 1);
  double t = 0.0;

  for (double target : snapshot_times) {
    while (t < target - 1e-14 * (1.0 + target)) {
      const double dt = std::min(dt0, target - t);
      flux[0] = detail::godunov_flux(f, u.front(), u.front(), sonic);
      flux[static_cast<std::size_t>(n_cells)] =
          detail::godunov_flux(f, u.back(), u.back(), sonic);
      for (int i = 0; i + 1 < n_cells; ++i)
        flux[static_cast<std::size_t>(i) + 1] = detail::godunov_flux(
            f, u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(i) + 1],
            sonic);
      double mass_before = 0.0, mass_after = 0.0;
      for (double v : u)
        mass_before += v;
      const double r = dt / h;
      for (int i = 0; i < n_cells; ++i) {
        u[static_cast<std::size_t>(i)] -=
            r * (flux[static_cast<std::size_t>(i) + 1] -
                 flux[static_cast<std::size_t>(i)]);
        mass_after += u[static_cast<std::size_t>(i)];
      }
      const double step_defect =
          std::abs((mass_after - mass_before) * h +
                   dt * (flux[static_cast<std::size_t>(n_cells)] - flux[0]));
      g.mass_balance_defect = std::max(g.mass_balance_defect, step_defect);
      g.dt_history.push_back(dt);
      t += dt;
    }
    t = target;
    g.times.push_back(target);
    g.states.push_back(u);
  }
  return g;
}

/// Down-jump locations at a snapshot: clusters of steep negative gradient
/// whose plateau-to-plateau drop exceeds the threshold, refined by the
/// linear mid-value crossing inside the cluster.
inline std::vector<double> extract_shock_positions(const GridSolution& g,
                                                   double t,
                                                   double jump_threshold) {
  const std::vector<double>& u = g.at_time(t);
  const std::vector<double> x = g.centers();
  const std::size_t n = u.size();
  std::vector<double> positions;
  if (n < 8)
    return positions;

  const double floor = std::max(1e-12, 0.125 * jump_threshold);
  std::size_t i = 0;
  while (i + 1 < n) {
    if (!(u[i] - u[i + 1] > floor)) {
      ++i;
      continue;
    }
    std::size_t first = i;
    std::size_t last = i;
    while (last + 2 < n && u[last + 1] - u[last + 2] > floor)
      ++last;
    const std::size_t lo = first >= 4 ? first - 4 : 0;
    const std::size_t hi = std::min(n - 1, last + 5);
    const double ul = u[lo];
    const double ur = u[hi];
    if (ul - ur >= jump_threshold) {
      const double target = 0.5 * (ul + ur);
      for (std::size_t j = lo; j < hi; ++j) {
        if (u[j] >= target && target >= u[j + 1] && u[j] > u[j + 1]) {
          positions.push_back(
              x[j] + (u[j] - target) / (u[j] - u[j + 1]) * g.dx());
          break;
        }
      }
    }
    i = last + 2;
  }
  return positions;
}

/// L1 distance between the cell averages and the exact cell averages of
/// the limit solution (piecewise constant, averaged in closed form).
inline double l1_distance(const GridSolution& g, const LimitSolution& limit,
                          double t) {
  const std::vector<double>& u = g.at_time(t);
  const auto [p1, p2] = limit.fronts(t);
  const TwoShockState& s = limit.state();
  const double h = g.dx();
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = g.x_min + static_cast<double>(i) * h;
    const double b = a + h;
    const double c1 = std::clamp(p1, a, b);
    const double c2 = std::clamp(std::max(p1, p2), a, b);
    const double avg = ((c1 - a) * (s.u0 + s.e1 + s.e2) +
                        (c2 - c1) * (s.u0 + s.e2) + (b - c2) * s.u0) /
                       h;
    total += std::abs(u[i] - avg) * h;
  }
  return total;
}

/// Same against an arbitrary reference field, averaged per cell with a
/// fixed-panel rule.
inline double l1_distance(const GridSolution& g,
                          const std::function<double(double)>& reference,
                          double t) {
  const std::vector<double>& u = g.at_time(t);
  const double h = g.dx();
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = g.x_min + static_cast<double>(i) * h;
    const double avg = integrate_fixed(reference, a, a + h, 4) / h;
    total += std::abs(u[i] - avg) * h;
  }
  return total;
}

inline double total_variation(const std::vector<double>& u) {
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i)
    tv += std::abs(u[i + 1] - u[i]);
  return tv;
}

} // namespace shockfront
