#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "shockfront/errors.hpp"
#include "shockfront/flux.hpp"
#include "shockfront/kernels.hpp"
#include "shockfront/phase_dynamics.hpp"

namespace shockfront {

/// Smoothed two-shock profile u0 + e1 w01((phi1 - x)/eps) +
/// e2 w02((phi2 - x)/eps) with the eps-dependent phases of the interaction
/// dynamics. Values stay inside [u0, u0 + e1 + e2]; the profile is
/// nonincreasing in x.
class SmoothAnsatz {
public:
  SmoothAnsatz(FluxFunction flux, Kernel k1, Kernel k2, PhaseSet phases,
               double eps)
      : flux_(std::move(flux)), k1_(std::move(k1)), k2_(std::move(k2)),
        phases_(std::move(phases)), eps_(eps) {
    if (!(eps_ > 0.0))
      throw std::domain_error("SmoothAnsatz: eps must be positive");
  }

  double operator()(double x, double t) const {
    const auto [p1, p2] = phases_.full_phase(t, eps_);
    const TwoShockState& s = phases_.state();
    return s.u0 + s.e1 * k1_.cdf((p1 - x) / eps_) +
           s.e2 * k2_.cdf((p2 - x) / eps_);
  }

  /// d u*/dt = sum_k e_k (1/eps) w_k((phi_k - x)/eps) dphi_k/dt with the
  /// analytic phase speeds.
  double time_derivative(double x, double t) const {
    const auto [p1, p2] = phases_.full_phase(t, eps_);
    const auto [v1, v2] = phases_.phase_speeds(t, eps_);
    const TwoShockState& s = phases_.state();
    return s.e1 * k1_.density((p1 - x) / eps_) * v1 / eps_ +
           s.e2 * k2_.density((p2 - x) / eps_) * v2 / eps_;
  }

  double space_derivative(double x, double t) const {
    const auto [p1, p2] = phases_.full_phase(t, eps_);
    const TwoShockState& s = phases_.state();
    return -(s.e1 * k1_.density((p1 - x) / eps_) +
             s.e2 * k2_.density((p2 - x) / eps_)) /
           eps_;
  }

  const FluxFunction& flux() const { return flux_; }
  const Kernel& kernel1() const { return k1_; }
  const Kernel& kernel2() const { return k2_; }
  const PhaseSet& phases() const { return phases_; }
  const TwoShockState& state() const { return phases_.state(); }
  double eps() const { return eps_; }

private:
  FluxFunction flux_;
  Kernel k1_, k2_;
  PhaseSet phases_;
  double eps_;
};

/// Singular limit: piecewise-constant field with the piecewise-linear limit
/// trajectories. At a jump point the left value is returned.
class LimitSolution {
public:
  LimitSolution(FluxFunction flux, TwoShockState state)
      : flux_(std::move(flux)), state_(state) {
    validate(state_);
  }

  double operator()(double x, double t) const {
    const auto [p1, p2] = fronts(t);
    double u = state_.u0;
    if (x <= p2)
      u += state_.e2;
    if (x <= p1)
      u += state_.e1;
    return u;
  }

  std::pair<double, double> fronts(double t) const {
    return limit_phases(flux_, state_, t);
  }

  const FluxFunction& flux() const { return flux_; }
  const TwoShockState& state() const { return state_; }

private:
  FluxFunction flux_;
  TwoShockState state_;
};

/// One shock over smooth backgrounds: the front obeys the jump condition
/// while both sides are transported along characteristics (u is constant on
/// x' = f'(u)). Valid strictly before characteristics cross.
class SingleShockSolution {
public:
  SingleShockSolution(FluxFunction flux, SingleShockState state,
                      std::vector<double> t, std::vector<double> front)
      : flux_(std::move(flux)), state_(std::move(state)), t_(std::move(t)),
        front_(std::move(front)) {}

  const std::vector<double>& times() const { return t_; }
  const std::vector<double>& front() const { return front_; }

  double front_at(double t) const {
    if (t <= t_.front())
      return front_.front();
    if (t >= t_.back())
      return front_.back();
    std::size_t lo = 0, hi = t_.size() - 1;
    while (hi - lo != 1) {
      const std::size_t mid = (lo + hi) / 2;
      (t_[mid] > t ? hi : lo) = mid;
    }
    const double w = (t - t_[lo]) / (t_[lo + 1] - t_[lo]);
    return front_[lo] * (1.0 - w) + front_[lo + 1] * w;
  }

  /// Field value by backward characteristic shooting on the side of the
  /// front that contains x (left value on the front itself).
  double field(double x, double t) const {
    const bool left = x <= front_at(t);
    auto data = [&](double xi) {
      return state_.background(xi) + (left ? state_.amplitude(xi) : 0.0);
    };
    return data(trace_characteristic(flux_, data, x, t));
  }

  /// Solves xi + f'(v0(xi)) t = x for the characteristic foot point.
  template <class Data>
  static double trace_characteristic(const FluxFunction& f, Data&& v0,
                                     double x, double t) {
    auto g = [&](double xi) { return xi + f.prime(v0(xi)) * t - x; };
    double lo = x - f.prime(v0(x)) * t;
    double hi = lo;
    double glo = g(lo), ghi = glo;
    double d = std::max(1e-3, 0.125 * (std::abs(x) + std::abs(lo)));
    for (int i = 0; i < 80 && glo > 0.0; ++i) {
      hi = lo;
      ghi = glo;
      lo -= d;
      d *= 2.0;
      glo = g(lo);
    }
    d = std::max(1e-3, 0.125 * (std::abs(x) + std::abs(hi)));
    for (int i = 0; i < 80 && ghi < 0.0; ++i) {
      lo = hi;
      glo = ghi;
      hi += d;
      d *= 2.0;
      ghi = g(hi);
    }
    if (glo > 0.0 || ghi < 0.0)
      throw numeric_error("single_shock_solve: characteristic foot point not "
                          "bracketed (crossing characteristics?)");
    for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++i) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  const FluxFunction& flux() const { return flux_; }
  const SingleShockState& state() const { return state_; }

private:
  FluxFunction flux_;
  SingleShockState state_;
  std::vector<double> t_, front_;
};

/// Integrates the coupled front/characteristic system over t_grid
/// (ascending, starting at 0). x_grid supplies the sampling window for the
/// existence-time check. Requesting times at or beyond the bound raises an
/// error instead of returning a multivalued field.
inline SingleShockSolution
single_shock_solve(const FluxFunction& f, const SingleShockState& s,
                   const std::vector<double>& t_grid,
                   const std::vector<double>& x_grid, double dt_max = 2e-3) {
  if (t_grid.size() < 2 || t_grid.front() != 0.0)
    throw std::invalid_argument("single_shock_solve: t_grid must start at 0");
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
    if (!(t_grid[i + 1] > t_grid[i]))
      throw std::invalid_argument("single_shock_solve: t_grid not increasing");

  const double bound =
      std::min(existence_time_bound(f, s, x_grid), s.horizon);
  if (!(t_grid.back() < bound)) {
    std::ostringstream msg;
    msg << "single_shock_solve: requested horizon " << t_grid.back()
        << " is not below the existence bound " << bound;
    throw numeric_error(msg.str());
  }

  auto left_data = [&](double xi) {
    return s.background(xi) + s.amplitude(xi);
  };
  auto speed = [&](double phi, double t) {
    const double ul =
        SingleShockSolution::trace_characteristic(f, left_data, phi, t);
    const double ur =
        SingleShockSolution::trace_characteristic(f, s.background, phi, t);
    const double wl = left_data(ul);
    const double wr = s.background(ur);
    const double e = wl - wr;
    if (!(e > 1e-12))
      throw numeric_error("single_shock_solve: amplitude collapsed "
                          "(stability violated)");
    return (f(wl) - f(wr)) / e;
  };

  std::vector<double> front(t_grid.size());
  double phi = s.front_x0;
  double t = 0.0;
  front[0] = phi;
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double target = t_grid[i];
    while (t < target) {
      const double h = std::min(dt_max, target - t);
      const double k1 = speed(phi, t);
      const double k2 = speed(phi + 0.5 * h * k1, t + 0.5 * h);
      const double k3 = speed(phi + 0.5 * h * k2, t + 0.5 * h);
      const double k4 = speed(phi + h * k3, t + h);
      phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
    }
    front[i] = phi;
  }
  return SingleShockSolution(f, s, t_grid, std::move(front));
}

/// The nonmonotone "naive" construction for the quadratic flux: plateaus
/// +-1 outside the pair of jumps at -+phi(t), an inclined line
/// a x / (1 + 2 a t) between them. phi solves phi' = a phi/(1+2at) - 1,
/// phi(0) = 1, integrated numerically over the whole validity interval
/// (-1/(2a), t_collapse); negative times mean evaluating the formula before
/// its weak-limit collapse point, which is how the post-merge continuation
/// below uses it.
class NaiveScenario {
public:
  explicit NaiveScenario(double a) : a_(a) {
    if (!(a > 1.0))
      throw std::invalid_argument("NaiveScenario: need a > 1");

    auto rhs = [a](double t, double p) { return a * p / (1.0 + 2.0 * a * t) - 1.0; };
    auto rk4 = [&rhs](double t, double p, double h) {
      const double k1 = rhs(t, p);
      const double k2 = rhs(t + 0.5 * h, p + 0.5 * h * k1);
      const double k3 = rhs(t + 0.5 * h, p + 0.5 * h * k2);
      const double k4 = rhs(t + h, p + h * k3);
      return p + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    // Forward from phi(0) = 1 until the jumps meet (phi = 0).
    double t = 0.0, p = 1.0;
    t_.push_back(t);
    phi_.push_back(p);
    const double h = 1e-3;
    while (p > 0.0 && t < 100.0) {
      p = rk4(t, p, h);
      t += h;
      t_.push_back(t);
      phi_.push_back(p);
    }
    if (!(p <= 0.0))
      throw numeric_error("NaiveScenario: trajectory failed to collapse");
    const std::size_t k = t_.size() - 1;
    collapse_ = t_[k - 1] + h * phi_[k - 1] / (phi_[k - 1] - phi_[k]);

    // Backward toward the singular end t -> -1/(2a); steps shrink with the
    // distance to it.
    t = 0.0;
    p = 1.0;
    back_t_.push_back(t);
    back_phi_.push_back(p);
    const double t_sing = -0.5 / a_;
    while (t - t_sing > 1e-9) {
      const double hb = std::max(1e-10, 0.02 * (t - t_sing));
      p = rk4(t, p, -hb);
      t -= hb;
      back_t_.push_back(t);
      back_phi_.push_back(p);
    }
  }

  double a() const { return a_; }
  double collapse_time() const { return collapse_; }
  double singular_time() const { return -0.5 / a_; }

  double phi(double t) const {
    if (!(t > singular_time()) || !(t < collapse_))
      throw std::domain_error("NaiveScenario: t outside the validity interval");
    if (t >= 0.0)
      return refine(t_, phi_, t, /*descending=*/false);
    return refine(back_t_, back_phi_, t, /*descending=*/true);
  }

  double phi_dot(double t) const {
    return a_ * phi(t) / (1.0 + 2.0 * a_ * t) - 1.0;
  }

  /// W(x, t); left value at the jumps.
  double operator()(double x, double t) const {
    const double p = phi(t);
    if (x <= -p)
      return 1.0;
    if (x <= p)
      return a_ * x / (1.0 + 2.0 * a_ * t);
    return -1.0;
  }

private:
  // The stored trajectory is refined to the query time with one RK4 step
  // from the nearest node; plain interpolation loses accuracy where the
  // curvature blows up toward the singular end.
  double refine(const std::vector<double>& xs, const std::vector<double>& ys,
                double t, bool descending) const {
    std::size_t lo = 0, hi = xs.size() - 1;
    auto before = [&](double a, double b) {
      return descending ? a > b : a < b;
    };
    std::size_t at = hi;
    if (!before(xs.front(), t)) {
      at = 0;
    } else if (before(t, xs.back())) {
      while (hi - lo != 1) {
        const std::size_t mid = (lo + hi) / 2;
        (before(t, xs[mid]) ? hi : lo) = mid;
      }
      at = std::abs(t - xs[lo]) <= std::abs(t - xs[hi]) ? lo : hi;
    }
    const double h = t - xs[at];
    if (h == 0.0)
      return ys[at];
    auto rhs = [this](double tt, double p) {
      return a_ * p / (1.0 + 2.0 * a_ * tt) - 1.0;
    };
    const double t0 = xs[at], p0 = ys[at];
    const double k1 = rhs(t0, p0);
    const double k2 = rhs(t0 + 0.5 * h, p0 + 0.5 * h * k1);
    const double k3 = rhs(t0 + 0.5 * h, p0 + 0.5 * h * k2);
    const double k4 = rhs(t0 + h, p0 + h * k3);
    return p0 + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  double a_;
  double collapse_ = 0.0;
  std::vector<double> t_, phi_;           // forward branch
  std::vector<double> back_t_, back_phi_; // backward branch
};

/// Weak solution that continues the unit two-shock merge (fronts from -1
/// and +1, background -1) past the merge time t* = 1 by pasting in the
/// naive W at the shifted time t - 1/(2a) - t*. It is trajectory-continuous
/// but not the entropy solution: the jumps bounce apart instead of staying
/// merged.
class NaiveContinuation {
public:
  explicit NaiveContinuation(double a) : w_(a) {}

  double operator()(double x, double t) const {
    if (t <= 1.0) {
      const double p1 = -1.0 + t;
      const double p2 = 1.0 - t;
      if (x <= p1)
        return 1.0;
      if (x <= p2)
        return 0.0;
      return -1.0;
    }
    return w_(x, t - 0.5 / w_.a() - 1.0);
  }

  const NaiveScenario& wave() const { return w_; }

private:
  NaiveScenario w_;
};

} // namespace shockfront
