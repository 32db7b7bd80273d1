#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "shockfront/errors.hpp"
#include "shockfront/flux.hpp"
#include "shockfront/interpolation.hpp"
#include "shockfront/numeric.hpp"
#include "shockfront/switches.hpp"

namespace shockfront {

/// Riemann-type two-shock data: u = u0 + e1 + e2 left of x1_0, u0 + e2
/// between the fronts, u0 right of x2_0.
struct TwoShockState {
  double u0;
  double e1;
  double e2;
  double x1_0;
  double x2_0;
};

inline void validate(const TwoShockState& s) {
  if (!(s.e1 > 0.0) || !(s.e2 > 0.0))
    throw std::invalid_argument(
        "TwoShockState: amplitudes must be positive (stability)");
  if (!(s.x1_0 < s.x2_0))
    throw std::invalid_argument("TwoShockState: fronts must satisfy x1_0 < x2_0");
}

struct MergeEvent {
  double t_star;
  double x_star;
  double speed1;     // lagging front, faster
  double speed2;     // advanced front
  double post_speed; // merged front
};

/// Speeds of the non-interacting fronts,
/// ([f(u0+e1+e2) - f(u0+e2)]/e1, [f(u0+e2) - f(u0)]/e2).
inline std::pair<double, double>
pre_interaction_speeds(const FluxFunction& f, const TwoShockState& s) {
  validate(s);
  const double v1 = (f(s.u0 + s.e1 + s.e2) - f(s.u0 + s.e2)) / s.e1;
  const double v2 = (f(s.u0 + s.e2) - f(s.u0)) / s.e2;
  if (!(v1 > v2))
    throw numeric_error(
        "pre_interaction_phases: lagging front is not faster; the fronts "
        "never merge (flux not convex on the state range?)");
  return {v1, v2};
}

/// Intersection of the unperturbed trajectories and the merged-front speed
/// [f(u0+e1+e2) - f(u0)]/(e1+e2).
inline MergeEvent merge_point(const FluxFunction& f, const TwoShockState& s) {
  const auto [v1, v2] = pre_interaction_speeds(f, s);
  MergeEvent ev;
  ev.speed1 = v1;
  ev.speed2 = v2;
  ev.t_star = (s.x2_0 - s.x1_0) / (v1 - v2);
  ev.x_star = s.x1_0 + v1 * ev.t_star;
  ev.post_speed = (f(s.u0 + s.e1 + s.e2) - f(s.u0)) / (s.e1 + s.e2);
  return ev;
}

/// Piecewise-linear limit trajectories: the unperturbed lines up to the
/// merge, a common line at the merged speed afterwards. Continuous in t
/// with the only kink at t_star.
inline std::pair<double, double> limit_phases(const FluxFunction& f,
                                              const TwoShockState& s,
                                              double t) {
  const MergeEvent ev = merge_point(f, s);
  double p1 = s.x1_0 + ev.speed1 * t;
  double p2 = s.x2_0 + ev.speed2 * t;
  if (t > ev.t_star) {
    const double bend = (ev.speed1 - ev.speed2) * (t - ev.t_star);
    p1 -= bend * s.e2 / (s.e1 + s.e2);
    p2 += bend * s.e1 / (s.e1 + s.e2);
  }
  return {p1, p2};
}

/// Closed forms of the quadratic-flux (f = u^2) kinematics, kept as a
/// separate path so the general-flux machinery can be validated against it.
namespace hopf {

inline std::pair<double, double> pre_interaction_speeds(const TwoShockState& s) {
  validate(s);
  return {2.0 * s.u0 + s.e1 + 2.0 * s.e2, 2.0 * s.u0 + s.e2};
}

inline MergeEvent merge_point(const TwoShockState& s) {
  const auto [v1, v2] = pre_interaction_speeds(s);
  MergeEvent ev;
  ev.speed1 = v1;
  ev.speed2 = v2;
  ev.t_star = (s.x2_0 - s.x1_0) / (s.e1 + s.e2);
  ev.x_star = s.x1_0 + v1 * ev.t_star;
  ev.post_speed = 2.0 * s.u0 + s.e1 + s.e2;
  return ev;
}

inline std::pair<double, double> limit_phases(const TwoShockState& s,
                                              double t) {
  const MergeEvent ev = merge_point(s);
  double p1 = s.x1_0 + ev.speed1 * t;
  double p2 = s.x2_0 + ev.speed2 * t;
  if (t > ev.t_star) {
    p1 -= s.e2 * (t - ev.t_star);
    p2 += s.e1 * (t - ev.t_star);
  }
  return {p1, p2};
}

} // namespace hopf

/// Solution of the fast-variable problem d rho / d tau = F(rho),
/// rho(tau)/tau -> 1 as tau -> +infinity, normalized by rho(tau_max) =
/// tau_max. rho decays to rho0, the maximal root of F, as tau -> -infinity.
class RhoSolution {
public:
  RhoSolution(std::vector<double> tau, std::vector<double> rho, double rho0,
              std::function<double(double)> rhs,
              std::function<double(double)> rhs_prime)
      : tau_(std::move(tau)), rho_(std::move(rho)), rho0_(rho0),
        rhs_(std::move(rhs)), rhs_prime_(std::move(rhs_prime)),
        interp_(tau_, rho_) {}

  /// rho at tau; beyond the grid the asymptotic behavior is used (unit
  /// slope above, the constant rho0 below).
  double operator()(double tau) const {
    if (tau >= tau_.back())
      return rho_.back() + (tau - tau_.back());
    if (tau <= tau_.front())
      return rho0_;
    return interp_(tau);
  }

  double rhs(double rho) const { return rhs_(rho); }
  double rhs_prime(double rho) const { return rhs_prime_(rho); }

  const std::vector<double>& tau_grid() const { return tau_; }
  const std::vector<double>& rho_values() const { return rho_; }
  double rho0() const { return rho0_; }
  double tau_max() const { return tau_.back(); }
  double step() const { return tau_[1] - tau_[0]; }

private:
  std::vector<double> tau_, rho_;
  double rho0_;
  std::function<double(double)> rhs_, rhs_prime_;
  MonotoneCubic interp_;
};

namespace detail {

/// F(rho) and its derivative for the given path. Hopf: F = 2 B1 - 1.
/// General: F = (N - (e1+e2) B1) / D with
///   N = [f(u0+e1+e2) - f(u0+e1)] e1 - [f(u0+e1) - f(u0)] e2,
///   D = [f(u0+e2) - f(u0)] e1 - [f(u0+e1+e2) - f(u0+e2)] e2  (< 0 when the
/// fronts merge).
struct RhoRhs {
  std::function<double(double)> F;
  std::function<double(double)> F_prime;
  double root_target; // B1 value at the maximal root of F
};

inline RhoRhs make_rho_rhs(const SwitchTable& table, const TwoShockState& s,
                           const FluxFunction& f) {
  RhoRhs out;
  if (table.kind() == SwitchTable::Kind::hopf) {
    out.F = [table](double rho) { return 2.0 * table.exact(rho) - 1.0; };
    out.F_prime = [table](double rho) { return 2.0 * table.exact_prime(rho); };
    out.root_target = 0.5;
    return out;
  }
  const double fa = f(s.u0);
  const double fb = f(s.u0 + s.e1);
  const double fc = f(s.u0 + s.e2);
  const double fd = f(s.u0 + s.e1 + s.e2);
  const double num = (fd - fb) * s.e1 - (fb - fa) * s.e2;
  const double den = (fc - fa) * s.e1 - (fd - fc) * s.e2;
  if (!(den < 0.0))
    throw numeric_error("solve_rho: non-merging configuration (psi0 is not "
                        "decreasing)");
  const double esum = s.e1 + s.e2;
  out.F = [table, num, den, esum](double rho) {
    return (num - esum * table.exact(rho)) / den;
  };
  out.F_prime = [table, den, esum](double rho) {
    return -esum * table.exact_prime(rho) / den;
  };
  out.root_target = num / esum;
  return out;
}

template <class F>
inline double rk4_step(F&& rhs, double y, double h) {
  const double k1 = rhs(y);
  const double k2 = rhs(y + 0.5 * h * k1);
  const double k3 = rhs(y + 0.5 * h * k2);
  const double k4 = rhs(y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace detail

/// Integrates the fast-variable equation backward from tau_max with the
/// normalization rho(tau_max) = tau_max (the boundary condition fixes the
/// solution only up to a tau translation; limit quantities do not depend on
/// the choice). A forward re-integration from the point where F passes 1/2
/// guards against an unstable step size.
inline RhoSolution solve_rho(const SwitchTable& table, const TwoShockState& s,
                             const FluxFunction& f, double tau_max = 50.0,
                             double step = 0.01) {
  validate(s);
  if (!(tau_max > 0.0) || !(step > 0.0) || step >= tau_max)
    throw std::invalid_argument("solve_rho: need 0 < step < tau_max");

  const detail::RhoRhs rhs = detail::make_rho_rhs(table, s, f);

  // Saturation values of F must straddle zero for the asymptote to exist.
  const double f_hi = rhs.F(table.rho_max());
  const double f_lo = rhs.F(-table.rho_max());
  if (!(f_hi > 0.0) || !(f_lo < 0.0)) {
    std::ostringstream msg;
    msg << "solve_rho: F has no sign change on the covered range (F(-inf) ~ "
        << f_lo << ", F(+inf) ~ " << f_hi << ")";
    throw numeric_error(msg.str());
  }

  const double rho0 = solve_switch_root(table, rhs.root_target);

  const std::size_t half = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(tau_max / step)));
  const double h = tau_max / static_cast<double>(half);
  const std::size_t n = 2 * half + 1;
  std::vector<double> tau(n), rho(n);
  for (std::size_t i = 0; i < n; ++i)
    tau[i] = (static_cast<double>(i) - static_cast<double>(half)) * h;
  rho[n - 1] = tau_max;
  for (std::size_t i = n - 1; i-- > 0;) {
    rho[i] = detail::rk4_step(rhs.F, rho[i + 1], -h);
    if (!std::isfinite(rho[i]))
      throw numeric_error("solve_rho: integration diverged (step too large)");
  }

  // Re-integrate forward from the mid-transition anchor; the endpoint map
  // from there is well conditioned, so a mismatch indicates step error.
  std::size_t anchor = n - 1;
  double best = std::abs(rhs.F(rho[n - 1]) - 0.5);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(rhs.F(rho[i]) - 0.5);
    if (d < best) {
      best = d;
      anchor = i;
    }
  }
  double fwd = rho[anchor];
  for (std::size_t i = anchor; i + 1 < n; ++i)
    fwd = detail::rk4_step(rhs.F, fwd, h);
  if (!(std::abs(fwd - rho[n - 1]) < 1e-6)) {
    std::ostringstream msg;
    msg << "solve_rho: backward-forward reintegration mismatch "
        << std::abs(fwd - rho[n - 1]) << " exceeds 1e-6; reduce the step";
    throw numeric_error(msg.str());
  }

  return RhoSolution(std::move(tau), std::move(rho), rho0, rhs.F, rhs.F_prime);
}

/// Integrand of the phase-perturbation formulas as a function of B1:
/// G = (sat - B1)/Delta with Delta = [f(u0+e1+e2) - f(u0+e2)] e2 -
/// [f(u0+e2) - f(u0)] e1; the Hopf specialization is 2 (1 - B1)/(e1 + e2).
/// G >= 0, G(-inf) = 1/(e1+e2), G(+inf) = 0, and d/dtau [tau phi_k1] =
/// (-1)^(k-1) e_{3-k} G(rho(tau)).
inline std::function<double(double)>
perturbation_integrand(const SwitchTable& table, const FluxFunction& f,
                       const TwoShockState& s) {
  if (table.kind() == SwitchTable::Kind::hopf) {
    const double esum = s.e1 + s.e2;
    return [table, esum](double rho) {
      return 2.0 * (1.0 - table.exact(rho)) / esum;
    };
  }
  const double sat = table.saturation_hi();
  const double delta = (f(s.u0 + s.e1 + s.e2) - f(s.u0 + s.e2)) * s.e2 -
                       (f(s.u0 + s.e2) - f(s.u0)) * s.e1;
  return [table, sat, delta](double rho) {
    return (sat - table.exact(rho)) / delta;
  };
}

/// Phase perturbations phi_11, phi_21 on the rho solution grid:
/// phi_k1(tau) = (-1)^(k-1) (e_{3-k}/tau) int_0^tau G(rho) dtau', with the
/// removable singularity at tau = 0 evaluated as the integrand limit.
inline std::pair<std::vector<double>, std::vector<double>>
phase_perturbations(const RhoSolution& rho, const SwitchTable& table,
                    const FluxFunction& f, const TwoShockState& s) {
  const auto g_of_rho = perturbation_integrand(table, f, s);
  const auto& tau = rho.tau_grid();
  const auto& rv = rho.rho_values();
  const std::size_t n = tau.size();
  const std::size_t anchor = n / 2; // tau = 0 by construction

  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = g_of_rho(rv[i]);
  const std::vector<double> integral = cumulative_trapezoid(tau, g, anchor);

  std::vector<double> phi11(n), phi21(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = (i == anchor) ? g[anchor] : integral[i] / tau[i];
    phi11[i] = s.e2 * mean;
    phi21[i] = -s.e1 * mean;
  }
  return {std::move(phi11), std::move(phi21)};
}

/// Full phase machinery for one interaction: unperturbed lines, merge
/// event, fast-variable solution, and perturbations, combined through the
/// splitting phi_k(t, eps) = phi_k0(t) + psi0(t) phi_k1(psi0(t)/eps).
class PhaseSet {
public:
  PhaseSet(TwoShockState state, MergeEvent merge, RhoSolution rho,
           std::vector<double> phi11, std::vector<double> phi21,
           std::function<double(double)> g_of_rho)
      : state_(state), merge_(merge), rho_(std::move(rho)),
        phi11_values_(std::move(phi11)), phi21_values_(std::move(phi21)),
        g_of_rho_(std::move(g_of_rho)),
        phi11_interp_(rho_.tau_grid(), phi11_values_),
        phi21_interp_(rho_.tau_grid(), phi21_values_),
        limit1_(state.e2 / (state.e1 + state.e2)),
        limit2_(-state.e1 / (state.e1 + state.e2)) {}

  double phi10(double t) const { return state_.x1_0 + merge_.speed1 * t; }
  double phi20(double t) const { return state_.x2_0 + merge_.speed2 * t; }
  double psi0(double t) const { return phi20(t) - phi10(t); }

  /// Perturbations with their asymptotic tails: a 1/tau decay toward the
  /// tau -> -inf limits e2/(e1+e2), -e1/(e1+e2) and toward 0 on the right.
  double phi11(double tau) const {
    return eval_perturbation(phi11_interp_, phi11_values_, limit1_, tau);
  }
  double phi21(double tau) const {
    return eval_perturbation(phi21_interp_, phi21_values_, limit2_, tau);
  }

  std::pair<double, double> full_phase(double t, double eps) const {
    if (!(eps > 0.0))
      throw std::domain_error("full_phase: eps must be positive");
    const double p = psi0(t);
    const double tau = p / eps;
    return {phi10(t) + p * phi11(tau), phi20(t) + p * phi21(tau)};
  }

  /// d phi_k/dt at (t, eps): speed_k + psi0' d/dtau[tau phi_k1], the second
  /// factor being exactly (-1)^(k-1) e_{3-k} G(rho(tau)).
  std::pair<double, double> phase_speeds(double t, double eps) const {
    if (!(eps > 0.0))
      throw std::domain_error("phase_speeds: eps must be positive");
    const double dpsi = merge_.speed2 - merge_.speed1;
    const double g = g_of_rho_(rho_(psi0(t) / eps));
    return {merge_.speed1 + dpsi * state_.e2 * g,
            merge_.speed2 - dpsi * state_.e1 * g};
  }

  const TwoShockState& state() const { return state_; }
  const MergeEvent& merge() const { return merge_; }
  const RhoSolution& rho() const { return rho_; }
  const std::vector<double>& phi11_values() const { return phi11_values_; }
  const std::vector<double>& phi21_values() const { return phi21_values_; }
  double phi11_limit() const { return limit1_; }
  double phi21_limit() const { return limit2_; }

private:
  double eval_perturbation(const MonotoneCubic& interp,
                           const std::vector<double>& values, double limit,
                           double tau) const {
    const auto& grid = rho_.tau_grid();
    if (tau > grid.back())
      return values.back() * grid.back() / tau;
    if (tau < grid.front())
      return limit + (values.front() - limit) * grid.front() / tau;
    return interp(tau);
  }

  TwoShockState state_;
  MergeEvent merge_;
  RhoSolution rho_;
  std::vector<double> phi11_values_, phi21_values_;
  std::function<double(double)> g_of_rho_;
  MonotoneCubic phi11_interp_, phi21_interp_;
  double limit1_, limit2_;
};

/// Assembles the interaction dynamics along the path selected by the table
/// kind: the Hopf table drives the closed-form kinematics, a general table
/// drives the flux-based ones.
inline PhaseSet build_phase_set(const FluxFunction& f, const TwoShockState& s,
                                const SwitchTable& table, double tau_max = 50.0,
                                double step = 0.01) {
  const MergeEvent ev = table.kind() == SwitchTable::Kind::hopf
                            ? hopf::merge_point(s)
                            : merge_point(f, s);
  RhoSolution rho = solve_rho(table, s, f, tau_max, step);
  auto [phi11, phi21] = phase_perturbations(rho, table, f, s);
  auto g = perturbation_integrand(table, f, s);
  return PhaseSet(s, ev, std::move(rho), std::move(phi11), std::move(phi21),
                  std::move(g));
}

} // namespace shockfront
