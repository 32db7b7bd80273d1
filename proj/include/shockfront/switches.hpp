#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "shockfront/errors.hpp"
#include "shockfront/flux.hpp"
#include "shockfront/interpolation.hpp"
#include "shockfront/kernels.hpp"
#include "shockfront/quadrature.hpp"

namespace shockfront {

namespace detail {

inline std::vector<double> switch_breakpoints(const Kernel& k1,
                                              const Kernel& k2, double rho) {
  // Inner structure of the weight kernel plus the CDF transition window of
  // the other one, shifted by rho.
  return {k1.center() - k1.support_radius(),
          k1.center(),
          k1.center() + k1.support_radius(),
          -rho + k2.center() - k2.support_radius(),
          -rho + k2.center(),
          -rho + k2.center() + k2.support_radius()};
}

inline bool both_gaussian(const Kernel& k1, const Kernel& k2) {
  return k1.family() == KernelFamily::gaussian &&
         k2.family() == KernelFamily::gaussian;
}

// CDF of the convolved pair at rho. The convolution of two Gaussians is
// Gaussian, with widths adding in quadrature and the centers combining to
// c2 - c1.
inline double hopf_pair_cdf_gaussian(const Kernel& k1, const Kernel& k2,
                                     double rho) {
  const double w = std::sqrt(k1.support_radius() * k1.support_radius() +
                             k2.support_radius() * k2.support_radius());
  return 0.5 * std::erfc(-(rho - k2.center() + k1.center()) / w);
}

inline double hopf_pair_density_gaussian(const Kernel& k1, const Kernel& k2,
                                         double rho) {
  const double w = std::sqrt(k1.support_radius() * k1.support_radius() +
                             k2.support_radius() * k2.support_radius());
  const double s = (rho - k2.center() + k1.center()) / w;
  return std::exp(-s * s) / (w * 1.7724538509055160273);
}

} // namespace detail

/// Unit-amplitude switch for the quadratic flux: the cumulative of the
/// convolved kernel pair, B1(rho) = int w1(z) w02(z + rho) dz. Closed form
/// for two Gaussians, quadrature otherwise.
inline double b1_hopf(const Kernel& k1, const Kernel& k2, double rho) {
  if (detail::both_gaussian(k1, k2))
    return detail::hopf_pair_cdf_gaussian(k1, k2, rho);
  auto integrand = [&](double z) { return k1.density(z) * k2.cdf(z + rho); };
  return integrate(integrand, k1.truncation_lo(), k1.truncation_hi(),
                   detail::switch_breakpoints(k1, k2, rho), 1e-11);
}

/// Companion switch evaluated at -rho, computed from its own quadrature
/// (kernel-2 density against the kernel-1 cumulative) rather than through
/// the sum identity, so b1 + b2 = 1 stays a genuine cross-check.
inline double b2_hopf(const Kernel& k1, const Kernel& k2, double rho) {
  if (detail::both_gaussian(k1, k2))
    return detail::hopf_pair_cdf_gaussian(k2, k1, -rho);
  auto integrand = [&](double z) { return k2.density(z) * k1.cdf(z - rho); };
  return integrate(integrand, k2.truncation_lo(), k2.truncation_hi(),
                   detail::switch_breakpoints(k2, k1, -rho), 1e-11);
}

/// dB1/drho: the convolved-pair density.
inline double b1_hopf_prime(const Kernel& k1, const Kernel& k2, double rho) {
  if (detail::both_gaussian(k1, k2))
    return detail::hopf_pair_density_gaussian(k1, k2, rho);
  auto integrand = [&](double z) {
    return k1.density(z) * k2.density(z + rho);
  };
  return integrate(integrand, k1.truncation_lo(), k1.truncation_hi(),
                   detail::switch_breakpoints(k1, k2, rho), 1e-11);
}

/// Common saturation value of the general switches,
/// f(u0+e1+e2) - f(u0+e1) - f(u0+e2) + f(u0).
inline double switch_saturation(const FluxFunction& f, double u0, double e1,
                                double e2) {
  return f(u0 + e1 + e2) - f(u0 + e1) - f(u0 + e2) + f(u0);
}

/// General-flux switch:
///   B1(rho) = int [f'(u0 + e1 w01(z) + e2 w02(z + rho)) -
///                  f'(u0 + e1 w01(z))] e1 w1(z) dz.
inline double b1_general(const FluxFunction& f, double u0, double e1,
                         double e2, const Kernel& k1, const Kernel& k2,
                         double rho) {
  if (!(e1 > 0.0) || !(e2 > 0.0))
    throw std::invalid_argument("b1_general: amplitudes must be positive");
  auto integrand = [&](double z) {
    const double base = u0 + e1 * k1.cdf(z);
    return (f.prime(base + e2 * k2.cdf(z + rho)) - f.prime(base)) * e1 *
           k1.density(z);
  };
  return integrate(integrand, k1.truncation_lo(), k1.truncation_hi(),
                   detail::switch_breakpoints(k1, k2, rho), 1e-11);
}

/// Mirror switch evaluated at -rho:
///   B2(-rho) = int [f'(u0 + e1 w01(z - rho) + e2 w02(z)) -
///                   f'(u0 + e2 w02(z))] e2 w2(z) dz.
inline double b2_general(const FluxFunction& f, double u0, double e1,
                         double e2, const Kernel& k1, const Kernel& k2,
                         double rho) {
  if (!(e1 > 0.0) || !(e2 > 0.0))
    throw std::invalid_argument("b2_general: amplitudes must be positive");
  auto integrand = [&](double z) {
    const double base = u0 + e2 * k2.cdf(z);
    return (f.prime(base + e1 * k1.cdf(z - rho)) - f.prime(base)) * e2 *
           k2.density(z);
  };
  return integrate(integrand, k2.truncation_lo(), k2.truncation_hi(),
                   detail::switch_breakpoints(k2, k1, -rho), 1e-11);
}

/// dB1/drho = e1 e2 int f''(u0 + e1 w01(z) + e2 w02(z + rho)) w1(z)
/// w2(z + rho) dz; positive for convex f, which makes B1 increasing.
inline double b1_general_prime(const FluxFunction& f, double u0, double e1,
                               double e2, const Kernel& k1, const Kernel& k2,
                               double rho) {
  auto integrand = [&](double z) {
    return f.second(u0 + e1 * k1.cdf(z) + e2 * k2.cdf(z + rho)) *
           k1.density(z) * k2.density(z + rho);
  };
  return e1 * e2 *
         integrate(integrand, k1.truncation_lo(), k1.truncation_hi(),
                   detail::switch_breakpoints(k1, k2, rho), 1e-11);
}

/// Tabulated B1 over a saturating rho range with monotone-cubic
/// interpolation, plus the exact evaluators it was built from. The table is
/// immutable once built and cheap to copy around.
class SwitchTable {
public:
  enum class Kind { hopf, general };

  SwitchTable(Kind kind, std::vector<double> rho_grid,
              std::vector<double> b1_values, double sat_lo, double sat_hi,
              Kernel k1, Kernel k2, std::string flux_label, double u0,
              double e1, double e2, std::function<double(double)> exact,
              std::function<double(double)> exact_prime)
      : kind_(kind), rho_(std::move(rho_grid)), b1_(std::move(b1_values)),
        sat_lo_(sat_lo), sat_hi_(sat_hi), k1_(std::move(k1)),
        k2_(std::move(k2)), flux_label_(std::move(flux_label)), u0_(u0),
        e1_(e1), e2_(e2), exact_(std::move(exact)),
        exact_prime_(std::move(exact_prime)), interp_(rho_, b1_) {}

  /// Interpolated B1, clamped to the saturation values outside the grid.
  double operator()(double rho) const {
    if (rho <= rho_.front())
      return sat_lo_;
    if (rho >= rho_.back())
      return sat_hi_;
    return interp_(rho);
  }

  double exact(double rho) const { return exact_(rho); }
  double exact_prime(double rho) const { return exact_prime_(rho); }

  Kind kind() const { return kind_; }
  const std::vector<double>& rho_grid() const { return rho_; }
  const std::vector<double>& b1_values() const { return b1_; }
  double saturation_lo() const { return sat_lo_; }
  double saturation_hi() const { return sat_hi_; }
  double rho_max() const { return rho_.back(); }
  const Kernel& kernel1() const { return k1_; }
  const Kernel& kernel2() const { return k2_; }
  const std::string& flux_label() const { return flux_label_; }
  double u0() const { return u0_; }
  double e1() const { return e1_; }
  double e2() const { return e2_; }

private:
  Kind kind_;
  std::vector<double> rho_;
  std::vector<double> b1_;
  double sat_lo_, sat_hi_;
  Kernel k1_, k2_;
  std::string flux_label_;
  double u0_, e1_, e2_;
  std::function<double(double)> exact_, exact_prime_;
  MonotoneCubic interp_;
};

namespace detail {

inline SwitchTable build_table(SwitchTable::Kind kind, const Kernel& k1,
                               const Kernel& k2, std::string flux_label,
                               double u0, double e1, double e2, double sat_lo,
                               double sat_hi,
                               std::function<double(double)> exact,
                               std::function<double(double)> exact_prime,
                               double rho_max, int n) {
  if (n < 64)
    throw std::invalid_argument("build_switch_table: need n >= 64 nodes");
  const double radius_sum = k1.support_radius() + k2.support_radius();
  const double offset = std::abs(k2.center() - k1.center());
  const double hard_cap = 100.0 * radius_sum + offset;
  double reach = rho_max > 0.0
                     ? rho_max
                     : std::max(1.0, 4.0 * radius_sum) + offset;
  const double span = sat_hi - sat_lo;
  for (;;) {
    const double res_hi = std::abs(exact(reach) - sat_hi);
    const double res_lo = std::abs(exact(-reach) - sat_lo);
    if (res_hi < 1e-8 * std::max(1.0, span) &&
        res_lo < 1e-8 * std::max(1.0, span))
      break;
    if (rho_max > 0.0 || reach > hard_cap) {
      std::ostringstream msg;
      msg << "build_switch_table: switch fails to saturate by rho = " << reach
          << " (residuals " << res_lo << ", " << res_hi << ")";
      throw numeric_error(msg.str());
    }
    reach *= 2.0;
  }

  std::vector<double> rho(n), b1(n);
  for (int i = 0; i < n; ++i) {
    rho[i] = -reach + 2.0 * reach * static_cast<double>(i) / (n - 1);
    b1[i] = exact(rho[i]);
  }
  // Repair sub-tolerance quadrature noise so the nondecreasing invariant is
  // exact; anything larger is a real defect.
  for (int i = 1; i < n; ++i) {
    if (b1[i] < b1[i - 1] - 1e-9 * std::max(1.0, span))
      throw numeric_error("build_switch_table: B1 samples not monotone");
    b1[i] = std::max(b1[i], b1[i - 1]);
  }
  return SwitchTable(kind, std::move(rho), std::move(b1), sat_lo, sat_hi, k1,
                     k2, std::move(flux_label), u0, e1, e2, std::move(exact),
                     std::move(exact_prime));
}

} // namespace detail

/// Hopf-flux table: saturations are exactly 0 and 1.
inline SwitchTable build_switch_table_hopf(const Kernel& k1, const Kernel& k2,
                                           double rho_max = 0.0, int n = 4097) {
  auto exact = [k1, k2](double rho) { return b1_hopf(k1, k2, rho); };
  auto prime = [k1, k2](double rho) { return b1_hopf_prime(k1, k2, rho); };
  return detail::build_table(SwitchTable::Kind::hopf, k1, k2, "hopf", 0.0, 1.0,
                             1.0, 0.0, 1.0, exact, prime, rho_max, n);
}

/// General-flux table for the state (u0, e1, e2); saturations are 0 and the
/// second-difference constant of f.
inline SwitchTable build_switch_table(const FluxFunction& f, double u0,
                                      double e1, double e2, const Kernel& k1,
                                      const Kernel& k2, double rho_max = 0.0,
                                      int n = 4097) {
  if (!(e1 > 0.0) || !(e2 > 0.0))
    throw std::invalid_argument("build_switch_table: amplitudes must be positive");
  const double sat = switch_saturation(f, u0, e1, e2);
  auto exact = [f, u0, e1, e2, k1, k2](double rho) {
    return b1_general(f, u0, e1, e2, k1, k2, rho);
  };
  auto prime = [f, u0, e1, e2, k1, k2](double rho) {
    return b1_general_prime(f, u0, e1, e2, k1, k2, rho);
  };
  return detail::build_table(SwitchTable::Kind::general, k1, k2, f.label(), u0,
                             e1, e2, 0.0, sat, exact, prime, rho_max, n);
}

/// Unique rho with B1(rho) = target, on the exact switch (the table only
/// provides the bracket). Bisection followed by Newton polish; the result
/// satisfies |B1(root) - target| < 1e-10.
inline double solve_switch_root(const SwitchTable& table, double target) {
  if (!(target > table.saturation_lo()) || !(target < table.saturation_hi()))
    throw numeric_error("solve_switch_root: target outside the open switch range");
  const auto& rho = table.rho_grid();
  const auto& b1 = table.b1_values();
  if (!(target > b1.front()) || !(target < b1.back()))
    throw numeric_error("solve_switch_root: target within saturation residual "
                        "of the table endpoints");
  auto it = std::lower_bound(b1.begin(), b1.end(), target);
  std::size_t hi_idx = static_cast<std::size_t>(it - b1.begin());
  double lo = rho[hi_idx - 1], hi = rho[hi_idx];
  double flo = table.exact(lo) - target;
  double fhi = table.exact(hi) - target;
  // Interpolation error can misplace the bracket by a node; widen if needed.
  while (flo > 0.0 && hi_idx >= 2) {
    --hi_idx;
    hi = lo;
    fhi = flo;
    lo = rho[hi_idx - 1];
    flo = table.exact(lo) - target;
  }
  while (fhi < 0.0 && hi_idx + 1 < rho.size()) {
    ++hi_idx;
    lo = hi;
    flo = fhi;
    hi = rho[hi_idx];
    fhi = table.exact(hi) - target;
  }
  if (flo > 0.0 || fhi < 0.0)
    throw numeric_error("solve_switch_root: failed to bracket the root");

  for (int iter = 0; iter < 80 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = table.exact(mid) - target;
    (fm < 0.0 ? lo : hi) = mid;
    if (fm < 0.0)
      flo = fm;
    else
      fhi = fm;
  }
  double root = 0.5 * (lo + hi);
  for (int iter = 0; iter < 4; ++iter) {
    const double fr = table.exact(root) - target;
    if (std::abs(fr) < 5e-11)
      break;
    const double dr = table.exact_prime(root);
    if (!(dr > 0.0))
      break;
    const double next = root - fr / dr;
    if (next > lo && next < hi)
      root = next;
    else
      break;
  }
  if (std::abs(table.exact(root) - target) >= 1e-10)
    throw numeric_error("solve_switch_root: refinement failed to reach 1e-10");
  return root;
}

} // namespace shockfront
