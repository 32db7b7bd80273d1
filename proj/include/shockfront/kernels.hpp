#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shockfront/interpolation.hpp"
#include "shockfront/quadrature.hpp"

namespace shockfront {

enum class KernelFamily { gaussian, bump, tabulated };
enum class DecayClass { compact, rapid };

namespace detail {

/// Prefix-integral table over fixed panel edges; partial panels are closed
/// with a single 15-point rule, so evaluation stays at quadrature accuracy
/// without nesting adaptive calls.
class CdfTable {
public:
  CdfTable() = default;

  template <class F>
  CdfTable(std::vector<double> edges, F&& density) : edges_(std::move(edges)) {
    prefix_.assign(edges_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i) {
      double v, err;
      gk15(density, edges_[i], edges_[i + 1], v, err);
      prefix_[i + 1] = prefix_[i] + v;
    }
  }

  template <class F>
  double eval(double z, F&& density) const {
    if (z <= edges_.front())
      return 0.0;
    if (z >= edges_.back())
      return prefix_.back();
    std::size_t lo = 0, hi = edges_.size() - 1;
    while (hi - lo != 1) {
      const std::size_t mid = (lo + hi) / 2;
      (edges_[mid] > z ? hi : lo) = mid;
    }
    double v, err;
    gk15(density, edges_[lo], z, v, err);
    return prefix_[lo] + v;
  }

private:
  std::vector<double> edges_;
  std::vector<double> prefix_;
};

} // namespace detail

/// Unit-mass mollifier with its cumulative primitive. The built-in families
/// are the Gaussian exp(-z^2/w^2)/(w sqrt(pi)) and the compact bump
/// exp(-1/(1-(z/r)^2)) normalized on (-r, r); tabulated samples are
/// normalized at construction. A kernel may carry a center offset, which
/// makes it non-symmetric but keeps the unit mass.
class Kernel {
public:
  static Kernel gaussian(double width = 1.0) {
    if (!(width > 0.0))
      throw std::invalid_argument("Kernel::gaussian: width must be positive");
    Kernel k;
    k.family_ = KernelFamily::gaussian;
    k.decay_ = DecayClass::rapid;
    k.shape_ = width;
    k.radius_ = width;
    return k;
  }

  static Kernel bump(double radius = 1.0) {
    if (!(radius > 0.0))
      throw std::invalid_argument("Kernel::bump: radius must be positive");
    Kernel k;
    k.family_ = KernelFamily::bump;
    k.decay_ = DecayClass::compact;
    k.shape_ = radius;
    k.radius_ = radius;
    const double scale = 1.0 / (bump_mass() * radius);
    auto base = [radius, scale](double z) {
      const double s = z / radius;
      const double q = 1.0 - s * s;
      return q > 0.0 ? scale * std::exp(-1.0 / q) : 0.0;
    };
    std::vector<double> edges(129);
    for (std::size_t i = 0; i < edges.size(); ++i)
      edges[i] = -radius + 2.0 * radius * static_cast<double>(i) / 128.0;
    k.cdf_table_ = std::make_shared<detail::CdfTable>(std::move(edges), base);
    return k;
  }

  /// Sampled density values; mass is measured and divided out, so the
  /// unit-mass invariant holds unconditionally.
  static Kernel tabulated(std::vector<double> z, std::vector<double> density) {
    if (z.size() < 4 || z.size() != density.size())
      throw std::invalid_argument("Kernel::tabulated: need >= 4 samples");
    for (double v : density)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("Kernel::tabulated: negative density");
    Kernel k;
    k.family_ = KernelFamily::tabulated;
    k.decay_ = DecayClass::compact;
    k.table_ = std::make_shared<MonotoneCubic>(std::move(z), std::move(density));
    const auto& nodes = k.table_->abscissae();
    k.lo_ = nodes.front();
    k.hi_ = nodes.back();
    k.radius_ = std::max(std::abs(k.lo_), std::abs(k.hi_));
    const MonotoneCubic& tab = *k.table_;
    auto raw = [&tab](double s) { return std::max(0.0, tab(s)); };
    const double mass = integrate(raw, k.lo_, k.hi_, 1e-13);
    if (!(mass > 0.0))
      throw std::invalid_argument("Kernel::tabulated: zero mass");
    k.scale_ = 1.0 / mass;
    auto base = [tab = k.table_, scale = k.scale_](double s) {
      return scale * std::max(0.0, (*tab)(s));
    };
    k.cdf_table_ = std::make_shared<detail::CdfTable>(nodes, base);
    return k;
  }

  /// Copy with the density translated by `offset`: w'(z) = w(z - offset).
  Kernel shifted(double offset) const {
    Kernel k = *this;
    k.shift_ += offset;
    return k;
  }

  double density(double z) const {
    const double s = z - shift_;
    switch (family_) {
    case KernelFamily::gaussian: {
      const double t = s / shape_;
      return std::exp(-t * t) / (shape_ * kSqrtPi);
    }
    case KernelFamily::bump: {
      const double t = s / shape_;
      const double q = 1.0 - t * t;
      return q > 0.0 ? std::exp(-1.0 / q) / (bump_mass() * shape_) : 0.0;
    }
    case KernelFamily::tabulated:
      if (s <= lo_ || s >= hi_)
        return 0.0;
      return scale_ * std::max(0.0, (*table_)(s));
    }
    return 0.0;
  }

  double cdf(double z) const {
    const double s = z - shift_;
    if (family_ == KernelFamily::gaussian)
      return 0.5 * std::erfc(-s / shape_);
    auto base = [this](double u) { return density(u + shift_); };
    return cdf_table_->eval(s, base);
  }

  double heaviside(double x, double eps) const {
    if (!(eps > 0.0))
      throw std::domain_error("Kernel::heaviside: eps must be positive");
    return cdf(x / eps);
  }

  double delta(double x, double eps) const {
    if (!(eps > 0.0))
      throw std::domain_error("Kernel::delta: eps must be positive");
    return density(x / eps) / eps;
  }

  KernelFamily family() const { return family_; }
  DecayClass decay() const { return decay_; }
  double support_radius() const { return radius_; }
  double center() const { return shift_; }

  /// Bounds outside which the density is zero (compact families) or below
  /// 1e-14 of peak (rapid decay); quadratures over the line truncate here.
  double truncation_lo() const {
    if (family_ == KernelFamily::gaussian)
      return shift_ - 10.0 * radius_;
    if (family_ == KernelFamily::tabulated)
      return shift_ + lo_;
    return shift_ - radius_;
  }
  double truncation_hi() const {
    if (family_ == KernelFamily::gaussian)
      return shift_ + 10.0 * radius_;
    if (family_ == KernelFamily::tabulated)
      return shift_ + hi_;
    return shift_ + radius_;
  }

private:
  Kernel() = default;

  static constexpr double kSqrtPi = 1.7724538509055160273;

  // Mass of exp(-1/(1-s^2)) on (-1, 1), computed once.
  static double bump_mass() {
    static const double m = [] {
      auto f = [](double s) {
        const double q = 1.0 - s * s;
        return q > 0.0 ? std::exp(-1.0 / q) : 0.0;
      };
      return integrate(f, -1.0, 1.0, 1e-14);
    }();
    return m;
  }

  KernelFamily family_ = KernelFamily::gaussian;
  DecayClass decay_ = DecayClass::rapid;
  double shape_ = 1.0;
  double radius_ = 1.0;
  double shift_ = 0.0;
  double scale_ = 1.0;
  double lo_ = 0.0, hi_ = 0.0;
  std::shared_ptr<const MonotoneCubic> table_;
  std::shared_ptr<const detail::CdfTable> cdf_table_;
};

} // namespace shockfront
