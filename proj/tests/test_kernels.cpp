#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "shockfront/kernels.hpp"
#include "shockfront/numeric.hpp"
#include "shockfront/quadrature.hpp"

using namespace shockfront;

namespace {

std::vector<Kernel> sample_kernels() {
  std::vector<double> z = linspace(-2.0, 2.0, 33);
  std::vector<double> w;
  for (double v : z)
    w.push_back(3.0 * std::exp(-v * v) * (1.0 + 0.2 * std::cos(v)));
  return {Kernel::gaussian(1.0), Kernel::gaussian(0.6), Kernel::bump(1.0),
          Kernel::bump(1.7), Kernel::tabulated(z, w),
          Kernel::gaussian(1.0).shifted(0.8)};
}

} // namespace

TEST_CASE("gaussian closed forms") {
  const Kernel k = Kernel::gaussian(1.0);
  CHECK(k.density(0.0) == Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(k.cdf(0.0) == Approx(0.5).margin(1e-15));
  const Kernel w = Kernel::gaussian(2.0);
  CHECK(w.density(0.0) == Approx(0.5 / std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("compact support is exact for the bump") {
  const Kernel k = Kernel::bump(1.0);
  CHECK(k.density(k.support_radius() + 1.0) == 0.0);
  CHECK(k.density(-1.0000001) == 0.0);
  CHECK(k.decay() == DecayClass::compact);
}

TEST_CASE("unit mass for every family") {
  for (const Kernel& k : sample_kernels()) {
    auto density = [&](double z) { return k.density(z); };
    const double lo = k.center() - 10.0 * k.support_radius();
    const double hi = k.center() + 10.0 * k.support_radius();
    const double mass = integrate(density, lo, hi, 1e-12, 60);
    CHECK(mass == Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("cumulative primitive saturates and stays monotone") {
  for (const Kernel& k : sample_kernels()) {
    const double big = k.center() + 10.0 * k.support_radius();
    CHECK(k.cdf(k.center() - 10.0 * k.support_radius()) < 1e-12);
    CHECK(1.0 - k.cdf(big) < 1e-12);
    double prev = -1e-300;
    for (double z : linspace(k.center() - 3.0 * k.support_radius(),
                             k.center() + 3.0 * k.support_radius(), 257)) {
      const double c = k.cdf(z);
      CHECK(c >= prev - 1e-13);
      CHECK(c >= -1e-13);
      CHECK(c <= 1.0 + 1e-13);
      prev = c;
    }
  }
}

TEST_CASE("heaviside approximation") {
  const Kernel k = Kernel::gaussian(1.0);
  CHECK(k.heaviside(1.0, 1e-6) == Approx(1.0).margin(1e-12));
  CHECK(k.heaviside(-1.0, 1e-6) == Approx(0.0).margin(1e-12));
  CHECK(k.heaviside(0.0, 0.37) == Approx(0.5).margin(1e-15));
  // consistency with the cdf is exact, not approximate
  for (double x : {-0.3, 0.1, 2.0})
    CHECK(k.heaviside(x, 0.05) == k.cdf(x / 0.05));
  CHECK_THROWS_AS(k.heaviside(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(k.heaviside(1.0, -1.0), std::domain_error);
}

TEST_CASE("delta approximation") {
  const Kernel k = Kernel::gaussian(1.0);
  const double eps = 0.1;
  CHECK(k.delta(0.0, eps) == Approx(10.0 / std::sqrt(M_PI)).epsilon(1e-12));
  auto d = [&](double x) { return k.delta(x, eps); };
  const double r = 10.0 * eps * k.support_radius();
  CHECK(integrate(d, -r, r, 1e-12) == Approx(1.0).margin(1e-10));
  CHECK_THROWS_AS(k.delta(0.0, 0.0), std::domain_error);

  SECTION("pairing converges to the point value at second order") {
    // <delta_eps, phi> - phi(0) = O(eps^2) for a symmetric kernel; the
    // quadrature oracle should show the defect quartering under halving.
    auto phi = [](double x) { return std::cos(1.3 * x) + 0.5 * x; };
    auto defect = [&](double e) {
      auto integrand = [&](double x) { return k.delta(x, e) * phi(x); };
      const double reach = 10.0 * e * k.support_radius();
      return std::abs(integrate(integrand, -reach, reach, 1e-13) - phi(0.0));
    };
    const double d1 = defect(0.02);
    const double d2 = defect(0.01);
    CHECK(d1 / d2 == Approx(4.0).epsilon(0.3));
    CHECK(std::abs(integrate([&](double x) { return k.delta(x, 1e-3) * phi(x); },
                             -0.01, 0.01, 1e-13) -
                   phi(0.0)) < 1e-5);
  }
}

TEST_CASE("rapid decay bound") {
  const Kernel k = Kernel::gaussian(1.0);
  double worst = 0.0;
  for (double z : linspace(-12.0, 12.0, 1001)) {
    double p = 1.0;
    for (int n = 0; n < 8; ++n)
      p *= 1.0 + std::abs(z);
    worst = std::max(worst, k.density(z) * p);
  }
  CHECK(std::isfinite(worst));
  CHECK(worst < 100.0);
}

TEST_CASE("construction rejects invalid shapes, evaluation never throws") {
  CHECK_THROWS_AS(Kernel::gaussian(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::gaussian(-2.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::bump(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::tabulated({0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Kernel::tabulated({0.0, 1.0, 2.0, 3.0}, {1.0, -0.5, 1.0, 1.0}),
                  std::invalid_argument);
  const Kernel k = Kernel::bump(0.5);
  for (double z : {-1e9, -3.0, 0.0, 0.2, 1e9})
    CHECK_NOTHROW(k.density(z));
}

TEST_CASE("tabulated kernels are normalized at construction") {
  std::vector<double> z = linspace(-3.0, 3.0, 41);
  std::vector<double> w;
  for (double v : z)
    w.push_back(7.5 * std::exp(-v * v)); // deliberately far from unit mass
  const Kernel k = Kernel::tabulated(z, w);
  auto density = [&](double x) { return k.density(x); };
  CHECK(integrate(density, -3.0, 3.0, 1e-12) == Approx(1.0).margin(1e-10));
  CHECK(k.cdf(3.0) == Approx(1.0).margin(1e-10));
}

TEST_CASE("shifted kernels keep unit mass and move the median") {
  const Kernel k = Kernel::gaussian(1.0).shifted(0.8);
  CHECK(k.cdf(0.8) == Approx(0.5).margin(1e-14));
  CHECK(k.density(0.8) == Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(k.center() == Approx(0.8));
}
