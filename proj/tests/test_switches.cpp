#include <catch2/catch.hpp>

#include <cmath>
#include <vector>

#include "shockfront/numeric.hpp"
#include "shockfront/switches.hpp"

using namespace shockfront;

namespace {

std::vector<std::pair<Kernel, Kernel>> kernel_pairs() {
  return {{Kernel::gaussian(1.0), Kernel::gaussian(1.3)},
          {Kernel::gaussian(1.0), Kernel::bump(1.2)},
          {Kernel::bump(1.0), Kernel::bump(0.8)}};
}

} // namespace

TEST_CASE("unit-flux switch basics") {
  const Kernel g = Kernel::gaussian(1.0);
  CHECK(b1_hopf(g, g, 0.0) == Approx(0.5).margin(1e-12));
  const double reach = 10.0 * (g.support_radius() + g.support_radius());
  CHECK(b1_hopf(g, g, reach) == Approx(1.0).margin(1e-8));
  CHECK(b1_hopf(g, g, -reach) == Approx(0.0).margin(1e-8));
  CHECK(b2_hopf(g, g, reach) == Approx(0.0).margin(1e-8));
}

TEST_CASE("complementarity b1 + b2 = 1 across kernel pairs") {
  for (const auto& [k1, k2] : kernel_pairs()) {
    const double reach = 10.0 * (k1.support_radius() + k2.support_radius());
    for (double rho : linspace(-reach, reach, 101)) {
      const double sum = b1_hopf(k1, k2, rho) + b2_hopf(k1, k2, rho);
      CHECK(sum == Approx(1.0).margin(1e-9));
    }
  }
}

TEST_CASE("gaussian closed form agrees with direct quadrature") {
  const Kernel k1 = Kernel::gaussian(1.0);
  const Kernel k2 = Kernel::gaussian(1.4).shifted(0.3);
  for (double rho : {-2.0, -0.5, 0.0, 0.4, 1.7, 5.0}) {
    auto integrand = [&](double z) { return k1.density(z) * k2.cdf(z + rho); };
    const double direct =
        integrate(integrand, k1.truncation_lo(), k1.truncation_hi(),
                  {-rho + k2.center(), 0.0}, 1e-12);
    CHECK(b1_hopf(k1, k2, rho) == Approx(direct).margin(1e-10));
  }
}

TEST_CASE("switch derivative is the convolved density") {
  const Kernel k1 = Kernel::gaussian(1.0);
  const Kernel k2 = Kernel::bump(1.2);
  for (double rho : {-1.0, 0.0, 0.8}) {
    const double h = 1e-5;
    const double fd = (b1_hopf(k1, k2, rho + h) - b1_hopf(k1, k2, rho - h)) /
                      (2.0 * h);
    CHECK(b1_hopf_prime(k1, k2, rho) == Approx(fd).margin(1e-8));
    CHECK(b1_hopf_prime(k1, k2, rho) > 0.0); // kernels overlap here
  }
}

TEST_CASE("tabulated kernels satisfy the same identities") {
  std::vector<double> z = linspace(-2.5, 2.5, 41);
  std::vector<double> w;
  for (double v : z)
    w.push_back(std::exp(-v * v) * (1.0 + 0.3 * std::sin(v)));
  const Kernel tab = Kernel::tabulated(z, w);
  const Kernel g = Kernel::gaussian(1.0);
  for (double rho : {-3.0, -0.4, 0.0, 1.1, 4.0})
    CHECK(b1_hopf(tab, g, rho) + b2_hopf(tab, g, rho) ==
          Approx(1.0).margin(1e-9));
}

TEST_CASE("quadratic flux reduces the general switch to the unit one") {
  const FluxFunction hopf = FluxFunction::quadratic();
  const double u0 = 0.4, e1 = 1.2, e2 = 0.7;
  for (const auto& [k1, k2] : kernel_pairs()) {
    for (double rho : linspace(-6.0, 6.0, 25)) {
      const double general = b1_general(hopf, u0, e1, e2, k1, k2, rho);
      CHECK(general ==
            Approx(2.0 * e1 * e2 * b1_hopf(k1, k2, rho)).margin(1e-8));
    }
  }
}

TEST_CASE("general switches satisfy the sum identity for every rho") {
  const double u0 = -0.2, e1 = 1.0, e2 = 0.8;
  for (const auto& f : {FluxFunction::quartic(), FluxFunction::exponential()}) {
    const double sat = switch_saturation(f, u0, e1, e2);
    const Kernel k1 = Kernel::gaussian(1.0);
    const Kernel k2 = Kernel::bump(1.1);
    for (double rho : linspace(-15.0, 15.0, 31)) {
      const double sum = b1_general(f, u0, e1, e2, k1, k2, rho) +
                         b2_general(f, u0, e1, e2, k1, k2, rho);
      CHECK(sum == Approx(sat).margin(1e-8));
    }
  }
}

TEST_CASE("general switch saturation limits") {
  const FluxFunction f = FluxFunction::quartic();
  const Kernel k = Kernel::gaussian(1.0);
  const double sat = switch_saturation(f, 0.0, 1.0, 1.0);
  CHECK(sat == Approx(14.0));
  CHECK(b1_general(f, 0.0, 1.0, 1.0, k, k, 25.0) == Approx(sat).margin(1e-8));
  CHECK(b1_general(f, 0.0, 1.0, 1.0, k, k, -25.0) == Approx(0.0).margin(1e-8));
  CHECK(b2_general(f, 0.0, 1.0, 1.0, k, k, 25.0) == Approx(0.0).margin(1e-8));
}

TEST_CASE("symmetric unit configuration splits the quadratic sum equally") {
  // sum = f(2) - 2 f(1) + f(0) = 2 for f = u^2, shared half-and-half at
  // rho = 0 by symmetry.
  const FluxFunction f = FluxFunction::quadratic();
  const Kernel g = Kernel::gaussian(1.0);
  CHECK(b2_general(f, 0.0, 1.0, 1.0, g, g, 0.0) == Approx(1.0).margin(1e-9));
  CHECK(b1_general(f, 0.0, 1.0, 1.0, g, g, 0.0) == Approx(1.0).margin(1e-9));
}

TEST_CASE("translating a kernel translates the switch") {
  const Kernel k1 = Kernel::gaussian(1.0);
  const Kernel k2 = Kernel::bump(1.0);
  const double s = 0.6;
  const Kernel shifted = k2.shifted(s);
  for (double rho : {-1.0, 0.0, 0.5, 2.0})
    CHECK(b1_hopf(k1, shifted, rho) ==
          Approx(b1_hopf(k1, k2, rho - s)).margin(1e-8));
}

TEST_CASE("switch table construction") {
  const Kernel g = Kernel::gaussian(1.0);

  SECTION("requires enough nodes") {
    CHECK_THROWS_AS(build_switch_table_hopf(g, g, 0.0, 32),
                    std::invalid_argument);
  }

  SECTION("an explicit range that fails to saturate is an error") {
    CHECK_THROWS_AS(build_switch_table_hopf(g, g, 0.5, 257), numeric_error);
  }

  SECTION("nodes are monotone and saturate") {
    const SwitchTable t = build_switch_table_hopf(g, g, 0.0, 257);
    const auto& b1 = t.b1_values();
    for (std::size_t i = 0; i + 1 < b1.size(); ++i)
      CHECK(b1[i + 1] >= b1[i]);
    CHECK(std::abs(b1.front() - t.saturation_lo()) < 1e-8);
    CHECK(std::abs(b1.back() - t.saturation_hi()) < 1e-8);
    CHECK(t(0.0) == Approx(0.5).margin(1e-9));
  }

  SECTION("off-grid interpolation stays within 1e-7 of the quadrature") {
    const FluxFunction f = FluxFunction::quartic();
    const SwitchTable t = build_switch_table(f, 0.0, 1.0, 1.0, g, g);
    for (double rho : linspace(-0.95 * t.rho_max(), 0.95 * t.rho_max(), 23)) {
      const double probe = rho + 0.37 * (t.rho_grid()[1] - t.rho_grid()[0]);
      CHECK(t(probe) == Approx(t.exact(probe)).margin(1e-7));
    }
  }
}

TEST_CASE("switch root solving") {
  const Kernel g = Kernel::gaussian(1.0);

  SECTION("symmetric pair has the root at zero") {
    const SwitchTable t = build_switch_table_hopf(g, g, 0.0, 513);
    CHECK(std::abs(solve_switch_root(t, 0.5)) < 1e-9);
  }

  SECTION("shifting one kernel moves the root by the shift") {
    const double s = 0.9;
    const SwitchTable t = build_switch_table_hopf(g, g.shifted(s), 0.0, 513);
    CHECK(solve_switch_root(t, 0.5) == Approx(s).margin(1e-8));
  }

  SECTION("quartic merged-speed target") {
    const FluxFunction f = FluxFunction::quartic();
    const SwitchTable t = build_switch_table(f, 0.0, 1.0, 1.0, g, g, 0.0, 1025);
    const double target = ((f(2.0) - f(1.0)) - (f(1.0) - f(0.0))) / 2.0;
    CHECK(target == Approx(7.0));
    const double root = solve_switch_root(t, target);
    CHECK(b1_general(f, 0.0, 1.0, 1.0, g, g, root) ==
          Approx(target).margin(1e-8));
  }

  SECTION("targets outside the open range are rejected") {
    const SwitchTable t = build_switch_table_hopf(g, g, 0.0, 257);
    CHECK_THROWS_AS(solve_switch_root(t, 1.0), numeric_error);
    CHECK_THROWS_AS(solve_switch_root(t, -0.1), numeric_error);
  }
}
