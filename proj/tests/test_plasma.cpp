#include <doctest.h>

#include <cmath>
#include <vector>

#include "lwxi/plasma.hpp"

using namespace lwxi;

namespace {
const double kK = 2.0 * M_PI / 0.8;

Pump fig_pump(double a0 = 15.0, double phi = 0.0) {
  return Pump::modulated(Envelope::gaussian(a0 / 0.8, 20.0, 22.5), kK, phi, 1.0, 0.0,
                         std::make_pair(0.0, 45.0));
}
}  // namespace

TEST_CASE("step density and the coupling constant") {
  const double n0 = 2e18 * 1e-12;  // 1/cm^3 -> 1/um^3
  const InitialDensity d = InitialDensity::step(n0);
  CHECK(d.is_step());
  CHECK(d.density(5.0) == doctest::Approx(n0));
  CHECK(d.density(-1.0) == 0.0);
  CHECK(d.cumulative(10.0) == doctest::Approx(10.0 * n0));
  CHECK(d.cumulative(-3.0) == 0.0);
  CHECK(d.coupling() == doctest::Approx(0.070822).epsilon(1e-4));
}

TEST_CASE("sampled density integrates its profile") {
  std::vector<double> z{0.0, 1.0, 2.0, 3.0};
  std::vector<double> n{0.0, 2.0, 2.0, 0.0};
  const InitialDensity d = InitialDensity::sampled(z, n);
  CHECK_FALSE(d.is_step());
  CHECK(d.cumulative(3.0) == doctest::Approx(4.0));
  CHECK(d.cumulative(1.5) == doctest::Approx(2.0));
  CHECK_THROWS(d.coupling());
}

TEST_CASE("zero pump leaves the step target at rest") {
  const auto sol = solve_step_cauchy(Pump::zero(), 0.0708, 50.0);
  for (double xi : {1.0, 17.0, 50.0}) {
    CHECK(std::fabs(sol.delta(xi)) < 1e-12);
    CHECK(sol.s(xi) == doctest::Approx(1.0));
    CHECK(sol.gamma(xi) == doctest::Approx(1.0));
  }
}

TEST_CASE("strong-pump step problem: period, invariant, periodicity") {
  const double M = 0.0708225650;
  const auto sol = solve_step_cauchy(fig_pump(), M, 200.0);
  const PeriodEstimate pe = period_estimate(sol, 50.0);
  // the two period estimates are independent (maxima vs energy quadrature)
  CHECK(pe.measured == doctest::Approx(pe.quadrature).epsilon(1e-6));
  CHECK(pe.s_max > 2.0);
  CHECK(pe.s_min < 0.5);
  CHECK(pe.s_min > 0.0);
  CHECK(pe.invariant > 1.0);

  // invariant drift over one post-pulse cycle
  const double c1 = sol.invariant(60.0);
  const double c2 = sol.invariant(60.0 + pe.measured);
  CHECK(std::fabs(c2 - c1) < 1e-8);

  // the motion is periodic after the pulse
  for (double xi = 50.0; xi < 120.0; xi += 7.0)
    CHECK(std::fabs(sol.s(xi + pe.measured) - sol.s(xi)) < 1e-3 * pe.s_max);
}

TEST_CASE("weak-field period approaches the linear limit") {
  const double M = 0.0708225650;
  const Pump weak = Pump::modulated(Envelope::gaussian(0.15 / 0.8, 20.0, 22.5), kK, 0.0,
                                    1.0, 0.0, std::make_pair(0.0, 45.0));
  const auto sol = solve_step_cauchy(weak, M, 300.0);
  const PeriodEstimate pe = period_estimate(sol, 50.0);
  CHECK(pe.measured == doctest::Approx(2.0 * M_PI / std::sqrt(M)).epsilon(0.02));
}

TEST_CASE("linear period scales as 1 / sqrt(M)") {
  const Pump weak = Pump::modulated(Envelope::gaussian(0.15 / 0.8, 20.0, 22.5), kK, 0.0,
                                    1.0, 0.0, std::make_pair(0.0, 45.0));
  const double M = 0.02;
  const auto s1 = solve_step_cauchy(weak, M, 400.0);
  const auto s2 = solve_step_cauchy(weak, 2.0 * M, 400.0);
  const double p1 = period_estimate(s1, 50.0).measured;
  const double p2 = period_estimate(s2, 50.0).measured;
  CHECK(p1 / p2 == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
}

TEST_CASE("carrier phase barely moves s but not much else changes") {
  const double M = 0.0708225650;
  const auto s0 = solve_step_cauchy(fig_pump(15.0, 0.0), M, 120.0);
  const auto s1 = solve_step_cauchy(fig_pump(15.0, M_PI / 2.0), M, 120.0);
  double smax0 = 0.0, smax1 = 0.0;
  for (double xi = 0.0; xi <= 120.0; xi += 0.01) {
    smax0 = std::max(smax0, s0.s(xi));
    smax1 = std::max(smax1, s1.s(xi));
  }
  CHECK(std::fabs(smax1 - smax0) / smax0 < 0.01);
}

TEST_CASE("family members deep in the target follow the universal solution") {
  const double n0 = 2e18 * 1e-12;
  const InitialDensity density = InitialDensity::step(n0);
  const Pump pump = fig_pump();
  const double M = density.coupling();
  const auto uni = solve_step_cauchy(pump, M, 80.0);

  FamilyOptions fo;
  fo.xi_end = 80.0;
  fo.search_from = 50.0;
  fo.threads = 2;
  const std::vector<double> zs{20.0, 45.0};
  const auto members = solve_family(pump, density, zs, fo);
  REQUIRE(members.size() == zs.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto& m = members[i];
    CHECK(m.valid);
    CHECK(m.z_init == doctest::Approx(zs[i]));
    for (double xi : {10.0, 40.0, 75.0}) {
      const XiState st = m.traj.state(xi);
      CHECK(std::fabs(st.z - m.z_init - uni.delta(xi)) < 1e-3);
      CHECK(std::fabs(st.s - uni.s(xi)) < 1e-3);
    }
  }
}

TEST_CASE("transverse-potential residual") {
  const double M = 0.0708225650;
  const auto sol = solve_step_cauchy(fig_pump(), M, 200.0);
  ResidualOptions ro;
  ro.ct_max = 60.0;
  ro.grid = 24;
  const ResidualReport r1 = aperp_residual(sol, ro);
  CHECK(r1.alpha_peak == doctest::Approx(15.0 / 0.8 / kK).epsilon(5e-3));
  CHECK(r1.ratio > 0.0);
  CHECK(r1.ratio < 1.0);
  CHECK(r1.samples.size() > 0);

  // halving the quadrature step moves the answer by well under 5%
  ro.s_step = 0.025;
  const ResidualReport r2 = aperp_residual(sol, ro);
  CHECK(std::fabs(r2.ratio - r1.ratio) < 0.05 * r1.ratio);
}

TEST_CASE("residual of a zero pump is rejected, not divided by zero") {
  const auto sol = solve_step_cauchy(Pump::zero(), 0.0708, 100.0);
  ResidualOptions ro;
  ro.ct_max = 40.0;
  ro.grid = 8;
  CHECK_THROWS_AS(aperp_residual(sol, ro), NumericalError);
}
