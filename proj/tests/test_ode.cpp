#include <doctest.h>

#include <cmath>

#include "lwxi/ode.hpp"

using namespace lwxi;

TEST_CASE("exponential decay with dense output") {
  auto rhs = [](double, const double* y, double* d) { d[0] = -y[0]; };
  const double y0 = 1.0;
  OdeOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-12;
  const OdeSolution sol = integrate_ode(1, rhs, &y0, 0.0, 5.0, opts);
  CHECK(sol.t_begin() == 0.0);
  CHECK(sol.t_end() == 5.0);
  CHECK(sol.step_count() > 0);
  CHECK(sol.rhs_evaluations() > sol.step_count());
  for (double t = 0.05; t < 5.0; t += 0.37)
    CHECK(sol.eval_component(t, 0) == doctest::Approx(std::exp(-t)).epsilon(1e-9));
}

TEST_CASE("harmonic oscillator stays on the circle") {
  auto rhs = [](double, const double* y, double* d) {
    d[0] = y[1];
    d[1] = -y[0];
  };
  const double y0[2] = {1.0, 0.0};
  OdeOptions opts;
  opts.rtol = 1e-11;
  opts.atol = 1e-13;
  const OdeSolution sol = integrate_ode(2, rhs, y0, 0.0, 20.0 * M_PI, opts);
  const auto y = sol.eval(20.0 * M_PI);
  CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::fabs(y[1]) < 1e-8);
  for (double t = 0.1; t < 60.0; t += 3.1) {
    const auto v = sol.eval(t);
    CHECK(v[0] * v[0] + v[1] * v[1] == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("breakpoints preserve order across a discontinuous rhs") {
  // y' = 0 for t < 1, y' = 1 for t >= 1; exact y(2) = 1
  auto rhs = [](double t, const double*, double* d) { d[0] = t < 1.0 ? 0.0 : 1.0; };
  const double y0 = 0.0;
  OdeOptions opts;
  opts.rtol = 1e-12;
  opts.atol = 1e-14;
  opts.breakpoints = {1.0};
  const OdeSolution sol = integrate_ode(1, rhs, &y0, 0.0, 2.0, opts);
  CHECK(sol.eval_component(2.0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.eval_component(1.0, 0) == doctest::Approx(0.0));
  CHECK(sol.eval_component(1.5, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("stop event terminates at the crossing") {
  auto rhs = [](double, const double*, double* d) { d[0] = 1.0; };
  const double y0 = 0.0;
  OdeOptions opts;
  opts.stop_event = [](double, const double* y) { return 0.5 - y[0]; };
  const OdeSolution sol = integrate_ode(1, rhs, &y0, 0.0, 10.0, opts);
  CHECK(sol.stopped_by_event());
  CHECK(sol.t_end() == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("max_step is honored by accuracy on a stiff-ish forcing") {
  // sharp gaussian forcing; without small steps the quadrature would miss it
  auto rhs = [](double t, const double*, double* d) {
    d[0] = std::exp(-(t - 5.0) * (t - 5.0) * 100.0);
  };
  const double y0 = 0.0;
  OdeOptions opts;
  opts.rtol = 1e-10;
  opts.atol = 1e-13;
  opts.max_step = 0.05;
  const OdeSolution sol = integrate_ode(1, rhs, &y0, 0.0, 10.0, opts);
  CHECK(sol.eval_component(10.0, 0) ==
        doctest::Approx(std::sqrt(M_PI) / 10.0).epsilon(1e-8));
}
