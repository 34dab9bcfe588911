#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "lwxi/quadrature.hpp"

using namespace lwxi;

TEST_CASE("gk15 is exact for low-degree polynomials") {
  auto quartic = [](double x) { return x * x * x * x; };
  const auto r = gk15(quartic, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(r.error < 1e-14);
}

TEST_CASE("adaptive quadrature on smooth integrands") {
  CHECK(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("adaptive quadrature on an oscillatory integrand") {
  // int_0^10pi sin(25 x) dx = (1 - cos(250 pi)) / 25 = 0
  const double v =
      integrate_adaptive([](double x) { return std::sin(25.0 * x); }, 0.0, 10.0 * M_PI);
  CHECK(std::fabs(v) < 1e-12);
  // and with a detuned endpoint the exact value is known
  const double w =
      integrate_adaptive([](double x) { return std::sin(25.0 * x); }, 0.0, 1.0);
  CHECK(w == doctest::Approx((1.0 - std::cos(25.0)) / 25.0).epsilon(1e-12));
}

TEST_CASE("vector and complex valued integrands") {
  auto fv = [](double x) { return Vec2{std::cos(x), std::sin(x)}; };
  const Vec2 v = integrate_adaptive(fv, 0.0, M_PI / 2.0);
  CHECK(v.x == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(v.y == doctest::Approx(1.0).epsilon(1e-13));

  auto fc = [](double x) { return std::exp(std::complex<double>(0.0, x)); };
  const std::complex<double> c = integrate_adaptive(fc, 0.0, 2.0 * M_PI);
  CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("cumulative integral matches the antiderivative at the nodes") {
  std::vector<double> nodes;
  for (int i = 0; i <= 40; ++i) nodes.push_back(-2.0 + 0.17 * i);
  const auto cum =
      cumulative_integral([](double x) { return std::cos(x); }, nodes, 0.0);
  REQUIRE(cum.size() == nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    CHECK(cum[i] ==
          doctest::Approx(std::sin(nodes[i]) - std::sin(nodes.front())).epsilon(1e-12));
}
