#ifndef LWXI_QUADRATURE_HPP
#define LWXI_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "lwxi/errors.hpp"
#include "lwxi/vec.hpp"

namespace lwxi {

inline double quad_norm(double v) { return std::fabs(v); }
inline double quad_norm(const Vec2& v) { return norm(v); }
inline double quad_norm(const std::complex<double>& v) { return std::abs(v); }

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK values),
// abscissae in [0,1) for the positive half.
inline constexpr double kGk15X[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGk15Wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGk15Wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace detail

template <class F, class T = std::decay_t<decltype(std::declval<F&>()(0.0))>>
struct GkResult {
  T value{};
  double error = 0.0;
};

// Single 15-point Gauss-Kronrod panel on [a, b]; error from the embedded
// 7-point Gauss value.
template <class F>
auto gk15(F&& f, double a, double b) {
  using T = std::decay_t<decltype(f(a))>;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T kron{};
  T gauss{};
  for (int i = 0; i < 8; ++i) {
    const double dx = h * detail::kGk15X[i];
    T v = f(c - dx);
    if (i < 7) v += f(c + dx);
    kron += detail::kGk15Wk[i] * v;
    if (i % 2 == 1) gauss += detail::kGk15Wg[i / 2] * v;
  }
  kron *= h;
  gauss *= h;
  GkResult<F> r;
  r.value = kron;
  r.error = quad_norm(kron - gauss);
  return r;
}

// Adaptive bisection driver.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, double rtol = 1e-12,
                        double atol = 1e-14, int max_depth = 48) {
  using T = std::decay_t<decltype(f(a))>;
  struct Seg {
    double a, b;
    T value;
    double error;
    int depth;
  };
  auto first = gk15(f, a, b);
  std::vector<Seg> stack{{a, b, first.value, first.error, 0}};
  T total{};
  double total_norm_hint = quad_norm(first.value);
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    const double tol = atol + rtol * std::max(total_norm_hint, quad_norm(s.value));
    if (s.error <= tol || s.depth >= max_depth || s.b - s.a < 1e-14 * (std::fabs(a) + std::fabs(b) + 1.0)) {
      total += s.value;
      continue;
    }
    const double m = 0.5 * (s.a + s.b);
    auto left = gk15(f, s.a, m);
    auto right = gk15(f, m, s.b);
    stack.push_back({s.a, m, left.value, left.error, s.depth + 1});
    stack.push_back({m, s.b, right.value, right.error, s.depth + 1});
  }
  return total;
}

// Cumulative integral of f at the given sorted nodes, starting from `init`
// at nodes.front(). Each inter-node panel is integrated adaptively.
template <class F, class T>
std::vector<T> cumulative_integral(F&& f, const std::vector<double>& nodes, T init,
                                   double rtol = 1e-12, double atol = 1e-14) {
  std::vector<T> out;
  out.reserve(nodes.size());
  out.push_back(init);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    init += integrate_adaptive(f, nodes[i - 1], nodes[i], rtol, atol);
    out.push_back(init);
  }
  return out;
}

}  // namespace lwxi

#endif
