#include "lwxi/plasma.hpp"

#include <algorithm>
#include <cmath>

#include "lwxi/errors.hpp"
#include "lwxi/interp.hpp"
#include "lwxi/parallel.hpp"
#include "lwxi/quadrature.hpp"
#include "lwxi/static_field.hpp"

namespace lwxi {

namespace {

// Positions of local maxima of f on [a, b], refined by golden-section search
// inside each bracketing triple of a uniform scan.
std::vector<double> find_maxima(const std::function<double(double)>& f, double a,
                                double b, std::size_t n) {
  std::vector<double> out;
  if (!(b > a) || n < 3) return out;
  std::vector<double> xs(n), fs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    fs[i] = f(xs[i]);
  }
  constexpr double kGold = 0.381966011250105;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(fs[i] > fs[i - 1] && fs[i] >= fs[i + 1])) continue;
    double lo = xs[i - 1], hi = xs[i + 1];
    double x1 = lo + kGold * (hi - lo), x2 = hi - kGold * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-11 * (std::fabs(hi) + 1.0)) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = hi - kGold * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = lo + kGold * (hi - lo);
        f1 = f(x1);
      }
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

}  // namespace

InitialDensity InitialDensity::step(double n0_per_um3, double edge_um) {
  if (!(n0_per_um3 > 0.0)) throw ConfigError("density: n0 must be positive");
  InitialDensity d;
  d.step_ = true;
  d.n0_ = n0_per_um3;
  d.edge_ = edge_um;
  return d;
}

InitialDensity InitialDensity::sampled(std::vector<double> z_um,
                                       std::vector<double> n_per_um3) {
  const std::size_t n = z_um.size();
  if (n < 2 || n_per_um3.size() != n)
    throw ConfigError("density: need >= 2 matching samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(z_um[i] > z_um[i - 1])) throw ConfigError("density: z must increase");
  for (double v : n_per_um3)
    if (v < 0.0) throw ConfigError("density: negative sample");
  InitialDensity d;
  d.step_ = false;
  d.edge_ = z_um.front();
  d.z_ = std::move(z_um);
  d.n_ = std::move(n_per_um3);
  d.cum_.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    d.cum_[i] = d.cum_[i - 1] +
                0.5 * (d.n_[i] + d.n_[i - 1]) * (d.z_[i] - d.z_[i - 1]);
  return d;
}

double InitialDensity::density(double z) const {
  if (step_) return z >= edge_ ? n0_ : 0.0;
  if (z <= z_.front() || z >= z_.back())
    return z == z_.front() ? n_.front() : (z == z_.back() ? n_.back() : 0.0);
  auto it = std::upper_bound(z_.begin(), z_.end(), z);
  const std::size_t i = static_cast<std::size_t>(it - z_.begin()) - 1;
  const double t = (z - z_[i]) / (z_[i + 1] - z_[i]);
  return n_[i] + t * (n_[i + 1] - n_[i]);
}

double InitialDensity::cumulative(double z) const {
  if (step_) return z > edge_ ? n0_ * (z - edge_) : 0.0;
  if (z <= z_.front()) return 0.0;
  if (z >= z_.back()) return cum_.back();
  auto it = std::upper_bound(z_.begin(), z_.end(), z);
  const std::size_t i = static_cast<std::size_t>(it - z_.begin()) - 1;
  const double h = z - z_[i];
  const double t = h / (z_[i + 1] - z_[i]);
  const double n_here = n_[i] + t * (n_[i + 1] - n_[i]);
  return cum_[i] + 0.5 * (n_[i] + n_here) * h;
}

double InitialDensity::coupling() const {
  if (!step_) throw NumericalError("coupling: defined for step targets only");
  return 4.0 * M_PI * kClassicalElectronRadiusUm * n0_;
}

PlasmaStepSolution::PlasmaStepSolution(OdeSolution sol, Pump pump, double coupling)
    : sol_(std::move(sol)), pump_(std::move(pump)), m_(coupling) {}

double PlasmaStepSolution::gamma(double xi) const {
  const double sv = s(xi);
  require_valid_s(sv, xi);
  return (1.0 + v(xi) + sv * sv) / (2.0 * sv);
}

double PlasmaStepSolution::invariant(double xi) const {
  const double d = delta(xi);
  return gamma(xi) + 0.5 * m_ * d * d;
}

PlasmaStepSolution solve_step_cauchy(const Pump& pump, double coupling, double xi_end,
                                     const IntegrateOptions& opts) {
  if (!(coupling > 0.0)) throw ConfigError("step solution: coupling must be positive");
  if (!(xi_end > 0.0)) throw NumericalError("step solution: empty xi span");
  auto rhs = [&pump, coupling](double xi, const double* y, double* dy) {
    const double s = y[1];
    require_valid_s(s, xi);
    const double v = norm2(pump.alpha(xi));
    dy[0] = (1.0 + v) / (2.0 * s * s) - 0.5;
    dy[1] = coupling * y[0];
  };
  OdeOptions oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  const double k = pump.carrier_k();
  oo.max_step = opts.max_step > 0.0 ? opts.max_step
               : (k > 0.0 ? 2.0 * M_PI / k / 6.0 : xi_end / 64.0);
  for (double b : pump.breakpoints())
    if (b > 0.0 && b < xi_end) oo.breakpoints.push_back(b);
  const double y0[2] = {0.0, 1.0};
  return PlasmaStepSolution(integrate_ode(2, rhs, y0, 0.0, xi_end, oo), pump, coupling);
}

PeriodEstimate period_estimate(const PlasmaStepSolution& sol, double search_from) {
  PeriodEstimate pe;
  const double end = sol.xi_end();
  if (!(search_from < end)) throw NumericalError("period: search window is empty");

  auto s_of = [&sol](double xi) { return sol.s(xi); };
  const auto maxima = find_maxima(s_of, search_from, end, 8192);
  if (maxima.size() >= 2) pe.measured = maxima[1] - maxima[0];

  const double c = sol.invariant(search_from);
  const double vc = sol.v(search_from);
  pe.invariant = c;
  const double disc = c * c - 1.0 - vc;
  if (disc > 0.0) {
    const double h = std::sqrt(disc);
    pe.s_min = c - h;
    pe.s_max = c + h;
    const double m = sol.coupling();
    pe.quadrature = 2.0 / std::sqrt(m) *
                    integrate_adaptive(
                        [c, h](double th) { return std::sqrt(c - h * std::cos(th)); },
                        0.0, M_PI, 1e-12, 1e-14);
  }
  return pe;
}

std::vector<PlasmaMember> solve_family(const Pump& pump, const InitialDensity& density,
                                       const std::vector<double>& z_inits,
                                       const FamilyOptions& opts) {
  if (!(opts.xi_end > 0.0)) throw NumericalError("family: empty xi span");
  std::vector<PlasmaMember> out(z_inits.size());
  const double four_pi_re = 4.0 * M_PI * kClassicalElectronRadiusUm;
  parallel_for(
      z_inits.size(),
      [&](std::size_t i) {
        const double z_init = z_inits[i];
        // each electron carries its own sheet field, referenced to its
        // initial column depth
        const double cum0 = density.cumulative(z_init);
        auto e_z = [&density, cum0, four_pi_re](double z) {
          return -four_pi_re * (density.cumulative(z) - cum0);
        };
        XiState init;
        init.z = z_init;
        Trajectory traj = integrate_general(
            init, pump, StaticField::axial(e_z, opts.b_static), opts.xi_end,
            opts.integrate);

        PlasmaMember& m = out[i];
        m.z_init = z_init;
        m.traj = traj;

        const double end = traj.xi_end();
        const std::size_t n = 8192;
        double z_min = z_init, g_max = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double xi = traj.xi_begin() +
                            (end - traj.xi_begin()) * static_cast<double>(j) /
                                static_cast<double>(n - 1);
          const XiState st = traj.state(xi);
          z_min = std::min(z_min, st.z);
          g_max = std::max(g_max, derive_lab(st).gamma);
        }
        m.max_gamma = g_max;
        m.valid = traj.stop_reason() == StopReason::Completed &&
                  z_min >= density.edge() - 1e-9;

        if (opts.search_from < end) {
          auto s_of = [&traj](double xi) { return traj.state(xi).s; };
          const auto maxima = find_maxima(s_of, opts.search_from, end, 4096);
          if (maxima.size() >= 2) m.xi_h = maxima[1] - maxima[0];
        }
      },
      opts.threads);
  return out;
}

ResidualReport aperp_residual(const PlasmaStepSolution& sol, const ResidualOptions& opts) {
  if (!(opts.ct_max > 0.0)) throw ConfigError("residual: ct_max must be positive");
  const double xi_top = sol.xi_end();
  const double m = sol.coupling();

  // Caches on a fine xi grid. The rest-frame start ties u_perp = -alpha, so
  // the transverse-current kernel is G' = -alpha / s^2 (the Jacobian of the
  // Lagrangian map absorbs one factor gamma / s^2).
  const std::size_t n = 4096;
  std::vector<double> xi(n), q(n), gx(n, 0.0), gy(n, 0.0);
  std::vector<Vec2> integrand(n);
  for (std::size_t i = 0; i < n; ++i) {
    xi[i] = xi_top * static_cast<double>(i) / static_cast<double>(n - 1);
    const double s = sol.s(xi[i]);
    q[i] = xi[i] + sol.delta(xi[i]);
    integrand[i] = -1.0 / (s * s) * sol.pump().alpha(xi[i]);
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double h = xi[i] - xi[i - 1];
    gx[i] = gx[i - 1] + 0.5 * h * (integrand[i].x + integrand[i - 1].x);
    gy[i] = gy[i - 1] + 0.5 * h * (integrand[i].y + integrand[i - 1].y);
  }
  PchipInterpolant g_x(xi, gx), g_y(xi, gy);
  PchipInterpolant xi_of_q(q, xi);  // q = xi + Delta is strictly increasing

  auto g_at = [&](double x) {
    x = std::clamp(x, 0.0, xi_top);
    return Vec2{g_x(x), g_y(x)};
  };
  auto h_bound = [&](double s) {  // xi reached by the electron first hit at q = s
    if (s <= 0.0) return 0.0;
    if (s >= q.back()) return xi_top;
    return xi_of_q(s);
  };

  // 1D wave-operator response to the step-target transverse current,
  // midpoint rule in the lab-time layer variable.
  auto rhs_at = [&](double ct, double z) {
    const std::size_t steps =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ct / opts.s_step)));
    const double h = ct / static_cast<double>(steps);
    Vec2 acc;
    for (std::size_t j = 0; j < steps; ++j) {
      const double s = (static_cast<double>(j) + 0.5) * h;
      const double lo = std::max(0.0, 2.0 * s - ct - z);
      const double hi = std::min(ct - z, h_bound(s));
      if (hi > lo) acc += g_at(hi) - g_at(lo);
    }
    return norm(0.5 * m * h * acc);
  };

  ResidualReport rep;
  for (std::size_t i = 0; i < n; ++i)
    rep.alpha_peak = std::max(rep.alpha_peak, norm(sol.pump().alpha(xi[i])));
  if (rep.alpha_peak <= 0.0) throw NumericalError("residual: pump has no alpha");

  const std::size_t g = std::max<std::size_t>(2, opts.grid);
  for (std::size_t i = 1; i <= g; ++i) {
    const double ct = opts.ct_max * static_cast<double>(i) / static_cast<double>(g);
    for (std::size_t j = 0; j < g; ++j) {
      const double z = ct * static_cast<double>(j) / static_cast<double>(g - 1);
      const double r = rhs_at(ct, z);
      rep.max_rhs = std::max(rep.max_rhs, r);
      rep.samples.push_back({ct, z, r / rep.alpha_peak});
    }
  }
  rep.ratio = rep.max_rhs / rep.alpha_peak;
  return rep;
}

}  // namespace lwxi
