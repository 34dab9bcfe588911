#include "lwxi/ode.hpp"

#include <algorithm>
#include <cmath>

#include "lwxi/errors.hpp"

namespace lwxi {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

}  // namespace

std::size_t OdeSolution::locate(double t) const {
  if (ts_.size() < 2) return 0;
  auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - ts_.begin());
  if (i == 0) return 0;
  if (i >= ts_.size()) return ts_.size() - 2;
  return i - 1;
}

void OdeSolution::eval(double t, double* out) const {
  const std::size_t i = locate(t);
  const double t0 = ts_[i], t1 = ts_[i + 1];
  const double h = t1 - t0;
  const double th = (t - t0) / h;
  const double th1 = 1.0 - th;
  const double* rc = &rcont_[5 * static_cast<std::size_t>(dim_) * i];
  for (int j = 0; j < dim_; ++j) {
    const double* r = rc + 5 * j;
    out[j] = r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
  }
}

std::vector<double> OdeSolution::eval(double t) const {
  std::vector<double> out(static_cast<std::size_t>(dim_));
  eval(t, out.data());
  return out;
}

double OdeSolution::eval_component(double t, int comp) const {
  const std::size_t i = locate(t);
  const double t0 = ts_[i], t1 = ts_[i + 1];
  const double th = (t - t0) / (t1 - t0);
  const double th1 = 1.0 - th;
  const double* r = &rcont_[5 * static_cast<std::size_t>(dim_) * i] + 5 * comp;
  return r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
}

OdeSolution integrate_ode(int dim, const OdeRhs& rhs, const double* y0, double t0,
                          double t1, const OdeOptions& opts) {
  if (t1 <= t0) throw NumericalError("ode: t1 must exceed t0");
  const std::size_t n = static_cast<std::size_t>(dim);

  OdeSolution sol;
  sol.dim_ = dim;
  sol.t_begin_ = t0;
  sol.ts_.push_back(t0);

  std::vector<double> y(y0, y0 + n), ynew(n), ytmp(n), err(n);
  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

  // pending forced stops, ascending
  std::vector<double> tstops;
  for (double b : opts.breakpoints)
    if (b > t0 && b < t1) tstops.push_back(b);
  std::sort(tstops.begin(), tstops.end());
  tstops.push_back(t1);
  std::size_t next_stop = 0;

  rhs(t0, y.data(), k1.data());
  sol.n_rhs_ = 1;

  auto error_norm = [&](const std::vector<double>& e, const std::vector<double>& ya,
                        const std::vector<double>& yb) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double sc = opts.atol + opts.rtol * std::max(std::fabs(ya[j]), std::fabs(yb[j]));
      const double q = e[j] / sc;
      acc += q * q;
    }
    return std::sqrt(acc / static_cast<double>(n));
  };

  // initial step size: conservative fraction of the span or the user guess
  double h = opts.initial_step > 0.0 ? opts.initial_step
                                     : std::min({(t1 - t0) / 100.0, opts.max_step, 1.0});
  double t = t0;
  bool first_of_segment = true;

  double prev_event = 1.0;
  if (opts.stop_event) prev_event = opts.stop_event(t0, y.data());

  std::size_t steps = 0;
  while (t < t1) {
    if (++steps > opts.max_steps) throw NumericalError("ode: step limit exceeded");
    const double t_target = tstops[next_stop];
    h = std::min({h, opts.max_step, t_target - t});
    if (h < 1e-14 * (std::fabs(t) + 1.0)) throw NumericalError("ode: step size underflow");

    // stages
    for (std::size_t j = 0; j < n; ++j) ytmp[j] = y[j] + h * a21 * k1[j];
    rhs(t + c2 * h, ytmp.data(), k2.data());
    for (std::size_t j = 0; j < n; ++j) ytmp[j] = y[j] + h * (a31 * k1[j] + a32 * k2[j]);
    rhs(t + c3 * h, ytmp.data(), k3.data());
    for (std::size_t j = 0; j < n; ++j)
      ytmp[j] = y[j] + h * (a41 * k1[j] + a42 * k2[j] + a43 * k3[j]);
    rhs(t + c4 * h, ytmp.data(), k4.data());
    for (std::size_t j = 0; j < n; ++j)
      ytmp[j] = y[j] + h * (a51 * k1[j] + a52 * k2[j] + a53 * k3[j] + a54 * k4[j]);
    rhs(t + c5 * h, ytmp.data(), k5.data());
    for (std::size_t j = 0; j < n; ++j)
      ytmp[j] = y[j] + h * (a61 * k1[j] + a62 * k2[j] + a63 * k3[j] + a64 * k4[j] + a65 * k5[j]);
    rhs(t + h, ytmp.data(), k6.data());
    for (std::size_t j = 0; j < n; ++j)
      ynew[j] = y[j] + h * (b1 * k1[j] + b3 * k3[j] + b4 * k4[j] + b5 * k5[j] + b6 * k6[j]);
    rhs(t + h, ynew.data(), k7.data());
    sol.n_rhs_ += 6;

    for (std::size_t j = 0; j < n; ++j)
      err[j] = h * (e1 * k1[j] + e3 * k3[j] + e4 * k4[j] + e5 * k5[j] + e6 * k6[j] + e7 * k7[j]);
    const double en = error_norm(err, y, ynew);

    if (en > 1.0) {  // reject
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      continue;
    }

    // accept: dense output coefficients
    const std::size_t base = sol.rcont_.size();
    sol.rcont_.resize(base + 5 * n);
    for (std::size_t j = 0; j < n; ++j) {
      double* r = &sol.rcont_[base + 5 * j];
      const double dy = ynew[j] - y[j];
      const double bspl = h * k1[j] - dy;
      r[0] = y[j];
      r[1] = dy;
      r[2] = bspl;
      r[3] = dy - h * k7[j] - bspl;
      r[4] = h * (d1 * k1[j] + d3 * k3[j] + d4 * k4[j] + d5 * k5[j] + d6 * k6[j] + d7 * k7[j]);
    }
    const double t_new = (t_target - (t + h) < 1e-12 * std::fabs(t_target) + 1e-300)
                             ? t_target
                             : t + h;
    sol.ts_.push_back(t_new);

    if (opts.stop_event) {
      const double ev = opts.stop_event(t_new, ynew.data());
      if (ev <= 0.0 && prev_event > 0.0) {
        // bisect on the dense output of this step for the crossing
        double lo = t, hi = t_new;
        std::vector<double> ymid(n);
        for (int it = 0; it < 80 && hi - lo > 1e-13 * (std::fabs(hi) + 1.0); ++it) {
          const double mid = 0.5 * (lo + hi);
          sol.eval(mid, ymid.data());
          (opts.stop_event(mid, ymid.data()) > 0.0 ? lo : hi) = mid;
        }
        sol.ts_.back() = std::max(hi, t + 1e-13 * (std::fabs(t) + 1.0));
        sol.stopped_by_event_ = true;
        sol.t_end_ = sol.ts_.back();
        return sol;
      }
      prev_event = ev;
    }

    const bool hit_stop = (t_new == t_target);
    t = t_new;
    y.swap(ynew);
    if (hit_stop && next_stop + 1 < tstops.size()) {
      ++next_stop;
      first_of_segment = true;
    }
    if (hit_stop || first_of_segment) {
      rhs(t, y.data(), k1.data());  // fresh derivative across a breakpoint
      ++sol.n_rhs_;
      first_of_segment = false;
    } else {
      k1.swap(k7);  // FSAL
    }

    double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.2);
    h *= std::min(5.0, std::max(0.2, fac));
  }

  sol.t_end_ = t;
  return sol;
}

}  // namespace lwxi

