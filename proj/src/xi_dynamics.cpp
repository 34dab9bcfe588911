#include "lwxi/xi_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lwxi/errors.hpp"
#include "lwxi/quadrature.hpp"

namespace lwxi {

namespace {

// Dense ODE solution plus a map from the raw state vector to an XiState.
class OdeEval : public Trajectory::Eval {
 public:
  using Mapper = std::function<XiState(double, const double*)>;
  OdeEval(OdeSolution sol, Mapper map) : sol_(std::move(sol)), map_(std::move(map)) {}
  XiState state(double xi) const override {
    double y[8];
    sol_.eval(xi, y);
    return map_(xi, y);
  }

 private:
  OdeSolution sol_;
  Mapper map_;
};

double pick_max_step(const Pump& pump, const IntegrateOptions& opts, double span) {
  if (opts.max_step > 0.0) return opts.max_step;
  const double k = pump.carrier_k();
  if (k > 0.0) return 2.0 * M_PI / k / 6.0;
  return span / 16.0;
}

std::vector<double> clip_breakpoints(const Pump& pump, double a, double b) {
  std::vector<double> bp;
  for (double x : pump.breakpoints())
    if (x > a && x < b) bp.push_back(x);
  return bp;
}

}  // namespace

XiState Trajectory::state_at_time(double ct) const {
  double lo = xi_begin_, hi = xi_end_;
  const double t_lo = time_of(lo), t_hi = time_of(hi);
  if (ct < t_lo - 1e-9 || ct > t_hi + 1e-9)
    throw DomainError("state_at_time: ct outside the trajectory span");
  if (ct <= t_lo) return state(lo);
  if (ct >= t_hi) return state(hi);
  // ct(xi) is strictly increasing (d ct/d xi = gamma / s > 0); bisect, then
  // polish with a few Newton steps using dz/dxi from the state itself.
  for (int i = 0; i < 60 && hi - lo > 1e-14 * (std::fabs(hi) + 1.0); ++i) {
    const double mid = 0.5 * (lo + hi);
    (time_of(mid) < ct ? lo : hi) = mid;
  }
  double xi = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    const XiState st = state(xi);
    const LabKinematics lab = derive_lab(st);
    const double f = xi + st.z - ct;
    const double df = 1.0 + lab.dxdxi.z;
    const double step = f / df;
    xi -= step;
    xi = std::clamp(xi, xi_begin_, xi_end_);
    if (std::fabs(step) < 1e-15 * (std::fabs(xi) + 1.0)) break;
  }
  return state(xi);
}

Trajectory integrate_general(const XiState& init, const Pump& pump,
                             const StaticField& stat, double xi_end,
                             const IntegrateOptions& opts) {
  require_valid_s(init.s, init.xi);
  if (!(xi_end > init.xi)) throw NumericalError("integrate_general: empty xi span");

  // y = [x, y, z, ux, uy, s]
  auto rhs = [&pump, &stat](double xi, const double* y, double* dy) {
    const Vec2 u_perp{y[3], y[4]};
    const double s = y[5];
    require_valid_s(s, xi);
    const double up2 = norm2(u_perp);
    const double gamma = (1.0 + up2 + s * s) / (2.0 * s);
    const double u_z = gamma - s;
    const Vec3 pos{y[0], y[1], y[2]};
    const Vec2 ew = pump.field(xi);
    const Vec3 e = stat.e(pos) + Vec3(ew, 0.0);
    // forward travelling wave: b_wave = z ^ e_perp
    const Vec3 b = stat.b(pos) + Vec3(k_cross(ew), 0.0);
    const Vec3 u{u_perp, u_z};
    const Vec3 f = gamma * e + cross(u, b);
    dy[0] = u_perp.x / s;
    dy[1] = u_perp.y / s;
    dy[2] = (1.0 + up2) / (2.0 * s * s) - 0.5;
    dy[3] = f.x / s;
    dy[4] = f.y / s;
    // u.e - f_z reduced analytically: the gamma e_z terms cancel exactly,
    // which matters near the s floor where gamma blows up
    dy[5] = (dot(u_perp, e.perp()) - cross(u, b).z) / s - e.z;
  };

  OdeOptions oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  oo.max_step = pick_max_step(pump, opts, xi_end - init.xi);
  oo.breakpoints = clip_breakpoints(pump, init.xi, xi_end);
  oo.stop_event = [](double, const double* y) { return y[5] - 10.0 * kSFactorFloor; };

  const double y0[6] = {init.x_perp.x, init.x_perp.y, init.z,
                        init.u_perp.x, init.u_perp.y, init.s};
  OdeSolution sol = integrate_ode(6, rhs, y0, init.xi, xi_end, oo);
  const StopReason reason =
      sol.stopped_by_event() ? StopReason::SFactorFloor : StopReason::Completed;
  const double end = sol.t_end();

  auto map = [](double xi, const double* y) {
    XiState st;
    st.xi = xi;
    st.x_perp = {y[0], y[1]};
    st.z = y[2];
    st.u_perp = {y[3], y[4]};
    st.s = y[5];
    return st;
  };
  return Trajectory(std::make_shared<OdeEval>(std::move(sol), map), init.xi, end, reason);
}

Trajectory integrate_reduced_az(const XiState& init, const Pump& pump,
                                const std::function<double(double)>& e_z_of_z,
                                const std::function<Vec2(double)>& b_perp_of_z,
                                double xi_end, const IntegrateOptions& opts) {
  require_valid_s(init.s, init.xi);
  if (!(xi_end > init.xi)) throw NumericalError("integrate_reduced_az: empty xi span");

  // B(z) = int_0^z b_perp; carried as extra state so u_perp stays algebraic:
  //   u_perp(xi, z) = K_perp - alpha(xi) + k ^ B(z)
  const Vec2 b0 = integrate_adaptive(b_perp_of_z, 0.0, init.z);
  const Vec2 k_perp = init.u_perp + pump.alpha(init.xi) - k_cross(b0);

  // y = [x, y, z, s, Bx, By]
  auto rhs = [&](double xi, const double* y, double* dy) {
    const double s = y[3];
    require_valid_s(s, xi);
    const Vec2 bint{y[4], y[5]};
    const Vec2 u_perp = k_perp - pump.alpha(xi) + k_cross(bint);
    const double v = norm2(u_perp);
    const double zp = (1.0 + v) / (2.0 * s * s) - 0.5;
    const Vec2 bp = b_perp_of_z(y[2]);
    dy[0] = u_perp.x / s;
    dy[1] = u_perp.y / s;
    dy[2] = zp;
    dy[3] = -e_z_of_z(y[2]) + dot(u_perp, k_cross(bp)) / s;
    dy[4] = bp.x * zp;
    dy[5] = bp.y * zp;
  };

  OdeOptions oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  oo.max_step = pick_max_step(pump, opts, xi_end - init.xi);
  oo.breakpoints = clip_breakpoints(pump, init.xi, xi_end);
  oo.stop_event = [](double, const double* y) { return y[3] - 10.0 * kSFactorFloor; };

  const double y0[6] = {init.x_perp.x, init.x_perp.y, init.z, init.s, b0.x, b0.y};
  OdeSolution sol = integrate_ode(6, rhs, y0, init.xi, xi_end, oo);
  const StopReason reason =
      sol.stopped_by_event() ? StopReason::SFactorFloor : StopReason::Completed;
  const double end = sol.t_end();

  auto map = [k_perp, pump](double xi, const double* y) {
    XiState st;
    st.xi = xi;
    st.x_perp = {y[0], y[1]};
    st.z = y[2];
    st.s = y[3];
    st.u_perp = k_perp - pump.alpha(xi) + k_cross(Vec2{y[4], y[5]});
    return st;
  };
  return Trajectory(std::make_shared<OdeEval>(std::move(sol), map), init.xi, end, reason);
}

Vec3 FirstIntegrals::w(double xi) const {
  const Vec2 a = pump.alpha(xi);
  const Vec2 wp = k_perp - a + xi * e_static.perp();
  const double wz = k_z + xi * e_static.z;
  return {wp, wz};
}

Vec2 FirstIntegrals::u_perp(double xi, const Vec3& x) const {
  const Vec3 wv = w(xi);
  const double cx = e_static.x - b_static.y;
  const double cy = e_static.y + b_static.x;
  return {cx * x.z + b_static.z * x.y + wv.x, cy * x.z - b_static.z * x.x + wv.y};
}

double FirstIntegrals::s(double xi, const Vec3& x) const {
  const Vec3 wv = w(xi);
  const double cx = e_static.x - b_static.y;
  const double cy = e_static.y + b_static.x;
  return cx * x.x + cy * x.y - wv.z;
}

FirstIntegrals first_integrals(const XiState& init, const Pump& pump,
                               const StaticField& stat) {
  if (stat.kind() == StaticField::Kind::Axial)
    throw NumericalError("first_integrals: static field must be uniform");
  FirstIntegrals fi;
  fi.e_static = stat.e_uniform();
  fi.b_static = stat.b_uniform();
  fi.pump = pump;
  const double cx = fi.e_static.x - fi.b_static.y;
  const double cy = fi.e_static.y + fi.b_static.x;
  fi.k_perp = {init.u_perp.x - cx * init.z - fi.b_static.z * init.x_perp.y +
                   pump.alpha(init.xi).x - init.xi * fi.e_static.x,
               init.u_perp.y - cy * init.z + fi.b_static.z * init.x_perp.x +
                   pump.alpha(init.xi).y - init.xi * fi.e_static.y};
  fi.k_z = cx * init.x_perp.x + cy * init.x_perp.y - init.s - init.xi * fi.e_static.z;
  return fi;
}

double energy_gain(const Trajectory& traj, const Pump& pump, double xi) {
  auto integrand = [&](double z) {
    const XiState st = traj.state(z);
    return dot(pump.field(z), st.u_perp) / st.s;
  };
  return integrate_adaptive(integrand, traj.xi_begin(), xi, 1e-10, 1e-13);
}

std::vector<double> energy_gain(const Trajectory& traj, const Pump& pump,
                                const std::vector<double>& nodes) {
  auto integrand = [&](double z) {
    const XiState st = traj.state(z);
    return dot(pump.field(z), st.u_perp) / st.s;
  };
  return cumulative_integral(integrand, nodes, 0.0, 1e-10, 1e-13);
}

std::vector<double> sample_nodes(const Trajectory& traj, std::size_t count) {
  if (count < 2) count = 2;
  std::vector<double> nodes(count);
  const double a = traj.xi_begin(), b = traj.xi_end();
  for (std::size_t i = 0; i < count; ++i)
    nodes[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  return nodes;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Pump& pump,
                          const std::vector<double>& nodes) {
  os << "xi_um,x_um,y_um,z_um,ux,uy,uz,s,gamma,ct_um,energy_gain\n";
  const std::vector<double> gain = energy_gain(traj, pump, nodes);
  char line[512];
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const XiState st = traj.state(nodes[i]);
    const LabKinematics lab = derive_lab(st);
    std::snprintf(line, sizeof line,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  st.xi, st.x_perp.x, st.x_perp.y, st.z, st.u_perp.x, st.u_perp.y,
                  lab.u_z, st.s, lab.gamma, st.xi + st.z, gain[i]);
    os << line;
  }
}

}  // namespace lwxi
