#include "lwxi/time_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lwxi/errors.hpp"
#include "lwxi/kinematics.hpp"

namespace lwxi {

TimeState TimeTrajectory::state(double ct) const {
  double y[6];
  sol_.eval(ct, y);
  return {{y[0], y[1], y[2]}, {y[3], y[4], y[5]}};
}

TimeTrajectory integrate_time(const TimeState& init, double ct_begin, double ct_end,
                              const Pump& pump, const StaticField& stat,
                              const IntegrateOptions& opts) {
  if (!(ct_end > ct_begin)) throw NumericalError("integrate_time: empty span");

  auto rhs = [&pump, &stat](double ct, const double* y, double* dy) {
    const Vec3 x{y[0], y[1], y[2]};
    const Vec3 u{y[3], y[4], y[5]};
    const double gamma = std::sqrt(1.0 + norm2(u));
    // retarded wave argument ct - z
    const Vec2 ew = pump.field(ct - y[2]);
    const Vec3 e = stat.e(x) + Vec3(ew, 0.0);
    const Vec3 b = stat.b(x) + Vec3(k_cross(ew), 0.0);
    const Vec3 beta = u / gamma;
    const Vec3 f = e + cross(beta, b);
    dy[0] = beta.x;
    dy[1] = beta.y;
    dy[2] = beta.z;
    dy[3] = f.x;
    dy[4] = f.y;
    dy[5] = f.z;
  };

  OdeOptions oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  const double k = pump.carrier_k();
  // the retarded phase k (ct - z) can advance slowly for relativistic forward
  // motion, so the cap is on lab time directly
  oo.max_step = opts.max_step > 0.0
                    ? opts.max_step
                    : (k > 0.0 ? 2.0 * M_PI / k / 4.0 : (ct_end - ct_begin) / 64.0);
  const double y0[6] = {init.x.x, init.x.y, init.x.z, init.u.x, init.u.y, init.u.z};
  return TimeTrajectory(integrate_ode(6, rhs, y0, ct_begin, ct_end, oo));
}

OracleComparison compare_with_oracle(const Trajectory& traj, const TimeTrajectory& oracle,
                                     const std::vector<double>& ct_samples) {
  double pos_scale = 1.0, u_scale = 1.0;
  std::vector<TimeState> a, b;
  a.reserve(ct_samples.size());
  b.reserve(ct_samples.size());
  for (double ct : ct_samples) {
    const XiState st = traj.state_at_time(ct);
    const LabKinematics lab = derive_lab(st);
    a.push_back({Vec3(st.x_perp, st.z), Vec3(st.u_perp, lab.u_z)});
    b.push_back(oracle.state(ct));
    pos_scale = std::max({pos_scale, norm(a.back().x), norm(b.back().x)});
    u_scale = std::max({u_scale, norm(a.back().u), norm(b.back().u)});
  }
  OracleComparison cmp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cmp.max_pos_err = std::max(cmp.max_pos_err, norm(a[i].x - b[i].x) / pos_scale);
    cmp.max_u_err = std::max(cmp.max_u_err, norm(a[i].u - b[i].u) / u_scale);
  }
  return cmp;
}

void write_time_csv(std::ostream& os, const TimeTrajectory& traj,
                    const std::vector<double>& ct_nodes) {
  os << "ct_um,x_um,y_um,z_um,ux,uy,uz,gamma\n";
  char line[384];
  for (double ct : ct_nodes) {
    const TimeState st = traj.state(ct);
    const double gamma = std::sqrt(1.0 + norm2(st.u));
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  ct, st.x.x, st.x.y, st.x.z, st.u.x, st.u.y, st.u.z, gamma);
    os << line;
  }
}

}  // namespace lwxi
