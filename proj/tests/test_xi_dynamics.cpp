#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lwxi/xi_dynamics.hpp"

using namespace lwxi;

namespace {
const double kK = 2.0 * M_PI / 0.8;

Pump fig_pump(double amp) {
  return Pump::modulated(Envelope::gaussian(amp, 20.0, 0.0), kK);
}
}  // namespace

TEST_CASE("uniform axial electric field gives affine s") {
  XiState init;
  init.xi = -5.0;
  const double kappa = 0.03;
  const StaticField stat = StaticField::uniform({0.0, 0.0, kappa}, {});
  const Trajectory traj = integrate_general(init, Pump::zero(), stat, 20.0);
  REQUIRE(traj.stop_reason() == StopReason::Completed);
  for (double xi : {-5.0, 0.0, 7.3, 20.0}) {
    const XiState st = traj.state(xi);
    CHECK(st.s == doctest::Approx(1.0 - kappa * (xi - init.xi)).epsilon(1e-9));
    CHECK(norm(st.u_perp) < 1e-12);
  }
}

TEST_CASE("pure wave leaves s invariant and u_perp = -alpha") {
  XiState init;
  init.xi = -45.0;
  const Pump pump = fig_pump(5.0);
  const Trajectory traj = integrate_general(init, pump, StaticField::zero(), 45.0);
  for (double xi : {-20.0, -3.1, 0.0, 4.4, 45.0}) {
    const XiState st = traj.state(xi);
    CHECK(st.s == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(norm(st.u_perp + pump.alpha(xi)) < 1e-8);
    CHECK(std::fabs(mass_shell_residual(st)) < 1e-9);
  }
}

TEST_CASE("first integrals hold along a general trajectory") {
  XiState init;
  init.xi = -30.0;
  init.u_perp = {0.2, -0.1};
  init.s = 0.9;
  const Pump pump = fig_pump(2.0);
  const StaticField stat =
      StaticField::uniform({0.001, -0.002, 0.004}, {0.003, 0.001, -0.002});
  const Trajectory traj = integrate_general(init, pump, stat, 30.0);
  REQUIRE(traj.stop_reason() == StopReason::Completed);
  const FirstIntegrals fi = first_integrals(init, pump, stat);
  for (double xi : {-30.0, -11.0, 0.0, 8.5, 30.0}) {
    const XiState st = traj.state(xi);
    const Vec3 x(st.x_perp, st.z);
    CHECK(norm(fi.u_perp(xi, x) - st.u_perp) < 1e-7);
    CHECK(std::fabs(fi.s(xi, x) - st.s) < 1e-7);
  }
}

TEST_CASE("amplitude scaling of the vacuum response") {
  XiState init;
  init.xi = -45.0;
  IntegrateOptions tight;
  tight.rtol = 1e-12;
  tight.atol = 1e-14;
  const Trajectory t1 =
      integrate_general(init, fig_pump(1.0), StaticField::zero(), 45.0, tight);
  const Trajectory t2 =
      integrate_general(init, fig_pump(2.0), StaticField::zero(), 45.0, tight);
  const Trajectory t4 =
      integrate_general(init, fig_pump(4.0), StaticField::zero(), 45.0, tight);
  for (double xi : {-10.0, 0.0, 15.0, 45.0}) {
    const XiState a = t1.state(xi), b = t2.state(xi), c = t4.state(xi);
    const double scale_ref = std::max(1.0, norm(a.u_perp));
    CHECK(norm(b.u_perp - 2.0 * a.u_perp) < 1e-9 * scale_ref);
    CHECK(norm(c.u_perp - 4.0 * a.u_perp) < 1e-9 * scale_ref);
    CHECK(norm(b.x_perp - 2.0 * a.x_perp) < 1e-8 * std::max(1.0, norm(a.x_perp)));
    const double z_ref = std::max(1.0, std::fabs(a.z));
    CHECK(std::fabs(b.z - 4.0 * a.z) < 1e-8 * z_ref);
    CHECK(std::fabs(c.z - 16.0 * a.z) < 1e-7 * z_ref);
    const double uza = derive_lab(a).u_z;
    CHECK(derive_lab(b).u_z == doctest::Approx(4.0 * uza).epsilon(1e-9));
    CHECK(derive_lab(c).u_z == doctest::Approx(16.0 * uza).epsilon(1e-9));
  }
}

TEST_CASE("reduced transverse-potential motion matches the general equations") {
  // uniform b_perp realized both ways
  XiState init;
  init.xi = 0.0;
  init.u_perp = {0.05, 0.0};
  const Vec2 bp{0.002, -0.001};
  const Pump pump = fig_pump(1.0);
  const StaticField stat = StaticField::uniform({}, Vec3(bp, 0.0));
  const Trajectory gen = integrate_general(init, pump, stat, 60.0);
  const Trajectory red = integrate_reduced_az(
      init, pump, [](double) { return 0.0; }, [&](double) { return bp; }, 60.0);
  for (double xi : {10.0, 33.0, 60.0}) {
    const XiState a = gen.state(xi), b = red.state(xi);
    CHECK(norm(a.u_perp - b.u_perp) < 1e-7);
    CHECK(std::fabs(a.s - b.s) < 1e-7);
    CHECK(std::fabs(a.z - b.z) < 1e-6);
  }
}

TEST_CASE("energy gain equals the change in gamma for a pure wave plus b") {
  XiState init;
  init.xi = -45.0;
  const Pump pump = fig_pump(3.0);
  const StaticField stat = StaticField::uniform({}, {0.0, 0.0, 0.01});
  const Trajectory traj = integrate_general(init, pump, stat, 45.0);
  const double gain = energy_gain(traj, pump, 45.0);
  const double dgamma =
      derive_lab(traj.state(45.0)).gamma - derive_lab(traj.state(-45.0)).gamma;
  CHECK(gain == doctest::Approx(dgamma).epsilon(1e-7));
}

TEST_CASE("time inversion round-trips") {
  XiState init;
  init.xi = -45.0;
  init.z = 2.0;
  const Trajectory traj = integrate_general(init, fig_pump(4.0), StaticField::zero(), 45.0);
  for (double xi : {-20.0, 0.0, 12.5, 44.0}) {
    const double ct = traj.time_of(xi);
    const XiState st = traj.state_at_time(ct);
    CHECK(st.xi == doctest::Approx(xi).epsilon(1e-10));
    CHECK(st.z == doctest::Approx(traj.state(xi).z).epsilon(1e-10));
  }
}

TEST_CASE("s collapse stops the integration without throwing") {
  XiState init;
  const double kappa = 0.05;  // s = 1 - kappa xi hits the floor at xi = 20
  const StaticField stat = StaticField::uniform({0.0, 0.0, kappa}, {});
  const Trajectory traj = integrate_general(init, Pump::zero(), stat, 100.0);
  CHECK(traj.stop_reason() == StopReason::SFactorFloor);
  CHECK(traj.xi_end() == doctest::Approx(20.0).epsilon(1e-6));
}

TEST_CASE("csv export has the documented header and node count") {
  XiState init;
  init.xi = -5.0;
  const Pump pump = fig_pump(1.0);
  const Trajectory traj = integrate_general(init, pump, StaticField::zero(), 5.0);
  std::ostringstream os;
  write_trajectory_csv(os, traj, pump, sample_nodes(traj, 11));
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "xi_um,x_um,y_um,z_um,ux,uy,uz,s,gamma,ct_um,energy_gain");
  std::size_t rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 11);
}
