#ifndef LWXI_PLASMA_HPP
#define LWXI_PLASMA_HPP

#include <optional>
#include <vector>

#include "lwxi/ode.hpp"
#include "lwxi/pump.hpp"
#include "lwxi/xi_dynamics.hpp"

namespace lwxi {

// Unperturbed electron density of the target, occupying z >= edge. Lengths in
// um, densities in 1/um^3. The cumulative column density drives the
// longitudinal restoring force.
class InitialDensity {
 public:
  static InitialDensity step(double n0_per_um3, double edge_um = 0.0);
  static InitialDensity sampled(std::vector<double> z_um, std::vector<double> n_per_um3);

  double density(double z) const;
  // int_edge^z n dz', clamped below the edge
  double cumulative(double z) const;
  // 4 pi r_e n0, 1/um^2 (step targets; the linear restoring coefficient)
  double coupling() const;
  bool is_step() const { return step_; }
  double edge() const { return edge_; }

 private:
  bool step_ = true;
  double n0_ = 0.0;
  double edge_ = 0.0;
  std::vector<double> z_, n_, cum_;
};

// Downstream electron of a step target hit by a pump: with the displacement
// Delta = z - Z from the initial position, every electron that stays inside
// the target obeys the same Cauchy problem
//   Delta' = (1 + v)/(2 s^2) - 1/2,   s' = M Delta,   Delta(0)=0, s(0)=1,
// with v = |alpha|^2 the pump quiver. The solution is universal in xi.
class PlasmaStepSolution {
 public:
  PlasmaStepSolution(OdeSolution sol, Pump pump, double coupling);

  double coupling() const { return m_; }
  const Pump& pump() const { return pump_; }
  double xi_end() const { return sol_.t_end(); }

  double delta(double xi) const { return sol_.eval_component(xi, 0); }
  double s(double xi) const { return sol_.eval_component(xi, 1); }
  double v(double xi) const { return norm2(pump_.alpha(xi)); }
  double gamma(double xi) const;
  double u_z(double xi) const { return gamma(xi) - s(xi); }
  // gamma + M Delta^2 / 2; constant once the pump has passed
  double invariant(double xi) const;

 private:
  OdeSolution sol_;
  Pump pump_;
  double m_;
};

PlasmaStepSolution solve_step_cauchy(const Pump& pump, double coupling, double xi_end,
                                     const IntegrateOptions& opts = {});

// Oscillation period of the residual motion after the pump has passed:
// located from successive maxima of s on the integrated solution, and
// independently from the energy integral in quadrature form.
struct PeriodEstimate {
  double measured = 0.0;    // um, from the dense solution
  double quadrature = 0.0;  // um, from the first-integral quadrature
  double invariant = 0.0;   // gamma + M Delta^2 / 2 after the pulse
  double s_min = 0.0, s_max = 0.0;
};
PeriodEstimate period_estimate(const PlasmaStepSolution& sol, double search_from);

// One electron of a target family, integrated in the full equations with its
// own sheet field e_z(z) = -4 pi r_e (N(z) - N(Z)).
struct PlasmaMember {
  double z_init = 0.0;   // um
  bool valid = false;    // stayed inside the target for the whole span
  double max_gamma = 0.0;
  double xi_h = 0.0;     // um, post-pulse period (0 if not measurable)
  Trajectory traj;
};

struct FamilyOptions {
  Vec3 b_static;             // uniform magnetic background, 1/um
  double xi_end = 0.0;
  double search_from = 0.0;  // period search starts here (pulse end)
  unsigned threads = 0;
  IntegrateOptions integrate;
};

std::vector<PlasmaMember> solve_family(const Pump& pump, const InitialDensity& density,
                                       const std::vector<double>& z_inits,
                                       const FamilyOptions& opts);

// Consistency check on dropping the plasma-sourced transverse potential: the
// transverse current of the step solution is fed back through the 1D wave
// operator and compared against the pump's own alpha. Step targets only.
struct ResidualSample {
  double ct = 0.0, z = 0.0, ratio = 0.0;
};
struct ResidualReport {
  double max_rhs = 0.0;
  double alpha_peak = 0.0;
  double ratio = 0.0;  // max_rhs / alpha_peak
  std::vector<ResidualSample> samples;
};
struct ResidualOptions {
  double ct_max = 0.0;     // evaluation horizon, um
  double s_step = 0.05;    // lab-time quadrature step, um
  std::size_t grid = 48;   // (ct, z) evaluation grid per axis
};
ResidualReport aperp_residual(const PlasmaStepSolution& sol, const ResidualOptions& opts);

}  // namespace lwxi

#endif
