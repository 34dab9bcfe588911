#ifndef LWXI_TIME_ORACLE_HPP
#define LWXI_TIME_ORACLE_HPP

#include <ostream>
#include <vector>

#include "lwxi/ode.hpp"
#include "lwxi/pump.hpp"
#include "lwxi/static_field.hpp"
#include "lwxi/xi_dynamics.hpp"

namespace lwxi {

// Lab-time phase point; u = p / mc.
struct TimeState {
  Vec3 x;  // um
  Vec3 u;
};

// Conventional integration of the Lorentz force in lab time ct, with the
// pump evaluated at the retarded combination ct - z. Serves as an
// independent check on the xi-domain formulation; shares no stepping code
// path with it beyond the generic solver.
class TimeTrajectory {
 public:
  TimeTrajectory() = default;
  TimeTrajectory(OdeSolution sol) : sol_(std::move(sol)) {}

  double ct_begin() const { return sol_.t_begin(); }
  double ct_end() const { return sol_.t_end(); }
  TimeState state(double ct) const;

 private:
  OdeSolution sol_;
};

TimeTrajectory integrate_time(const TimeState& init, double ct_begin, double ct_end,
                              const Pump& pump, const StaticField& stat,
                              const IntegrateOptions& opts = {});

// Pointwise discrepancy between a xi-domain trajectory and the lab-time
// integration at shared instants; errors are scaled by max(1, amplitude) of
// the respective quantity group.
struct OracleComparison {
  double max_pos_err = 0.0;
  double max_u_err = 0.0;
};
OracleComparison compare_with_oracle(const Trajectory& traj, const TimeTrajectory& oracle,
                                     const std::vector<double>& ct_samples);

void write_time_csv(std::ostream& os, const TimeTrajectory& traj,
                    const std::vector<double>& ct_nodes);

}  // namespace lwxi

#endif
