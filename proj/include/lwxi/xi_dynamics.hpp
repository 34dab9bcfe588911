#ifndef LWXI_XI_DYNAMICS_HPP
#define LWXI_XI_DYNAMICS_HPP

#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include "lwxi/kinematics.hpp"
#include "lwxi/ode.hpp"
#include "lwxi/pump.hpp"
#include "lwxi/static_field.hpp"

namespace lwxi {

enum class StopReason {
  Completed,       // reached the requested xi
  SFactorFloor,    // s hit its floor; the parametrization degenerated
};

// Worldline parametrized by xi = ct - z with continuous (dense) evaluation.
class Trajectory {
 public:
  struct Eval {
    virtual ~Eval() = default;
    virtual XiState state(double xi) const = 0;
  };

  Trajectory() = default;
  Trajectory(std::shared_ptr<const Eval> eval, double xi_begin, double xi_end,
             StopReason reason)
      : eval_(std::move(eval)), xi_begin_(xi_begin), xi_end_(xi_end), reason_(reason) {}

  double xi_begin() const { return xi_begin_; }
  double xi_end() const { return xi_end_; }
  StopReason stop_reason() const { return reason_; }

  XiState state(double xi) const { return eval_->state(xi); }
  // lab time along the worldline, ct = xi + z(xi), um
  double time_of(double xi) const { return xi + eval_->state(xi).z; }
  // inverse of time_of (ct is strictly increasing in xi)
  XiState state_at_time(double ct) const;

 private:
  std::shared_ptr<const Eval> eval_;
  double xi_begin_ = 0.0, xi_end_ = 0.0;
  StopReason reason_ = StopReason::Completed;
};

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = 0.0;  // 0 -> automatic (fraction of the carrier period)
};

// Full equations of motion in xi for a pump plus an arbitrary static
// background. Stops early (without throwing) if s decays to its floor.
Trajectory integrate_general(const XiState& init, const Pump& pump,
                             const StaticField& stat, double xi_end,
                             const IntegrateOptions& opts = {});

// Reduced motion for a static background deriving from a transverse vector
// potential A_perp(z) together with an axial electric profile e_z(z):
// b_perp(z) is the (normalized) transverse magnetic field, and the transverse
// momentum follows algebraically from conserved quantities.
Trajectory integrate_reduced_az(const XiState& init, const Pump& pump,
                                const std::function<double(double)>& e_z_of_z,
                                const std::function<Vec2(double)>& b_perp_of_z,
                                double xi_end, const IntegrateOptions& opts = {});

// Conserved combinations for a uniform static background: u_perp and s follow
// from position and the pump antiderivative alone. Used as an independent
// cross-check on integrated trajectories.
struct FirstIntegrals {
  Vec2 k_perp;
  double k_z = 0.0;
  Vec3 e_static;
  Vec3 b_static;
  Pump pump;

  Vec3 w(double xi) const;  // drift vector (w_perp, w_z)
  Vec2 u_perp(double xi, const Vec3& x) const;
  double s(double xi, const Vec3& x) const;
};

FirstIntegrals first_integrals(const XiState& init, const Pump& pump,
                               const StaticField& stat);

// Energy transfer from the wave, in mc^2: integral of e_perp . u_perp / s.
double energy_gain(const Trajectory& traj, const Pump& pump, double xi);
std::vector<double> energy_gain(const Trajectory& traj, const Pump& pump,
                                const std::vector<double>& nodes);

// Uniformly spaced sample nodes across the trajectory span.
std::vector<double> sample_nodes(const Trajectory& traj, std::size_t count);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const Pump& pump,
                          const std::vector<double>& nodes);

}  // namespace lwxi

#endif
