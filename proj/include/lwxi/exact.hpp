#ifndef LWXI_EXACT_HPP
#define LWXI_EXACT_HPP

#include <vector>

#include "lwxi/pump.hpp"
#include "lwxi/xi_dynamics.hpp"

namespace lwxi {

// Static backgrounds for which the xi-domain motion closes in quadratures:
// a uniform axial electric field (kappa = normalized e_z, 1/um) and a uniform
// axial magnetic field (bz, 1/um), in any combination. For these, s is an
// affine function of xi and the transverse motion is a single complex
// integral; positions follow by one more quadrature.
struct ExactCase {
  double kappa = 0.0;  // normalized static e_z, 1/um
  double bz = 0.0;     // normalized static b_z, 1/um
};

// Closed-form trajectory (quadratures only, no ODE stepping). If kappa drives
// s to its floor before xi_end, the span is truncated there and the stop
// reason reports the collapse.
Trajectory solve_exact(const XiState& init, const Pump& pump, const ExactCase& c,
                       double xi_end);

// Final wave-energy transfer against the axial-field strength, computed on
// the closed-form trajectories (parallel over kappa values).
struct KappaScanPoint {
  double kappa = 0.0;
  double energy_gain = 0.0;  // mc^2
};
std::vector<KappaScanPoint> kappa_scan(const XiState& init, const Pump& pump,
                                       const std::vector<double>& kappas,
                                       double xi_end, unsigned threads = 0);

// Net outcome of a pump on a free particle: for smooth pulses the transverse
// impulse integrates away, while a truncated carrier leaves an O(1) kick.
struct NetImpulse {
  double alpha_final = 0.0;  // |alpha(+inf)|
  double alpha_peak = 0.0;   // max |alpha| over the pulse
  double ratio = 0.0;        // alpha_final / alpha_peak
};
NetImpulse net_transverse_impulse(const Pump& pump);

// Cyclotron-resonant drive diagnostics: with bz tuned against the carrier the
// transverse quiver rectifies into secular forward acceleration. Measured
// post-pulse slopes are compared with the envelope-integral predictions.
struct AutoresonanceDiag {
  double w_total = 0.0;       // integral of |alpha| over the pulse
  double energy_gain = 0.0;   // gamma(end) - gamma(0)
  double zp_post = 0.0;       // dz/dxi after the pulse
  double xp_post = 0.0;       // |dx_perp/dxi| after the pulse
  double predicted_zp = 0.0;  // k^2 w_total^2 / 2
  double slope_ratio = 0.0;   // xp_post / zp_post
  double predicted_ratio = 0.0;  // 2 / (k w_total)
};
AutoresonanceDiag autoresonance_diag(const XiState& init, const Pump& pump, double bz,
                                     double xi_end);

}  // namespace lwxi

#endif
