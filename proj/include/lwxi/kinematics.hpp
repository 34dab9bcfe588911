#ifndef LWXI_KINEMATICS_HPP
#define LWXI_KINEMATICS_HPP

#include "lwxi/errors.hpp"
#include "lwxi/vec.hpp"

namespace lwxi {

// Unit conventions: lengths in micrometers; momenta u = p/mc dimensionless;
// energies in mc^2. Field quantities are stored pre-multiplied by q/mc^2, so
// transverse pump amplitudes and b carry 1/um, kappa carries 1/um and the
// plasma coupling M carries 1/um^2. The signed charge enters once, at field
// construction.
inline constexpr double kClassicalElectronRadiusUm = 2.8179403262e-9;

// s below this is treated as collapse of the light-front parametrization.
inline constexpr double kSFactorFloor = 1e-10;

// Phase point parametrized by xi = ct - z.
struct XiState {
  double xi = 0.0;    // um
  Vec2 x_perp;        // um
  double z = 0.0;     // um
  Vec2 u_perp;        // dimensionless
  double s = 1.0;     // gamma - u_z, > 0
};

struct LabKinematics {
  double gamma;
  double u_z;
  Vec3 beta;
  Vec3 dxdxi;  // dx/dxi (transverse dimensionless, dz/dxi dimensionless)
};

inline void require_valid_s(double s, double xi) {
  if (!(s >= kSFactorFloor)) throw SFactorCollapse(s, xi);
}

// Rational maps from (u_perp, s) to lab kinematic quantities.
inline LabKinematics derive_lab(const XiState& st) {
  require_valid_s(st.s, st.xi);
  const double up2 = norm2(st.u_perp);
  const double gamma = (1.0 + up2 + st.s * st.s) / (2.0 * st.s);
  const double u_z = gamma - st.s;
  LabKinematics lab;
  lab.gamma = gamma;
  lab.u_z = u_z;
  lab.beta = Vec3(st.u_perp, u_z) / gamma;
  lab.dxdxi = Vec3(st.u_perp / st.s, (1.0 + up2) / (2.0 * st.s * st.s) - 0.5);
  return lab;
}

// H/mc^2 = gamma + qA0/mc^2; a0 is the normalized scalar potential.
inline double hamiltonian(const XiState& st, double a0) {
  require_valid_s(st.s, st.xi);
  return (1.0 + st.s * st.s + norm2(st.u_perp)) / (2.0 * st.s) + a0;
}

// gamma^2 - u_z^2 - |u_perp|^2 - 1 for the state's derived lab quantities.
// Identically zero (to rounding) for any state with s > 0.
inline double mass_shell_residual(const XiState& st) {
  const LabKinematics lab = derive_lab(st);
  return lab.gamma * lab.gamma - lab.u_z * lab.u_z - norm2(st.u_perp) - 1.0;
}

// Canonical phase point of the xi-parametrized Hamiltonian; momenta in mc^2
// with q/mc^2 absorbed into the potentials.
struct CanonicalState {
  Vec3 x;   // um
  Vec3 pi;  // conjugate momenta
};

// Potentials evaluated at (xi, x), normalized by q/mc^2: a_perp is the
// transverse potential, a_minus = a0 - a_z the light-front combination.
struct NormalizedPotentials {
  Vec2 a_perp;
  double a_minus = 0.0;
};

inline CanonicalState canonical_from_xi(const XiState& st, const NormalizedPotentials& pot) {
  require_valid_s(st.s, st.xi);
  CanonicalState c;
  c.x = Vec3(st.x_perp, st.z);
  const Vec2 pi_perp = st.u_perp + pot.a_perp;
  c.pi = Vec3(pi_perp, -(st.s + pot.a_minus));
  return c;
}

inline XiState xi_from_canonical(double xi, const CanonicalState& c,
                                 const NormalizedPotentials& pot) {
  XiState st;
  st.xi = xi;
  st.x_perp = c.x.perp();
  st.z = c.x.z;
  st.u_perp = c.pi.perp() - pot.a_perp;
  st.s = -c.pi.z - pot.a_minus;
  require_valid_s(st.s, xi);
  return st;
}

}  // namespace lwxi

#endif
