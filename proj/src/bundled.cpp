#include "lwxi/scenario.hpp"

namespace lwxi {

// Mirrored 1:1 by the files under scenarios/; a test keeps them in sync.
const std::vector<BundledScenario>& bundled_scenarios() {
  static const std::vector<BundledScenario> list = {
      {"fig2_left", R"(# Gaussian pulse in vacuum, moderate amplitude
[scenario]
kind = vacuum-general
name = fig2_left

[pump]
envelope = gaussian
wavelength_um = 0.8
a0 = 4
sigma_um2 = 20
polarization = linear

[init]
xi_um = -45

[numerics]
xi_end_um = 45
)"},
      {"fig2_right", R"(# Gaussian pulse in vacuum, high amplitude
[scenario]
kind = vacuum-general
name = fig2_right

[pump]
envelope = gaussian
wavelength_um = 0.8
a0 = 15
sigma_um2 = 20
polarization = linear

[init]
xi_um = -45

[numerics]
xi_end_um = 45
)"},
      {"oracle_fig2", R"(# Cross-check of the xi-domain solution against direct
# lab-time integration of the Lorentz force
[scenario]
kind = oracle-compare
name = oracle_fig2

[pump]
envelope = gaussian
wavelength_um = 0.8
a0 = 4
sigma_um2 = 20
polarization = linear

[init]
xi_um = -45

[numerics]
xi_end_um = 45

[oracle]
samples = 500
)"},
      {"kappa_scan", R"(# Energy gain vs. static axial field strength for a compact pulse
[scenario]
kind = kappa-scan
name = kappa_scan

[pump]
envelope = sin2
wavelength_um = 0.8
a0 = 4
length_um = 18
polarization = linear

[numerics]
xi_end_um = 18

[scan]
kappa_min_per_um = -0.2
kappa_max_per_um = 0.05
points = 26
)"},
      {"autoresonance", R"(# Cyclotron-resonant circular pulse over an axial magnetic field
[scenario]
kind = autoresonance
name = autoresonance

[pump]
envelope = sin2
wavelength_um = 0.8
a0 = 2
length_um = 10
polarization = circular

[numerics]
xi_end_um = 20
)"},
      {"fig4_plasma", R"(# Step-density target: universal Cauchy problem, plasma-wave
# period and the transverse-potential consistency residual
[scenario]
kind = plasma-step
name = fig4_plasma

[pump]
envelope = gaussian
wavelength_um = 0.8
a0 = 15
sigma_um2 = 20
center_um = 22.5
support_start_um = 0
support_end_um = 45
polarization = linear

[density]
n0_per_cm3 = 2e18

[numerics]
xi_end_um = 200

[residual]
enabled = true
)"},
      {"plasma_family", R"(# Z-parametrized family of target electrons, each with its own
# sheet field
[scenario]
kind = plasma-family
name = plasma_family

[pump]
envelope = gaussian
wavelength_um = 0.8
a0 = 15
sigma_um2 = 20
center_um = 22.5
support_start_um = 0
support_end_um = 45
polarization = linear

[density]
n0_per_cm3 = 2e18

[numerics]
xi_end_um = 120
samples = 400

[family]
z_points = 16
z_max_um = 80
)"},
  };
  return list;
}

}  // namespace lwxi
