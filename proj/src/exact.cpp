#include "lwxi/exact.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "lwxi/errors.hpp"
#include "lwxi/parallel.hpp"
#include "lwxi/quadrature.hpp"

namespace lwxi {

namespace {

using cplx = std::complex<double>;

constexpr double kSmallCoeff = 1e-12;  // kappa / bz treated as zero below this

// Quadrature evaluator for the axially-uniform exact class. With
// s(xi) = s0 - kappa (xi - xi0) and chi = x + i y, the transverse momentum
// obeys u = w(xi) - i b chi, so chi solves a linear first-order equation:
//   chi(xi) = P(xi) [chi0 + J(xi)],   P = exp(-i b I),   I = int dz / s,
//   J = int w(z) exp(i b I(z)) / s(z) dz,
// and z follows by one more quadrature. J and the z-quadrature are cached on
// a node grid; arbitrary points complete the partial cell with a single
// Gauss-Kronrod panel, so no interpolation error enters.
class ExactEval : public Trajectory::Eval {
 public:
  ExactEval(const XiState& init, const Pump& pump, const ExactCase& c, double xi_end)
      : pump_(pump), kappa_(c.kappa), b_(c.bz), xi0_(init.xi), s0_(init.s),
        z0_(init.z), chi0_(init.x_perp.x, init.x_perp.y) {
    const cplx u0(init.u_perp.x, init.u_perp.y);
    const Vec2 a0 = pump_.alpha(xi0_);
    kc_ = u0 + cplx(a0.x, a0.y) + cplx(0.0, b_) * chi0_;

    const double span = xi_end - xi0_;
    const double k = pump_.carrier_k();
    const double step = k > 0.0 ? std::min(2.0 * M_PI / k / 8.0, span / 16.0)
                                : span / 64.0;
    const std::size_t n =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(span / step)) + 1);
    grid_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      grid_[i] = xi0_ + span * static_cast<double>(i) / static_cast<double>(n - 1);

    auto kern = [this](double z) { return kernel(z); };
    j_nodes_ = cumulative_integral(kern, grid_, cplx{});
    auto zq = [this](double z) { return z_integrand(z); };
    zq_nodes_ = cumulative_integral(zq, grid_, 0.0);
  }

  XiState state(double xi) const override {
    XiState st;
    st.xi = xi;
    st.s = s_of(xi);
    require_valid_s(st.s, xi);
    const cplx chi = chi_of(xi);
    const cplx u = w_of(xi) - cplx(0.0, b_) * chi;
    st.x_perp = {chi.real(), chi.imag()};
    st.u_perp = {u.real(), u.imag()};
    st.z = z0_ + z_closed(xi) + z_quad(xi);
    return st;
  }

 private:
  double s_of(double xi) const { return s0_ - kappa_ * (xi - xi0_); }

  // int dz / s from xi0
  double phase_int(double xi) const {
    if (std::fabs(kappa_) < kSmallCoeff) return (xi - xi0_) / s0_;
    return -std::log(s_of(xi) / s0_) / kappa_;
  }

  cplx w_of(double xi) const {
    const Vec2 a = pump_.alpha(xi);
    return kc_ - cplx(a.x, a.y);
  }

  cplx kernel(double xi) const {
    if (std::fabs(b_) < kSmallCoeff) return w_of(xi) / s_of(xi);
    return w_of(xi) * std::exp(cplx(0.0, b_ * phase_int(xi))) / s_of(xi);
  }

  cplx j_of(double xi) const {
    if (xi <= grid_.front()) return {};
    if (xi >= grid_.back()) return j_nodes_.back();
    auto it = std::upper_bound(grid_.begin(), grid_.end(), xi);
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    return j_nodes_[i] + gk15([this](double z) { return kernel(z); }, grid_[i], xi).value;
  }

  cplx chi_of(double xi) const {
    const cplx p = std::fabs(b_) < kSmallCoeff
                       ? cplx(1.0)
                       : std::exp(cplx(0.0, -b_ * phase_int(xi)));
    return p * (chi0_ + j_of(xi));
  }

  // int [1/(2 s^2) - 1/2] in closed form
  double z_closed(double xi) const {
    if (std::fabs(kappa_) < kSmallCoeff)
      return (xi - xi0_) * (1.0 / (2.0 * s0_ * s0_) - 0.5);
    return (1.0 / s_of(xi) - 1.0 / s0_) / (2.0 * kappa_) - 0.5 * (xi - xi0_);
  }

  double z_integrand(double xi) const {
    const double s = s_of(xi);
    const cplx u = w_of(xi) - cplx(0.0, b_) * chi_of(xi);
    return std::norm(u) / (2.0 * s * s);
  }

  double z_quad(double xi) const {
    if (xi <= grid_.front()) return 0.0;
    if (xi >= grid_.back()) return zq_nodes_.back();
    auto it = std::upper_bound(grid_.begin(), grid_.end(), xi);
    const std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    return zq_nodes_[i] +
           gk15([this](double z) { return z_integrand(z); }, grid_[i], xi).value;
  }

  Pump pump_;
  double kappa_, b_, xi0_, s0_, z0_;
  cplx chi0_, kc_;
  std::vector<double> grid_;
  std::vector<cplx> j_nodes_;
  std::vector<double> zq_nodes_;
};

}  // namespace

Trajectory solve_exact(const XiState& init, const Pump& pump, const ExactCase& c,
                       double xi_end) {
  require_valid_s(init.s, init.xi);
  if (!(xi_end > init.xi)) throw NumericalError("solve_exact: empty xi span");

  double end = xi_end;
  StopReason reason = StopReason::Completed;
  if (c.kappa > kSmallCoeff) {
    const double xi_floor = init.xi + (init.s - 10.0 * kSFactorFloor) / c.kappa;
    if (xi_floor < end) {
      end = xi_floor;
      reason = StopReason::SFactorFloor;
    }
  }
  auto eval = std::make_shared<ExactEval>(init, pump, c, end);
  return Trajectory(std::move(eval), init.xi, end, reason);
}

std::vector<KappaScanPoint> kappa_scan(const XiState& init, const Pump& pump,
                                       const std::vector<double>& kappas,
                                       double xi_end, unsigned threads) {
  std::vector<KappaScanPoint> out(kappas.size());
  const LabKinematics lab0 = derive_lab(init);
  parallel_for(
      kappas.size(),
      [&](std::size_t i) {
        const double kappa = kappas[i];
        Trajectory traj = solve_exact(init, pump, {kappa, 0.0}, xi_end);
        const XiState fin = traj.state(traj.xi_end());
        const LabKinematics lab = derive_lab(fin);
        // wave share of the energy balance: the static e_z contributes
        // kappa * (z_f - z_0) to gamma, the rest is the pump's.
        out[i] = {kappa, lab.gamma - lab0.gamma - kappa * (fin.z - init.z)};
      },
      threads);
  return out;
}

NetImpulse net_transverse_impulse(const Pump& pump) {
  NetImpulse r;
  r.alpha_final = norm(pump.alpha_final());
  const auto bp = pump.breakpoints();
  if (bp.empty()) return r;
  const double a = bp.front(), b = bp.back();
  const std::size_t n = 1 << 13;
  for (std::size_t i = 0; i <= n; ++i) {
    const double xi = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    r.alpha_peak = std::max(r.alpha_peak, norm(pump.alpha(xi)));
  }
  if (r.alpha_peak > 0.0) r.ratio = r.alpha_final / r.alpha_peak;
  return r;
}

AutoresonanceDiag autoresonance_diag(const XiState& init, const Pump& pump, double bz,
                                     double xi_end) {
  AutoresonanceDiag d;
  Trajectory traj = solve_exact(init, pump, {0.0, bz}, xi_end);
  const XiState fin = traj.state(traj.xi_end());
  const LabKinematics lab = derive_lab(fin);
  const LabKinematics lab0 = derive_lab(init);
  d.energy_gain = lab.gamma - lab0.gamma;
  d.zp_post = lab.dxdxi.z;
  d.xp_post = norm(lab.dxdxi.perp());
  if (d.zp_post != 0.0) d.slope_ratio = d.xp_post / d.zp_post;

  const auto bp = pump.breakpoints();
  const double a = bp.empty() ? init.xi : bp.front();
  const double b = bp.empty() ? xi_end : bp.back();
  d.w_total = integrate_adaptive([&](double z) { return norm(pump.alpha(z)); }, a, b,
                                 1e-9, 1e-12);
  const double k = pump.carrier_k();
  if (k > 0.0 && d.w_total > 0.0) {
    d.predicted_zp = k * k * d.w_total * d.w_total / 2.0;
    d.predicted_ratio = 2.0 / (k * d.w_total);
  }
  return d;
}

}  // namespace lwxi
