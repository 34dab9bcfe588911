#ifndef LWXI_PUMP_HPP
#define LWXI_PUMP_HPP

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "lwxi/interp.hpp"
#include "lwxi/vec.hpp"

namespace lwxi {

// Slowly varying modulation of a carrier. Amplitudes are pre-multiplied by
// q/mc^2 (units 1/um) and signed with the particle charge.
class Envelope {
 public:
  enum class Kind { Gaussian, Constant, SinSquared, Sampled };

  // a * exp(-(xi - center)^2 / (2 sigma)), sigma in um^2
  static Envelope gaussian(double a, double sigma_um2, double center_um = 0.0);
  static Envelope constant(double a);
  // compact ramp a * sin^2(pi xi / length) on [0, length]
  static Envelope sin_squared(double a, double length_um);
  static Envelope sampled(std::vector<double> xi_um, std::vector<double> value);

  Kind kind() const { return kind_; }
  double value(double xi) const;
  double amplitude() const { return a_; }
  double center() const { return center_; }
  // range outside of which the envelope is numerically negligible
  std::pair<double, double> effective_range() const;
  std::optional<std::pair<double, double>> compact_support() const;

 private:
  Kind kind_ = Kind::Constant;
  double a_ = 0.0;        // peak amplitude, 1/um (signed)
  double sigma_ = 0.0;    // um^2 (Gaussian)
  double center_ = 0.0;   // um
  double length_ = 0.0;   // um (SinSquared)
  std::shared_ptr<const PchipInterpolant> samples_;
};

// Plane transverse travelling wave eps_perp(xi) together with its integral
// alpha_perp(xi) = -int_{-inf}^{xi} eps_perp. The antiderivative is
// accumulated once per carrier on a monotone cache grid (Gauss-Kronrod per
// cell, far finer than the carrier period); evaluation completes the partial
// cell with one extra panel, so alpha' = -eps holds to quadrature accuracy
// everywhere. Immutable after construction; evaluation is lock-free.
class Pump {
 public:
  static Pump zero();
  // envelope-modulated carrier: env(xi) * (a1 cos(k (xi-c) + phi), a2 sin(k (xi-c)))
  // with c the envelope center; a1, a2 are dimensionless polarization weights.
  static Pump modulated(Envelope env, double k, double phi = 0.0, double a1 = 1.0,
                        double a2 = 0.0,
                        std::optional<std::pair<double, double>> support = {});
  static Pump superpose(const std::vector<Pump>& parts);
  static Pump sampled(std::vector<double> xi_um, std::vector<Vec2> eps,
                      std::optional<std::pair<double, double>> support = {});

  // eps_perp(xi), 1/um
  Vec2 field(double xi) const;
  // alpha_perp(xi), dimensionless
  Vec2 alpha(double xi) const;
  Vec2 alpha_final() const;

  bool is_zero() const { return carriers_.empty() && !sampled_; }
  // measure of {xi : envelope(xi) > threshold}; single-carrier pumps only
  double pulse_length(double threshold) const;
  std::optional<std::pair<double, double>> support() const { return support_; }
  // xi values where the field may be non-smooth (support edges, sample grid ends)
  std::vector<double> breakpoints() const;
  // largest carrier wavenumber, 0 for zero/sampled pumps
  double carrier_k() const;
  bool is_circular() const;
  double envelope_peak() const;

 private:
  struct Carrier {
    Envelope env;
    double k = 0.0, phi = 0.0, a1 = 1.0, a2 = 0.0;
    // alpha cache
    std::vector<double> grid;
    std::vector<Vec2> alpha_nodes;
    Vec2 eval_field(double xi) const;
    Vec2 eval_alpha(double xi) const;
    void build_cache();
  };
  struct SampledWave {
    std::shared_ptr<const PchipInterpolant> ex, ey;
    std::vector<double> grid;
    std::vector<Vec2> alpha_nodes;
    bool has_support = false;
    Vec2 eval_field(double xi, bool clip) const;
    Vec2 eval_alpha(double xi) const;
    void build_cache();
  };

  std::vector<Carrier> carriers_;
  std::shared_ptr<const SampledWave> sampled_;
  std::optional<std::pair<double, double>> support_;
};

}  // namespace lwxi

#endif
