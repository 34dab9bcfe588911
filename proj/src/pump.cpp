#include "lwxi/pump.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lwxi/errors.hpp"
#include "lwxi/quadrature.hpp"

namespace lwxi {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// exp(-x^2/(2 sigma)) < 1e-18 beyond this many sqrt(sigma)
constexpr double kGaussianCut = 10.0;
}  // namespace

Envelope Envelope::gaussian(double a, double sigma_um2, double center_um) {
  if (!(sigma_um2 > 0.0)) throw ConfigError("gaussian envelope: sigma must be positive");
  Envelope e;
  e.kind_ = Kind::Gaussian;
  e.a_ = a;
  e.sigma_ = sigma_um2;
  e.center_ = center_um;
  return e;
}

Envelope Envelope::constant(double a) {
  Envelope e;
  e.kind_ = Kind::Constant;
  e.a_ = a;
  return e;
}

Envelope Envelope::sin_squared(double a, double length_um) {
  if (!(length_um > 0.0)) throw ConfigError("sin^2 envelope: length must be positive");
  Envelope e;
  e.kind_ = Kind::SinSquared;
  e.a_ = a;
  e.length_ = length_um;
  e.center_ = 0.5 * length_um;
  return e;
}

Envelope Envelope::sampled(std::vector<double> xi_um, std::vector<double> value) {
  Envelope e;
  e.kind_ = Kind::Sampled;
  double peak = 0.0, at = 0.0;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (std::fabs(value[i]) > std::fabs(peak)) {
      peak = value[i];
      at = i < xi_um.size() ? xi_um[i] : 0.0;
    }
  }
  e.a_ = peak;
  e.center_ = at;
  e.samples_ = std::make_shared<PchipInterpolant>(std::move(xi_um), std::move(value));
  return e;
}

double Envelope::value(double xi) const {
  switch (kind_) {
    case Kind::Gaussian: {
      const double d = xi - center_;
      return a_ * std::exp(-d * d / (2.0 * sigma_));
    }
    case Kind::Constant:
      return a_;
    case Kind::SinSquared: {
      if (xi <= 0.0 || xi >= length_) return 0.0;
      const double s = std::sin(M_PI * xi / length_);
      return a_ * s * s;
    }
    case Kind::Sampled:
      if (xi < samples_->x_min() || xi > samples_->x_max()) return 0.0;
      return (*samples_)(xi);
  }
  return 0.0;
}

std::pair<double, double> Envelope::effective_range() const {
  switch (kind_) {
    case Kind::Gaussian: {
      const double w = kGaussianCut * std::sqrt(sigma_);
      return {center_ - w, center_ + w};
    }
    case Kind::Constant:
      return {-kInf, kInf};
    case Kind::SinSquared:
      return {0.0, length_};
    case Kind::Sampled:
      return {samples_->x_min(), samples_->x_max()};
  }
  return {0.0, 0.0};
}

std::optional<std::pair<double, double>> Envelope::compact_support() const {
  if (kind_ == Kind::SinSquared) return std::pair{0.0, length_};
  if (kind_ == Kind::Sampled) return std::pair{samples_->x_min(), samples_->x_max()};
  return std::nullopt;
}

// ---- carrier ----

Vec2 Pump::Carrier::eval_field(double xi) const {
  if (!grid.empty() && (xi < grid.front() || xi > grid.back())) return {};
  const double e = env.value(xi);
  if (e == 0.0) return {};
  const double ph = k * (xi - env.center());
  return {e * a1 * std::cos(ph + phi), e * a2 * std::sin(ph)};
}

void Pump::Carrier::build_cache() {
  // grid holds the clip window on entry (see Pump::modulated)
  const auto [lo, hi] = env.effective_range();
  const double a = std::max(lo, grid.front());
  const double b = std::min(hi, grid.back());
  if (!(std::isfinite(a) && std::isfinite(b)) || !(b > a))
    throw ConfigError("pump: carrier has no finite support");
  const double period = k != 0.0 ? 2.0 * M_PI / std::fabs(k) : b - a;
  const double step = std::min(period / 8.0, (b - a) / 16.0);
  const std::size_t n = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((b - a) / step)) + 1);
  grid.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    grid[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  auto minus_eps = [this](double x) {
    const double e = env.value(x);
    const double ph = k * (x - env.center());
    return Vec2{-e * a1 * std::cos(ph + phi), -e * a2 * std::sin(ph)};
  };
  alpha_nodes = cumulative_integral(minus_eps, grid, Vec2{});
}

Vec2 Pump::Carrier::eval_alpha(double xi) const {
  if (xi <= grid.front()) return {};
  if (xi >= grid.back()) return alpha_nodes.back();
  auto it = std::upper_bound(grid.begin(), grid.end(), xi);
  const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
  auto minus_eps = [this](double x) {
    const double e = env.value(x);
    const double ph = k * (x - env.center());
    return Vec2{-e * a1 * std::cos(ph + phi), -e * a2 * std::sin(ph)};
  };
  return alpha_nodes[i] + integrate_adaptive(minus_eps, grid[i], xi);
}

// ---- sampled travelling wave ----

Vec2 Pump::SampledWave::eval_field(double xi, bool clip) const {
  if (xi < ex->x_min() || xi > ex->x_max()) {
    if (has_support || clip) return {};
    throw DomainError("sampled pump evaluated outside its grid");
  }
  return {(*ex)(xi), (*ey)(xi)};
}

void Pump::SampledWave::build_cache() {
  auto minus_eps = [this](double x) { return Vec2{-(*ex)(x), -(*ey)(x)}; };
  alpha_nodes = cumulative_integral(minus_eps, grid, Vec2{});
}

Vec2 Pump::SampledWave::eval_alpha(double xi) const {
  if (xi <= grid.front()) {
    if (has_support || xi == grid.front()) return {};
    throw DomainError("sampled pump evaluated outside its grid");
  }
  if (xi >= grid.back()) {
    if (has_support || xi == grid.back()) return alpha_nodes.back();
    throw DomainError("sampled pump evaluated outside its grid");
  }
  auto it = std::upper_bound(grid.begin(), grid.end(), xi);
  const std::size_t i = static_cast<std::size_t>(it - grid.begin()) - 1;
  auto minus_eps = [this](double x) { return Vec2{-(*ex)(x), -(*ey)(x)}; };
  return alpha_nodes[i] + integrate_adaptive(minus_eps, grid[i], xi);
}

// ---- pump ----

Pump Pump::zero() { return Pump{}; }

Pump Pump::modulated(Envelope env, double k, double phi, double a1, double a2,
                     std::optional<std::pair<double, double>> support) {
  if (env.kind() == Envelope::Kind::Constant && !support)
    throw ConfigError("pump: constant envelope requires explicit support");
  Pump p;
  Carrier c;
  c.env = env;
  c.k = k;
  c.phi = phi;
  c.a1 = a1;
  c.a2 = a2;
  // grid temporarily carries the clip window; build_cache replaces it
  c.grid = {support ? support->first : -kInf, support ? support->second : kInf};
  c.build_cache();
  p.carriers_.push_back(std::move(c));
  if (support)
    p.support_ = support;
  else
    p.support_ = env.compact_support();
  return p;
}

Pump Pump::superpose(const std::vector<Pump>& parts) {
  Pump p;
  bool all_supported = true;
  double lo = kInf, hi = -kInf;
  for (const auto& part : parts) {
    if (part.sampled_) throw ConfigError("pump: cannot superpose sampled pumps");
    for (const auto& c : part.carriers_) p.carriers_.push_back(c);
    if (part.support_) {
      lo = std::min(lo, part.support_->first);
      hi = std::max(hi, part.support_->second);
    } else if (!part.is_zero()) {
      all_supported = false;
    }
  }
  if (all_supported && lo < hi) p.support_ = std::pair{lo, hi};
  return p;
}

Pump Pump::sampled(std::vector<double> xi_um, std::vector<Vec2> eps,
                   std::optional<std::pair<double, double>> support) {
  if (xi_um.size() != eps.size() || xi_um.size() < 2)
    throw ConfigError("sampled pump: need >= 2 matching samples");
  std::vector<double> ex(eps.size()), ey(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    ex[i] = eps[i].x;
    ey[i] = eps[i].y;
  }
  auto w = std::make_shared<SampledWave>();
  w->grid = xi_um;
  w->ex = std::make_shared<PchipInterpolant>(xi_um, std::move(ex));
  w->ey = std::make_shared<PchipInterpolant>(std::move(xi_um), std::move(ey));
  w->has_support = support.has_value();
  w->build_cache();
  Pump p;
  p.sampled_ = std::move(w);
  p.support_ = support;
  return p;
}

Vec2 Pump::field(double xi) const {
  Vec2 f;
  for (const auto& c : carriers_) f += c.eval_field(xi);
  if (sampled_) f += sampled_->eval_field(xi, false);
  return f;
}

Vec2 Pump::alpha(double xi) const {
  Vec2 a;
  for (const auto& c : carriers_) a += c.eval_alpha(xi);
  if (sampled_) a += sampled_->eval_alpha(xi);
  return a;
}

Vec2 Pump::alpha_final() const {
  Vec2 a;
  for (const auto& c : carriers_) a += c.alpha_nodes.back();
  if (sampled_) a += sampled_->alpha_nodes.back();
  return a;
}

double Pump::pulse_length(double threshold) const {
  if (carriers_.size() != 1)
    throw NumericalError("pulse_length: defined for single-carrier pumps only");
  const auto& c = carriers_.front();
  const double peak = std::fabs(c.env.amplitude());
  if (peak == 0.0) return 0.0;
  const double cut = threshold * peak;
  const double a = c.grid.front(), b = c.grid.back();
  const std::size_t n = 1 << 14;
  const double h = (b - a) / static_cast<double>(n);
  double measure = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (std::fabs(c.env.value(a + (static_cast<double>(i) + 0.5) * h)) > cut) measure += h;
  return measure;
}

std::vector<double> Pump::breakpoints() const {
  std::vector<double> bp;
  for (const auto& c : carriers_) {
    if (auto s = c.env.compact_support()) {
      bp.push_back(s->first);
      bp.push_back(s->second);
    }
    bp.push_back(c.grid.front());
    bp.push_back(c.grid.back());
  }
  if (sampled_) {
    bp.push_back(sampled_->grid.front());
    bp.push_back(sampled_->grid.back());
  }
  if (support_) {
    bp.push_back(support_->first);
    bp.push_back(support_->second);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
           bp.end());
  return bp;
}

double Pump::carrier_k() const {
  double k = 0.0;
  for (const auto& c : carriers_) k = std::max(k, std::fabs(c.k));
  return k;
}

bool Pump::is_circular() const {
  if (carriers_.size() != 1) return false;
  const auto& c = carriers_.front();
  return c.a1 != 0.0 && std::fabs(std::fabs(c.a1) - std::fabs(c.a2)) < 1e-12;
}

double Pump::envelope_peak() const {
  double p = 0.0;
  for (const auto& c : carriers_) {
    const double w = std::max(std::fabs(c.a1), std::fabs(c.a2));
    p = std::max(p, std::fabs(c.env.amplitude()) * w);
  }
  return p;
}

}  // namespace lwxi
