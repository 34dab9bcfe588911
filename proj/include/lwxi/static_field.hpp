#ifndef LWXI_STATIC_FIELD_HPP
#define LWXI_STATIC_FIELD_HPP

#include <functional>
#include <limits>
#include <utility>

#include "lwxi/errors.hpp"
#include "lwxi/vec.hpp"

namespace lwxi {

// Static (xi-independent) electric and magnetic background, pre-multiplied by
// q/mc^2 like the pump. Three shapes cover everything used here: none, a
// uniform field, and an axial profile e_z(z) with a constant magnetic part
// (the self-consistent plasma background falls in the last class).
class StaticField {
 public:
  enum class Kind { Zero, Uniform, Axial };

  static StaticField zero() { return StaticField{}; }

  static StaticField uniform(const Vec3& e, const Vec3& b) {
    StaticField f;
    f.kind_ = Kind::Uniform;
    f.e0_ = e;
    f.b0_ = b;
    return f;
  }

  // e_z depends on z only; the magnetic part stays uniform. z outside
  // [z_lo, z_hi] raises DomainError.
  static StaticField axial(std::function<double(double)> e_z_of_z, const Vec3& b,
                           double z_lo = -std::numeric_limits<double>::infinity(),
                           double z_hi = std::numeric_limits<double>::infinity()) {
    StaticField f;
    f.kind_ = Kind::Axial;
    f.e_z_of_z_ = std::move(e_z_of_z);
    f.b0_ = b;
    f.z_lo_ = z_lo;
    f.z_hi_ = z_hi;
    return f;
  }

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::Zero; }
  const Vec3& e_uniform() const { return e0_; }
  const Vec3& b_uniform() const { return b0_; }

  Vec3 e(const Vec3& x) const {
    switch (kind_) {
      case Kind::Zero:
        return {};
      case Kind::Uniform:
        return e0_;
      case Kind::Axial:
        if (x.z < z_lo_ || x.z > z_hi_)
          throw DomainError("axial field evaluated outside its z range");
        return {0.0, 0.0, e_z_of_z_(x.z)};
    }
    return {};
  }

  Vec3 b(const Vec3&) const { return kind_ == Kind::Zero ? Vec3{} : b0_; }

 private:
  Kind kind_ = Kind::Zero;
  Vec3 e0_, b0_;
  std::function<double(double)> e_z_of_z_;
  double z_lo_ = 0.0, z_hi_ = 0.0;
};

}  // namespace lwxi

#endif
