// Points on the Bloch sphere in stereographic coordinates.
//
// A point is a complex number gamma or the distinguished point at infinity
// (the south pole).  Conventions:
//   cos(theta) = (1-|g|^2)/(1+|g|^2),  e^{i phi} = conj(g)/|g|,
// so gamma = 0 is the north pole and |gamma| -> inf the south pole, and the
// Cartesian unit vector is
//   (x, y, z) = (2 Re g, -2 Im g, 1-|g|^2) / (1+|g|^2).
#pragma once

#include <array>

#include "spinloc/common.hpp"

namespace spinloc {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }

class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(cplx gamma) : gamma_(gamma) {}          // NOLINT: implicit by design
  SpherePoint(double re, double im) : gamma_(re, im) {}
  static SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinity() const { return infinite_; }
  cplx value() const {
    if (infinite_) throw std::domain_error("SpherePoint: value() at infinity");
    return gamma_;
  }

  double cos_theta() const {
    if (infinite_) return -1.0;
    const double a2 = std::norm(gamma_);
    return (1.0 - a2) / (1.0 + a2);
  }

  Vec3 unit_vector() const {
    if (infinite_) return {0.0, 0.0, -1.0};
    const double a2 = std::norm(gamma_);
    const double s = 1.0 / (1.0 + a2);
    return {2.0 * gamma_.real() * s, -2.0 * gamma_.imag() * s, (1.0 - a2) * s};
  }

  static SpherePoint from_unit_vector(const Vec3& v) {
    if (1.0 + v.z < 1e-14) return infinity();
    return SpherePoint(cplx(v.x, -v.y) / (1.0 + v.z));
  }

 private:
  cplx gamma_{0.0, 0.0};
  bool infinite_ = false;
};

// Chordal metric on the Riemann sphere; range [0,2], antipodal points at 2.
inline double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinity() && b.is_infinity()) return 0.0;
  if (a.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(b.value()));
  if (b.is_infinity()) return 2.0 / std::sqrt(1.0 + std::norm(a.value()));
  const cplx ga = a.value(), gb = b.value();
  return 2.0 * std::abs(ga - gb) /
         std::sqrt((1.0 + std::norm(ga)) * (1.0 + std::norm(gb)));
}

}  // namespace spinloc
