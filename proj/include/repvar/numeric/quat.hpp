#pragma once

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Core>

namespace repvar::numeric {

/// Element of SU(2) as a unit quaternion w + x i + y j + z k. The maximal
/// torus of diagonal matrices is the circle w + x i, and Tr = 2w.
struct UnitQuat {
  double w = 1, x = 0, y = 0, z = 0;

  static UnitQuat identity() { return {}; }
  static UnitQuat minus_identity() { return {-1, 0, 0, 0}; }

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  UnitQuat normalized() const {
    const double s = 1.0 / norm();
    return {w * s, x * s, y * s, z * s};
  }
  UnitQuat conj() const { return {w, -x, -y, -z}; }
  /// Inverse in SU(2) (the conjugate, for unit quaternions).
  UnitQuat inverse() const { return conj(); }
  double trace() const { return 2 * w; }
  Eigen::Vector3d imag() const { return {x, y, z}; }

  friend UnitQuat operator*(const UnitQuat& a, const UnitQuat& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend UnitQuat operator-(const UnitQuat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  friend bool operator==(const UnitQuat&, const UnitQuat&) = default;
};

/// Euclidean distance in R^4.
inline double distance(const UnitQuat& a, const UnitQuat& b) {
  const double dw = a.w - b.w, dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
}

/// exp(theta * u) = cos(theta) + sin(theta) u for a unit imaginary u.
inline UnitQuat exp_axis(const Eigen::Vector3d& u, double theta) {
  const double s = std::sin(theta);
  return {std::cos(theta), s * u.x(), s * u.y(), s * u.z()};
}

inline UnitQuat conjugate_by(const UnitQuat& g, const UnitQuat& h) { return g * h * g.inverse(); }

/// Matrix of Ad_g on su(2) = imaginary quaternions (a rotation).
inline Eigen::Matrix3d adjoint(const UnitQuat& g) {
  const double w = g.w, x = g.x, y = g.y, z = g.z;
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

/// Haar-distributed element (normalized 4D Gaussian).
template <class Rng>
UnitQuat haar_random(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    UnitQuat q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    if (q.norm() > 1e-9) return q.normalized();
  }
}

/// Uniform point on the unit sphere of imaginary quaternions.
template <class Rng>
Eigen::Vector3d random_unit_vector(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Eigen::Vector3d v(gauss(rng), gauss(rng), gauss(rng));
    if (v.norm() > 1e-9) return v.normalized();
  }
}

}  // namespace repvar::numeric
