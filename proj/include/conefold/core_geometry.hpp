#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <numbers>

namespace conefold {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

/// Half-angle tangent t = tan(theta/2) of an angle theta in (-pi, pi).
struct HalfAngle {
  double value = 0.0;

  static HalfAngle from_angle(double theta) { return {std::tan(0.5 * theta)}; }
  double angle() const { return 2.0 * std::atan(value); }
};

inline double half_tan(double theta) { return std::tan(0.5 * theta); }
inline double from_half_tan(double t) { return 2.0 * std::atan(t); }

/// Rotation by `delta` about the x-axis (the first fold line r1).
inline Mat3 rot_r1(double delta) {
  const double c = std::cos(delta);
  const double s = std::sin(delta);
  Mat3 r;
  r << 1.0, 0.0, 0.0,
       0.0, c, -s,
       0.0, s, c;
  return r;
}

/// Rotation by `delta` about the axis (cos mu, sin mu, 0) (the second fold line r2).
inline Mat3 rot_r2(double mu, double delta) {
  const double cm = std::cos(mu);
  const double sm = std::sin(mu);
  const double cd = std::cos(delta);
  const double sd = std::sin(delta);
  Mat3 r;
  r << (1.0 - cm * cm) * cd + cm * cm, cm * sm * (1.0 - cd), sm * sd,
       cm * sm * (1.0 - cd), (1.0 - sm * sm) * cd + sm * sm, -cm * sd,
       -sm * sd, cm * sd, cd;
  return r;
}

/// Scalar triple product det(u, v, w) = u . (v x w).
inline double det3(const Vec3& u, const Vec3& v, const Vec3& w) { return u.dot(v.cross(w)); }

/// Unit direction at angle `theta` in the xy-plane.
inline Vec3 planar_dir(double theta) { return {std::cos(theta), std::sin(theta), 0.0}; }

/// Reflection of `x` across the plane through the origin with unit normal `n`.
inline Vec3 reflect(const Vec3& n, const Vec3& x) { return x - 2.0 * n.dot(x) * n; }

/// Unsigned angle between two vectors, robust near 0 and pi.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

/// Distance of the direction `b` from the line spanned by `a` (both taken as lines through 0).
inline double line_direction_gap(const Vec3& a, const Vec3& b) {
  return a.normalized().cross(b.normalized()).norm();
}

}  // namespace conefold
