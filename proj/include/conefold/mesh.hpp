#pragma once

#include "conefold/core_geometry.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace conefold {

struct Plane {
  Vec3 point = Vec3::Zero();
  Vec3 normal = Vec3::UnitZ();

  double signed_distance(const Vec3& x) const { return normal.dot(x - point); }
  Vec3 reflect(const Vec3& x) const { return x - 2.0 * signed_distance(x) * normal; }
};

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;  // 0-based vertex indices
};

/// Least-squares plane through the points (smallest principal axis of the covariance).
inline Plane fit_plane(const std::vector<Vec3>& pts) {
  if (pts.size() < 3) throw std::invalid_argument("plane fit needs at least three points");
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Mat3 cov = Mat3::Zero();
  for (const auto& p : pts) cov += (p - c) * (p - c).transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> es(cov);
  return {c, es.eigenvectors().col(0).normalized()};
}

inline double diameter(const std::vector<Vec3>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, (pts[i] - pts[j]).norm());
  return d;
}

/// Max distance to the least-squares plane divided by the point-set diameter.
inline double planarity_residual(const std::vector<Vec3>& pts) {
  const double diam = diameter(pts);
  if (diam == 0.0) return 0.0;
  Plane pl = fit_plane(pts);
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, std::abs(pl.signed_distance(p)));
  return worst / diam;
}

/// Planar polygon cut from a cone or cylinder, with its fitted carrier plane.
struct SectionPolygon {
  std::vector<Vec3> points;
  Plane carrier;
  double planarity = 0.0;
};

inline SectionPolygon make_section(std::vector<Vec3> pts) {
  SectionPolygon s;
  s.carrier = fit_plane(pts);
  s.planarity = planarity_residual(pts);
  s.points = std::move(pts);
  return s;
}

}  // namespace conefold
