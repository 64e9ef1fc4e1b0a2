#pragma once

// Smooth cylinders: planar base curves c with constant ruling direction e3 and sections c + φ e3.

#include "conefold/smooth_cone.hpp"

namespace conefold {

struct PlanarFrameSamples {
  std::vector<double> grid;
  std::vector<Vec3> c, e1, e2;
  Vec3 e3 = Vec3::UnitZ();
};

/// RK4 for c' = e1, e1' = κ e2, e2' = -κ e1. e3 is never touched.
inline PlanarFrameSamples planar_frame_integrate(const CurvatureField& kappa, const std::vector<double>& grid, const Frame& initial = {},
                                                 const Vec3& origin = Vec3::Zero()) {
  detail::require_increasing(grid);
  detail::require_orthonormal(initial);
  using State = Eigen::Matrix<double, 9, 1>;
  auto rhs = [&kappa](double s, const State& y) {
    const double k = kappa.at(s);
    State d;
    d.segment<3>(0) = y.segment<3>(3);
    d.segment<3>(3) = k * y.segment<3>(6);
    d.segment<3>(6) = -k * y.segment<3>(3);
    return d;
  };
  PlanarFrameSamples out;
  out.grid = grid;
  out.e3 = initial.e3;
  State y;
  y << origin, initial.e1, initial.e2;
  auto push = [&out](const State& s) {
    out.c.push_back(s.segment<3>(0));
    out.e1.push_back(s.segment<3>(3));
    out.e2.push_back(s.segment<3>(6));
  };
  push(y);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double s = grid[i], h = grid[i + 1] - grid[i];
    const State k1 = rhs(s, y);
    const State k2 = rhs(s + 0.5 * h, y + 0.5 * h * k1);
    const State k3 = rhs(s + 0.5 * h, y + 0.5 * h * k2);
    const State k4 = rhs(s + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    push(y);
  }
  return out;
}

/// φ' κ³ + φ''' κ - φ'' κ'.
inline double cyl_value(const Jet& f, double k, double kp) { return f.d1 * k * k * k + f.d3 * k - f.d2 * kp; }

inline double cyl_residual(const ProfileFunction& phi, const CurvatureField& kappa, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double s : grid) worst = std::max(worst, std::abs(cyl_value(phi(s), kappa.at(s), kappa.derivative_at(s))));
  return worst;
}

struct PlanarKappa {
  CurvatureField field;
  std::vector<double> grid;  // feasible part of the requested grid
  std::size_t trimmed_front = 0, trimmed_back = 0;
};

/// κ = φ'' / √(I - φ'²). Nodes at either end with I - φ'² ≤ ε are dropped; an infeasible
/// interior node is an error.
inline PlanarKappa kappa_planar(const ProfileFunction& phi, double I_value, const std::vector<double>& grid, double eps = 1e-6) {
  detail::require_increasing(grid);
  std::vector<Jet> jets;
  std::vector<char> ok;
  for (double s : grid) {
    jets.push_back(phi(s));
    ok.push_back(I_value - jets.back().d1 * jets.back().d1 > eps);
  }
  std::size_t a = 0, b = grid.size();
  while (a < b && !ok[a]) ++a;
  while (b > a && !ok[b - 1]) --b;
  if (b - a < 2) throw std::domain_error("deformation parameter infeasible: I - φ'² ≤ 0 on the whole grid");
  for (std::size_t i = a; i < b; ++i)
    if (!ok[i]) throw std::domain_error("deformation parameter infeasible: I - φ'² ≤ 0 at ς = " + std::to_string(grid[i]));
  PlanarKappa out;
  out.trimmed_front = a;
  out.trimmed_back = grid.size() - b;
  std::vector<double> k, kp;
  for (std::size_t i = a; i < b; ++i) {
    const Jet& f = jets[i];
    const double R = I_value - f.d1 * f.d1;
    const double sq = std::sqrt(R);
    out.grid.push_back(grid[i]);
    k.push_back(f.d2 / sq);
    kp.push_back(f.d3 / sq + f.d2 * f.d2 * f.d1 / (R * sq));
  }
  out.field = CurvatureField::sampled(out.grid, std::move(k), std::move(kp));
  return out;
}

struct ScalingCheck {
  double scaled = 0.0;      // residual of λφ
  double multiplied = 0.0;  // λ times the residual of φ
};

/// Signed residual integrated over the grid as a single linear functional, evaluated at λφ and
/// compared with λ times its value at φ. The max-abs residual is positively homogeneous only,
/// so the signed sum at the node of largest |residual| is used.
inline ScalingCheck scaling_check(const ProfileFunction& phi, double lambda, const CurvatureField& kappa, const std::vector<double>& grid) {
  std::size_t worst = 0;
  double wv = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = std::abs(cyl_value(phi(grid[i]), kappa.at(grid[i]), kappa.derivative_at(grid[i])));
    if (r > wv) {
      wv = r;
      worst = i;
    }
  }
  const double s = grid[worst];
  const Jet f = phi(s);
  const double k = kappa.at(s), kp = kappa.derivative_at(s);
  return {cyl_value(lambda * f, k, kp), lambda * cyl_value(f, k, kp)};
}

inline std::vector<Vec3> cylinder_curve(const PlanarFrameSamples& f, const ProfileFunction& phi) {
  std::vector<Vec3> p;
  for (std::size_t i = 0; i < f.grid.size(); ++i) p.push_back(f.c[i] + phi.value(f.grid[i]) * f.e3);
  return p;
}

inline SectionPlanarity cylinder_section_planarity(const CurvatureField& kappa, const ProfileFunction& phi, const std::vector<double>& grid,
                                                   const Frame& initial = {}) {
  const PlanarFrameSamples f = planar_frame_integrate(kappa, grid, initial);
  const auto p = cylinder_curve(f, phi);
  return {torsion_residual(p, grid), planarity_residual(p)};
}

/// Quad strip of the cylinder between heights z0 and z1 along e3.
inline Mesh cylinder_surface_mesh(const PlanarFrameSamples& f, double z0 = -1.0, double z1 = 1.0, std::size_t stride = 1) {
  Mesh m;
  stride = std::max<std::size_t>(stride, 1);
  for (std::size_t i = 0; i < f.c.size(); i += stride) {
    m.vertices.push_back(f.c[i] + z0 * f.e3);
    m.vertices.push_back(f.c[i] + z1 * f.e3);
  }
  for (int k = 0; 2 * k + 3 < static_cast<int>(m.vertices.size()); ++k)
    m.faces.push_back({2 * k, 2 * k + 2, 2 * k + 3, 2 * k + 1});
  return m;
}

}  // namespace conefold
