#pragma once

// Discrete cylinders: the germ with parallel fold lines (m = 0).

#include "conefold/core_geometry.hpp"
#include "conefold/discrete_cone.hpp"
#include "conefold/exact.hpp"
#include "conefold/mesh.hpp"
#include "conefold/poly_elim.hpp"
#include "conefold/section.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace conefold {

/// Half-angle tangents of the alpha and beta edge angles against the common ruling direction.
/// `normalized_beta` selects the variant where beta is orthogonal to the rulings (t_j = 1);
/// beta-side exclusions do not apply there.
struct CylinderConfig {
  double s1 = 0, s2 = 0, s3 = 0, t1 = 0, t2 = 0, t3 = 0;
  double spacing = 1.0;
  bool normalized_beta = false;

  ConfigD as_section() const { return {0.0, s1, s2, s3, t1, t2, t3}; }
};

/// R_i = s_i t1 (s1^2 - 1)(t_i^2 - 1) - s1 t_i (s_i^2 - 1)(t1^2 - 1). It vanishes iff
/// tan σ1 / tan τ1 = tan σi / tan τi.
template <class T>
T eval_R(int i, const T& s1, const T& si, const T& t1, const T& ti) {
  if (i != 2 && i != 3) throw std::invalid_argument("R_i is defined for i = 2, 3");
  const T one(1);
  return si * t1 * (s1 * s1 - one) * (ti * ti - one) - s1 * ti * (si * si - one) * (t1 * t1 - one);
}

/// R_i as a quadratic in t_i: {leading, middle, constant}; constant = -leading.
template <class T>
std::array<T, 3> R_quadratic(const T& s1, const T& si, const T& t1) {
  const T one(1);
  const T lead = si * t1 * (s1 * s1 - one);
  return {lead, T(-(s1 * (si * si - one) * (t1 * t1 - one))), T(-lead)};
}

inline std::vector<double> solve_R_for_ti(int i, double s1, double si, double t1) {
  if (i != 2 && i != 3) throw std::invalid_argument("R_i is defined for i = 2, 3");
  auto q = R_quadratic(s1, si, t1);
  return real_quadratic_roots(q[0], q[1], q[2]);
}

/// Excluded cases with parallel fold lines, as labels.
inline std::vector<std::string> validate_cylinder(const CylinderConfig& c) {
  std::vector<std::string> out;
  for (double x : {c.s1, c.s2, c.s3, c.t1, c.t2, c.t3})
    if (!std::isfinite(x)) {
      out.push_back("non-finite parameter (angle π)");
      return out;
    }
  if (!(c.spacing > 0.0)) out.push_back("ruling spacing must be positive");
  auto side = [&out](const char* L, double w1, double w2, double w3) {
    const std::string l(L);
    auto zero = [](double x, double sc) { return std::abs(x) <= 1e-12 * sc; };
    if (zero(w1, 1) || zero(w2, 1) || zero(w3, 1)) out.push_back(l + " edge along the rulings");
    const std::array<std::array<double, 2>, 3> pairs{{{w1, w2}, {w2, w3}, {w1, w3}}};
    const char* what[3] = {"₁ ∥ ₂: δ₁ coincidence", "₂ ∥ ₃: δ₂ coincidence", "₁ ∥ ₃: faces f₁ and f₃ parallel"};
    for (int k = 0; k < 3; ++k) {
      const double a = pairs[static_cast<std::size_t>(k)][0], b = pairs[static_cast<std::size_t>(k)][1];
      const double sc = (1 + std::abs(a)) * (1 + std::abs(b));
      if (zero(a - b, sc) || zero(a + b, sc) || zero(a * b + 1, sc) || zero(a * b - 1, sc))
        out.push_back(l + what[k]);
    }
  };
  side("a", c.s1, c.s2, c.s3);
  if (!c.normalized_beta) side("b", c.t1, c.t2, c.t3);
  return out;
}

struct CylinderFreeParams {
  double s1 = 2.0, s2 = 0.6, s3 = -3.0, t1 = 0.4;
};

/// Solves R_2 for t2 and R_3 for t3; `root2`, `root3` pick the ascending root (0 or 1).
inline CylinderConfig synthesize_cylinder(const CylinderFreeParams& p, int root2 = 0, int root3 = 0, double spacing = 1.0) {
  auto pick = [](const std::vector<double>& r, int k, const char* name) {
    if (r.size() < 2) throw SynthesisError(std::string("branch infeasible: ") + name + " has no proper quadratic root pair");
    return r[static_cast<std::size_t>(k)];
  };
  if (root2 < 0 || root2 > 1 || root3 < 0 || root3 > 1) throw std::invalid_argument("root index must be 0 or 1");
  CylinderConfig c;
  c.s1 = p.s1;
  c.s2 = p.s2;
  c.s3 = p.s3;
  c.t1 = p.t1;
  c.spacing = spacing;
  c.t2 = pick(solve_R_for_ti(2, p.s1, p.s2, p.t1), root2, "R_2");
  c.t3 = pick(solve_R_for_ti(3, p.s1, p.s3, p.t1), root3, "R_3");
  auto bad = validate_cylinder(c);
  if (!bad.empty()) throw SynthesisError("excluded case: " + bad.front());
  return c;
}

/// The orthogonal-section variant: beta orthogonal to the rulings, any alpha.
inline CylinderConfig normalized_cylinder(double s1, double s2, double s3, double spacing = 1.0) {
  CylinderConfig c{s1, s2, s3, 1.0, 1.0, 1.0, spacing, true};
  auto bad = validate_cylinder(c);
  if (!bad.empty()) throw SynthesisError("excluded case: " + bad.front());
  return c;
}

struct ExactCylinderFreeParams {
  Rational s1, s2, s3, t1;
};

/// Exact synthesis in Q[X, Y]/(R_2(X), R_3(Y)) with X = t2, Y = t3.
inline SectionConfig<ExtNumber> synthesize_cylinder_exact(const ExactCylinderFreeParams& p) {
  auto q2 = R_quadratic<Rational>(p.s1, p.s2, p.t1);
  auto q3 = R_quadratic<Rational>(p.s1, p.s3, p.t1);
  if (q2[0] == 0 || q3[0] == 0) throw SynthesisError("branch infeasible: R_i degenerates (a parameter is 0 or ±1)");
  auto alg = QuadraticAlgebra::from_quadratics(q2[0], q2[1], q2[2], q3[0], q3[1], q3[2]);
  SectionConfig<ExtNumber> c;
  c.m = Rational(0);
  c.s1 = p.s1;
  c.s2 = p.s2;
  c.s3 = p.s3;
  c.t1 = p.t1;
  c.t2 = ExtNumber::generator_x(alg);
  c.t3 = ExtNumber::generator_y(alg);
  return c;
}

// ---------------------------------------------------------------------------------------------
// Coplanarity and fold coupling

/// det(R(δ1) A1, A2, R(δ2) A3) with both rotations about the common ruling direction e_x.
inline double eval_cyl_D(double w1, double w2, double w3, double d1, double d2) {
  const Vec3 a1 = rot_r1(from_half_tan(d1)) * planar_dir(from_half_tan(w1));
  const Vec3 a2 = planar_dir(from_half_tan(w2));
  const Vec3 a3 = rot_r1(from_half_tan(d2)) * planar_dir(from_half_tan(w3));
  return det3(a1, a2, a3);
}

inline double eval_cyl_D1(const CylinderConfig& c, double d1, double d2) { return eval_cyl_D(c.s1, c.s2, c.s3, d1, d2); }
inline double eval_cyl_D2(const CylinderConfig& c, double d1, double d2) { return eval_cyl_D(c.t1, c.t2, c.t3, d1, d2); }

/// Cleared D1 = a d1 + c d2 + e d1^2 d2 + b d1 d2^2 at m = 0: coefficients {a, c, e, b}.
struct OddForm {
  double a = 0, c = 0, e = 0, b = 0;
};

inline OddForm cyl_odd_form(double w1, double w2, double w3) {
  const BiPoly<double> p = coeffs_D(Determinant::D1, ConfigD{0.0, w1, w2, w3, 0, 0, 0});
  return {p.coeff(1).coeff(0), p.coeff(0).coeff(1), p.coeff(2).coeff(1), p.coeff(1).coeff(2)};
}

/// All real d1 with D1(d1, d2) = 0.
inline std::vector<double> fold_coupling_cyl(const CylinderConfig& c, double d2) {
  const OddForm f = cyl_odd_form(c.s1, c.s2, c.s3);
  return real_quadratic_roots(f.e * d2, f.a + f.b * d2 * d2, f.c * d2);
}

namespace detail {

/// Root of A x^2 + B x + C (C vanishing with the input) on the branch through the flat state.
/// `sign` is the sign of B at the flat state.
inline FoldValue flat_branch_root(double A, double B, double C, double sign) {
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) throw std::domain_error("no real fold: motion limit reached");
  const double sq = std::sqrt(disc);
  const double den = -B - sign * sq;
  if (std::abs(den) >= std::abs(-B + sign * sq) || A == 0.0) {
    if (den == 0.0) return FoldValue::at_infinity();
    return {2.0 * C / den, false};
  }
  return {(-B + sign * sq) / (2.0 * A), false};
}

}  // namespace detail

/// d1 on the branch of the motion through the flat state, given d2.
inline FoldValue flat_branch_d1(double w1, double w2, double w3, double d2) {
  const OddForm f = cyl_odd_form(w1, w2, w3);
  return detail::flat_branch_root(f.e * d2, f.a + f.b * d2 * d2, f.c * d2, f.a >= 0 ? 1.0 : -1.0);
}

/// d2 on the branch through the flat state, given d1.
inline FoldValue flat_branch_d2(double w1, double w2, double w3, double d1) {
  const OddForm f = cyl_odd_form(w1, w2, w3);
  return detail::flat_branch_root(f.b * d1, f.c + f.e * d1 * d1, f.a * d1, f.c >= 0 ? 1.0 : -1.0);
}

// ---------------------------------------------------------------------------------------------
// Strip

/// Open strip of n faces between parallel fold lines r_0..r_n (r_0 and r_n are boundaries).
/// Face k carries the edge angles (σ, τ) of germ entry ((k-1) mod 3) + 1, so every three
/// consecutive faces form a germ with the same ratio tan σ / tan τ.
struct CylinderStrip {
  CylinderConfig config;
  int n = 0;
  std::vector<double> folds;                 // folds[k] at r_k, k = 1..n-1 (index 0 unused)
  std::vector<Eigen::Isometry3d> placement;  // placement[k] of face k, k = 1..n
  std::vector<double> xa, xb;                // development x of the section points on r_k

  /// Point of the developed line r_k at abscissa x, placed in space.
  Vec3 point_on_line(int k, double x) const {
    const int face = std::clamp(k, 1, n);
    return placement[static_cast<std::size_t>(face)] * Vec3(x, (k - 1) * config.spacing, 0.0);
  }
  Vec3 alpha_point(int k) const { return point_on_line(k, xa[static_cast<std::size_t>(k)]); }
  Vec3 beta_point(int k) const { return point_on_line(k, xb[static_cast<std::size_t>(k)]); }
};

namespace detail {

inline double face_w(const CylinderConfig& c, int k, bool alpha) {
  const int idx = (k - 1) % 3;
  if (alpha) return idx == 0 ? c.s1 : idx == 1 ? c.s2 : c.s3;
  return idx == 0 ? c.t1 : idx == 1 ? c.t2 : c.t3;
}

inline Eigen::Isometry3d line_rotation(double y, double angle) {
  Eigen::Isometry3d t = Eigen::Isometry3d::Identity();
  t.translate(Vec3(0.0, y, 0.0));
  t.rotate(Eigen::AngleAxisd(angle, Vec3::UnitX()));
  t.translate(Vec3(0.0, -y, 0.0));
  return t;
}

}  // namespace detail

/// Folds of the whole chain when the fold at r_2 (between faces 2 and 3) is `d2`.
inline std::vector<double> cylinder_chain_folds(const CylinderConfig& c, int n, FoldValue d2) {
  if (n < 3) throw std::invalid_argument("cylinder strip needs n >= 3");
  auto bad = validate_cylinder(c);
  if (!bad.empty()) throw SynthesisError("excluded case: " + bad.front());
  std::vector<double> folds(static_cast<std::size_t>(n), 0.0);
  if (d2.infinite) throw std::domain_error("fold at infinity (δ₂=π) is outside the parametrized motion");
  const FoldValue d1 = flat_branch_d1(c.s1, c.s2, c.s3, d2.tan);
  folds[1] = -d1.angle();
  folds[2] = d2.angle();
  // Triple (k, k+1, k+2) has middle face k+1: germ folds δ1 = -fold_k, δ2 = fold_{k+1}.
  for (int k = 2; k + 1 < n; ++k) {
    const double w1 = detail::face_w(c, k, true), w2 = detail::face_w(c, k + 1, true), w3 = detail::face_w(c, k + 2, true);
    const FoldValue in = FoldValue::from_angle(-folds[static_cast<std::size_t>(k)]);
    if (in.infinite) throw std::domain_error("face " + std::to_string(k) + ": fold at infinity");
    const FoldValue out = flat_branch_d2(w1, w2, w3, in.tan);
    folds[static_cast<std::size_t>(k) + 1] = out.angle();
  }
  return folds;
}

/// Strip of n faces with parallel fold lines at the configured spacing, at germ fold d2.
inline CylinderStrip build_prism_strip(const CylinderConfig& c, int n, FoldValue d2) {
  CylinderStrip s;
  s.config = c;
  s.n = n;
  s.folds = cylinder_chain_folds(c, n, d2);
  const double w = c.spacing;
  const auto N = static_cast<std::size_t>(n);
  s.placement.assign(N + 1, Eigen::Isometry3d::Identity());
  s.placement[1] = detail::line_rotation(0.0, -s.folds[1]);
  for (std::size_t k = 2; k < N; ++k)
    s.placement[k + 1] = s.placement[k] * detail::line_rotation(static_cast<double>(k - 1) * w, s.folds[k]);

  // Development: the edge of face k runs from r_{k-1} to r_k with x offset w cot σ.
  s.xa.assign(N + 1, 0.0);
  s.xb.assign(N + 1, 0.0);
  auto cot_of = [](double t) { return std::cos(from_half_tan(t)) / std::sin(from_half_tan(t)); };
  s.xa[1] = 1.0;
  s.xa[0] = s.xa[1] - w * cot_of(detail::face_w(c, 1, true));
  for (int k = 2; k <= n; ++k)
    s.xa[static_cast<std::size_t>(k)] = s.xa[static_cast<std::size_t>(k) - 1] + w * cot_of(detail::face_w(c, k, true));
  s.xb[2] = 0.0;
  s.xb[1] = s.xb[2] - w * cot_of(detail::face_w(c, 2, false));
  s.xb[0] = s.xb[1] - w * cot_of(detail::face_w(c, 1, false));
  for (int k = 3; k <= n; ++k)
    s.xb[static_cast<std::size_t>(k)] = s.xb[static_cast<std::size_t>(k) - 1] + w * cot_of(detail::face_w(c, k, false));
  return s;
}

inline CylinderStrip build_prism_strip(const CylinderConfig& c, int n, double d2) {
  return build_prism_strip(c, n, FoldValue{d2, false});
}

inline std::vector<Vec3> cylinder_alpha_points(const CylinderStrip& s) {
  std::vector<Vec3> p;
  for (int k = 0; k <= s.n; ++k) p.push_back(s.alpha_point(k));
  return p;
}

inline std::vector<Vec3> cylinder_beta_points(const CylinderStrip& s) {
  std::vector<Vec3> p;
  for (int k = 0; k <= s.n; ++k) p.push_back(s.beta_point(k));
  return p;
}

/// Quad mesh: one quad per face, each fold line cut to [xmin - 1, xmax + 1].
inline Mesh cylinder_mesh(const CylinderStrip& s) {
  double lo = 0.0, hi = 0.0;
  for (int k = 0; k <= s.n; ++k) {
    const auto K = static_cast<std::size_t>(k);
    lo = std::min({lo, s.xa[K], s.xb[K]});
    hi = std::max({hi, s.xa[K], s.xb[K]});
  }
  lo -= 1.0;
  hi += 1.0;
  Mesh m;
  for (int k = 0; k <= s.n; ++k) {
    m.vertices.push_back(s.point_on_line(k, lo));
    m.vertices.push_back(s.point_on_line(k, hi));
  }
  for (int k = 1; k <= s.n; ++k) m.faces.push_back({2 * (k - 1), 2 * (k - 1) + 1, 2 * k + 1, 2 * k});
  return m;
}

struct CylinderResiduals {
  double alpha_planarity = 0.0;
  double beta_planarity = 0.0;
  double edge_length = 0.0;   // max relative change of section edge lengths against the development
  double coplanarity = 0.0;   // max |D1|, |D2| over the germ triples
};

inline CylinderResiduals cylinder_residuals(const CylinderStrip& s) {
  CylinderResiduals r;
  r.alpha_planarity = planarity_residual(cylinder_alpha_points(s));
  r.beta_planarity = planarity_residual(cylinder_beta_points(s));
  const double w = s.config.spacing;
  for (int k = 1; k <= s.n; ++k) {
    const auto K = static_cast<std::size_t>(k);
    const double la0 = std::hypot(s.xa[K] - s.xa[K - 1], w), lb0 = std::hypot(s.xb[K] - s.xb[K - 1], w);
    r.edge_length = std::max(r.edge_length, std::abs((s.alpha_point(k) - s.alpha_point(k - 1)).norm() - la0) / la0);
    r.edge_length = std::max(r.edge_length, std::abs((s.beta_point(k) - s.beta_point(k - 1)).norm() - lb0) / lb0);
  }
  for (int k = 1; k + 2 <= s.n; ++k) {
    const double d1 = -std::tan(0.5 * s.folds[static_cast<std::size_t>(k)]);
    const double d2 = std::tan(0.5 * s.folds[static_cast<std::size_t>(k) + 1]);
    using detail::face_w;
    const auto& c = s.config;
    r.coplanarity = std::max(r.coplanarity, std::abs(eval_cyl_D(face_w(c, k, true), face_w(c, k + 1, true),
                                                                 face_w(c, k + 2, true), d1, d2)));
    r.coplanarity = std::max(r.coplanarity, std::abs(eval_cyl_D(face_w(c, k, false), face_w(c, k + 1, false),
                                                                 face_w(c, k + 2, false), d1, d2)));
  }
  return r;
}

}  // namespace conefold
