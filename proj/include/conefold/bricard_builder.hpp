#pragma once

// Closed discrete cones grown from a synthesized germ, their sections and their flexion.

#include "conefold/core_geometry.hpp"
#include "conefold/discrete_cone.hpp"
#include "conefold/mesh.hpp"
#include "conefold/section.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conefold {

/// Replacement opening angles for the first and last face. A flip reflects the face about
/// its inner ruling, which flips the sign of the opening angle.
struct EndFaces {
  std::optional<double> angle0, anglen;
  bool flip0 = false, flipn = false;
};

/// The intrinsic data of a strip: development and material section distances. Shared by all
/// fold states of one strip.
struct StripReference {
  ConfigD config;
  int n = 0;
  FoldPair state;               // fold state at which the mirror construction was run
  std::vector<double> theta;    // theta[k] = opening angle of face k (between r_{k-1}, r_k), k = 1..n
  double c1 = 0.0, c2 = 0.0;    // 0 or pi: offsets between germ folds and chain folds
  std::vector<double> rho_a;    // alpha section point a_i = rho_a[i] r_i, i = 0..n
  std::vector<double> rho_b;
  EndFaces ends;
};

struct ConeStrip {
  std::shared_ptr<const StripReference> ref;
  FoldPair state;
  std::vector<Vec3> rulings;    // r_0..r_n, unit; vertex V at the origin
  std::vector<Vec3> normals;    // normals[k] of face k, k = 1..n (index 0 unused)
  std::vector<double> folds;    // folds[k] = signed dihedral at r_k, k = 1..n-1 (index 0 unused)

  int n() const { return ref->n; }
  const ConfigD& config() const { return ref->config; }
  Vec3 alpha_point(int i) const { return ref->rho_a[static_cast<std::size_t>(i)] * rulings[static_cast<std::size_t>(i)]; }
  Vec3 beta_point(int i) const { return ref->rho_b[static_cast<std::size_t>(i)] * rulings[static_cast<std::size_t>(i)]; }
};

namespace detail {

inline Mat3 axis_rotation(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

/// Germ-based normals of the two cutting planes at a fold state.
inline std::pair<Vec3, Vec3> germ_plane_normals(const ConfigD& c, const FoldPair& f) {
  const GermVectors g = germ_vectors(c, f);
  return {g.A1s.cross(g.A2), g.B1s.cross(g.B2)};
}

inline Vec3 beta_anchor(const ConfigD& c) { return planar_dir(from_half_tan(c.m)); }

/// Rulings of the mirror construction: r1, r2 from the germ, r0 and r3.. by reflection in omega.
inline std::vector<Vec3> mirror_rulings(const ConfigD& c, int n, const Vec3& omega) {
  std::vector<Vec3> r(static_cast<std::size_t>(n) + 1);
  r[1] = Vec3::UnitX();
  r[2] = beta_anchor(c);
  r[0] = reflect(omega, r[2]);
  for (int i = 3; i <= n; ++i) r[static_cast<std::size_t>(i)] = reflect(omega, r[static_cast<std::size_t>(i) - 2]);
  return r;
}

inline double chain_fold(int k, double f1, double f2) {
  switch (k % 4) {
    case 1: return f1;
    case 2: return f2;
    case 3: return -f1;
    default: return -f2;
  }
}

/// Forward kinematics from the development. Face 2 stays in the xy-plane.
inline ConeStrip place(std::shared_ptr<const StripReference> ref, const FoldPair& state) {
  const int n = ref->n;
  const auto N = static_cast<std::size_t>(n);
  std::vector<double> phi(N + 1);
  phi[1] = 0.0;
  for (std::size_t k = 2; k <= N; ++k) phi[k] = phi[k - 1] + ref->theta[k];
  phi[0] = -ref->theta[1];

  const double f1 = -state.d1.angle() + ref->c1;
  const double f2 = state.d2.angle() + ref->c2;

  ConeStrip s;
  s.ref = ref;
  s.state = state;
  s.rulings.resize(N + 1);
  s.normals.resize(N + 1);
  s.folds.assign(N, 0.0);
  for (int k = 1; k < n; ++k) s.folds[static_cast<std::size_t>(k)] = chain_fold(k, f1, f2);

  // T[k] places face k; T[k+1] = T[k] * Rot(dev r_k, fold_k), T[2] = I.
  std::vector<Mat3> T(N + 1);
  T[2] = Mat3::Identity();
  T[1] = axis_rotation(planar_dir(phi[1]), -s.folds[1]);
  for (std::size_t k = 2; k < N; ++k) T[k + 1] = T[k] * axis_rotation(planar_dir(phi[k]), s.folds[k]);
  s.rulings[0] = T[1] * planar_dir(phi[0]);
  for (std::size_t k = 1; k <= N; ++k) {
    s.rulings[k] = (T[k] * planar_dir(phi[k])).normalized();
    s.normals[k] = T[k] * Vec3::UnitZ();
  }
  return s;
}

/// Sine of the angle between the section planes; 0 when a normal degenerates.
inline double plane_sine(const Vec3& na, const Vec3& nb) {
  const double ca = na.norm(), cb = nb.norm();
  if (ca < 1e-9 || cb < 1e-9) return 0.0;
  return na.cross(nb).norm() / (ca * cb);
}

inline bool non_flat(const Vec3& na, const Vec3& nb, double min_sine = 1e-2) { return plane_sine(na, nb) > min_sine; }

}  // namespace detail

/// Builds the intrinsic data of the strip by running the mirror construction at `ref_state`.
/// Throws SynthesisError naming the face index when a ruling misses a section plane.
inline std::shared_ptr<const StripReference> make_reference(const ConfigD& c, int n, const FoldPair& ref_state,
                                                            const EndFaces& ends = {}) {
  if (n < 3) throw std::invalid_argument("strip needs n >= 3");
  auto [na, nb] = detail::germ_plane_normals(c, ref_state);
  // The construction only needs ω = α ∩ β to be defined; its error grows like 1/sin(α, β).
  if (!detail::non_flat(na, nb, 1e-6)) throw SynthesisError("reference fold state is flat: α ∥ β");
  const Vec3 omega = na.cross(nb).normalized();
  const auto r = detail::mirror_rulings(c, n, omega);

  auto ref = std::make_shared<StripReference>();
  ref->config = c;
  ref->n = n;
  ref->state = ref_state;
  ref->ends = ends;
  ref->theta.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k)
    ref->theta[static_cast<std::size_t>(k)] = angle_between(r[static_cast<std::size_t>(k) - 1], r[static_cast<std::size_t>(k)]);
  const double mu = from_half_tan(c.m);
  ref->theta[2] = mu;

  const GermVectors g = germ_vectors(c, ref_state);
  const Vec3 n1 = r[0].cross(r[1]).normalized();
  const Vec3 n3 = r[2].cross(r[3]).normalized();
  ref->c1 = n1.dot(g.R1 * Vec3::UnitZ()) > 0.0 ? 0.0 : kPi;
  ref->c2 = n3.dot(g.R2 * Vec3::UnitZ()) > 0.0 ? 0.0 : kPi;

  if (ends.angle0) {
    if (!(*ends.angle0 > 0.0 && *ends.angle0 < kPi)) throw std::invalid_argument("end opening angle must lie in (0, π)");
    ref->theta[1] = *ends.angle0;
  }
  if (ends.anglen) {
    if (!(*ends.anglen > 0.0 && *ends.anglen < kPi)) throw std::invalid_argument("end opening angle must lie in (0, π)");
    ref->theta[static_cast<std::size_t>(n)] = *ends.anglen;
  }
  if (ends.flip0) ref->theta[1] = -ref->theta[1];
  if (ends.flipn) ref->theta[static_cast<std::size_t>(n)] = -ref->theta[static_cast<std::size_t>(n)];

  // Material distances along the rulings, measured on the placed reference strip.
  ConeStrip placed = detail::place(ref, ref_state);
  const Vec3 ua = na.normalized(), ub = nb.normalized();
  const double ha = ua.dot(Vec3::UnitX());
  const double hb = ub.dot(detail::beta_anchor(c));
  ref->rho_a.resize(static_cast<std::size_t>(n) + 1);
  ref->rho_b.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const Vec3& ri = placed.rulings[static_cast<std::size_t>(i)];
    const double ca = ua.dot(ri), cb = ub.dot(ri);
    if (std::abs(ca) < 1e-3 || std::abs(cb) < 1e-3)
      throw SynthesisError("face " + std::to_string(i) + ": ruling r" + std::to_string(i) +
                           " is parallel to a section plane");
    ref->rho_a[static_cast<std::size_t>(i)] = ha / ca;
    ref->rho_b[static_cast<std::size_t>(i)] = hb / cb;
  }
  return ref;
}

/// The strip of `ref` placed at a fold state. Flat states and δ = π are allowed.
inline ConeStrip place_strip(std::shared_ptr<const StripReference> ref, const FoldPair& state) {
  return detail::place(std::move(ref), state);
}

/// Picks a generic fold state on the motion of a synthesized config for the mirror construction.
inline std::shared_ptr<const StripReference> reference_for(const ConfigD& c, const BranchSelector& sel, int n,
                                                           const EndFaces& ends = {}) {
  const CouplingLaw law = detect_coupling(c, sel);
  std::string last = "no generic reference fold state";
  // Candidates in order of decreasing angle between α and β, the conditioning of ω.
  std::vector<std::pair<double, FoldPair>> candidates;
  for (double d1 : {0.35, -0.45, 0.8, -1.2, 1.6, 0.15, -0.7, 2.5, 0.04, -6.0, 0.01, 25.0}) {
    FoldValue d2;
    try {
      d2 = couple(law, {d1, false});
    } catch (const std::runtime_error& e) {
      last = e.what();
      continue;
    }
    if (d2.infinite || std::abs(d2.tan) > 1e3 || std::abs(d2.tan) < 1e-3) continue;
    const FoldPair f{{d1, false}, d2};
    const auto [na, nb] = detail::germ_plane_normals(c, f);
    candidates.emplace_back(detail::plane_sine(na, nb), f);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [sine, f] : candidates) {
    try {
      return make_reference(c, n, f, ends);
    } catch (const SynthesisError& e) {
      last = e.what();
    }
  }
  throw SynthesisError(last);
}

/// Cone strip with n + 1 rulings for a synthesized config, at fold d1 on its motion.
inline ConeStrip build_strip(const ConfigD& c, const BranchSelector& sel, int n, FoldValue d1, const EndFaces& ends = {}) {
  auto ref = reference_for(c, sel, n, ends);
  const FoldValue d2 = couple(detect_coupling(c, sel), d1);
  return place_strip(std::move(ref), FoldPair{d1, d2});
}

inline ConeStrip build_strip(const ConfigD& c, const BranchSelector& sel, int n, double d1) {
  return build_strip(c, sel, n, FoldValue{d1, false});
}

/// Same strip with new end faces; the fold state is kept.
inline ConeStrip extend_end_faces(const ConeStrip& s, double angle0, double anglen, bool flip0, bool flipn) {
  EndFaces e;
  e.angle0 = angle0;
  e.anglen = anglen;
  e.flip0 = flip0;
  e.flipn = flipn;
  auto ref = make_reference(s.config(), s.n(), s.ref->state, e);
  return place_strip(std::move(ref), s.state);
}

// ---------------------------------------------------------------------------------------------
// Sections

inline std::vector<Vec3> alpha_points(const ConeStrip& s) {
  std::vector<Vec3> p;
  for (int i = 0; i <= s.n(); ++i) p.push_back(s.alpha_point(i));
  return p;
}

inline std::vector<Vec3> beta_points(const ConeStrip& s) {
  std::vector<Vec3> p;
  for (int i = 0; i <= s.n(); ++i) p.push_back(s.beta_point(i));
  return p;
}

inline SectionPolygon alpha_section(const ConeStrip& s) { return make_section(alpha_points(s)); }
inline SectionPolygon beta_section(const ConeStrip& s) { return make_section(beta_points(s)); }

/// Distance along a ruling of the point c with cross-ratio (a, b, c, V) = lambda.
inline double pencil_distance(double rho_a, double rho_b, double lambda) {
  if (lambda == 1.0) throw std::domain_error("cross-ratio λ = 1 maps every point to the vertex");
  const double den = lambda * rho_a - rho_b;
  if (den == 0.0 || !std::isfinite(lambda)) throw std::domain_error("cross-ratio λ sends a section point to infinity");
  return rho_a * rho_b * (lambda - 1.0) / den;
}

/// Section by the plane of the pencil through α ∩ β with cross-ratio lambda.
/// lambda = 0 gives the α-section, lambda → ∞ the β-section.
inline SectionPolygon pencil_section(const ConeStrip& s, double lambda) {
  std::vector<Vec3> p;
  for (int i = 0; i <= s.n(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    p.push_back(pencil_distance(s.ref->rho_a[k], s.ref->rho_b[k], lambda) * s.rulings[k]);
  }
  return make_section(std::move(p));
}

/// Distance of the line α ∩ β from the carrier of `sec`, relative to the section diameter.
/// Zero means the carrier belongs to the pencil. Returns 0 when α and β coincide.
inline double pencil_membership(const ConeStrip& s, const SectionPolygon& sec) {
  const Plane a = fit_plane(alpha_points(s));
  const Plane b = fit_plane(beta_points(s));
  const Vec3 dir = a.normal.cross(b.normal);
  if (dir.norm() < 1e-9) return 0.0;
  Eigen::Matrix<double, 3, 3> m;
  m.row(0) = a.normal.transpose();
  m.row(1) = b.normal.transpose();
  m.row(2) = dir.normalized().transpose();
  const Vec3 p0 = m.colPivHouseholderQr().solve(Vec3(a.normal.dot(a.point), b.normal.dot(b.point), 0.0));
  const double diam = std::max(diameter(sec.points), 1e-300);
  return std::max(std::abs(sec.carrier.normal.dot(dir.normalized())), std::abs(sec.carrier.signed_distance(p0)) / diam);
}

// ---------------------------------------------------------------------------------------------
// Mirror plane and closure

/// Plane through V orthogonal to α ∩ β at the strip's fold state.
inline Plane mirror_plane_omega(const ConeStrip& s) {
  auto [na, nb] = detail::germ_plane_normals(s.config(), s.state);
  if (!detail::non_flat(na, nb)) throw std::domain_error("α ∥ β: mirror plane undefined at this fold state");
  return {Vec3::Zero(), na.cross(nb).normalized()};
}

struct AntiparallelogramReport {
  double ruling_period = 0.0;   // max |r_j - r_{j+4}|
  double section_period = 0.0;  // max |a_j - a_{j+4}|, |b_j - b_{j+4}|
  double mirror = std::numeric_limits<double>::quiet_NaN();  // max |r_i - refl(r_{i-2})| and edge-line gaps
  double germ_faces = 0.0;      // r0 in f1 and r3 in f3 of the germ
  double side_pairing = 0.0;    // relative |a1a2| - |a3a4| and |a2a3| - |a4a1| (and b)
  bool crossed = false;         // both 4-gons a1..a4 and b1..b4 are crossed
  bool mirror_defined = false;
  double max_deviation = 0.0;
  bool passed = false;
};

namespace detail {

inline bool segments_cross(const Eigen::Vector2d& p1, const Eigen::Vector2d& p2, const Eigen::Vector2d& q1,
                           const Eigen::Vector2d& q2) {
  auto orient = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    const Eigen::Vector2d u = b - a, v = c - a;
    return u.x() * v.y() - u.y() * v.x();
  };
  const double o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  const double o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  return o1 * o2 < 0.0 && o3 * o4 < 0.0;
}

/// Side pairing deviation and crossing of the 4-gon q[0..3].
inline std::pair<double, bool> quad_shape(const std::array<Vec3, 4>& q) {
  const double l01 = (q[1] - q[0]).norm(), l12 = (q[2] - q[1]).norm();
  const double l23 = (q[3] - q[2]).norm(), l30 = (q[0] - q[3]).norm();
  const double scale = std::max({l01, l12, l23, l30, 1e-300});
  const double pairing = std::max(std::abs(l01 - l23), std::abs(l12 - l30)) / scale;
  const Plane pl = fit_plane({q[0], q[1], q[2], q[3]});
  Vec3 e1 = pl.normal.unitOrthogonal();
  Vec3 e2 = pl.normal.cross(e1);
  std::array<Eigen::Vector2d, 4> p;
  for (int i = 0; i < 4; ++i) p[static_cast<std::size_t>(i)] = {e1.dot(q[static_cast<std::size_t>(i)] - pl.point), e2.dot(q[static_cast<std::size_t>(i)] - pl.point)};
  const bool crossed = segments_cross(p[0], p[1], p[2], p[3]) || segments_cross(p[1], p[2], p[3], p[0]);
  return {pairing, crossed};
}

}  // namespace detail

/// Closure and mirror checks of the strip, with tolerance `tol` on the combined deviation.
inline AntiparallelogramReport verify_antiparallelogram(const ConeStrip& s, double tol = 1e-9) {
  const int n = s.n();
  if (n < 8) throw std::invalid_argument("anti-parallelogram check needs n >= 8");
  AntiparallelogramReport rep;
  const auto& r = s.rulings;
  for (int j = 0; j + 4 <= n; ++j) {
    const auto a = static_cast<std::size_t>(j), b = a + 4;
    rep.ruling_period = std::max(rep.ruling_period, (r[a] - r[b]).norm());
    rep.section_period = std::max(rep.section_period, (s.alpha_point(j) - s.alpha_point(j + 4)).norm());
    rep.section_period = std::max(rep.section_period, (s.beta_point(j) - s.beta_point(j + 4)).norm());
  }

  const GermVectors g = germ_vectors(s.config(), s.state);
  rep.germ_faces = std::max(std::abs(r[0].dot(g.R1 * Vec3::UnitZ())), std::abs(r[3].dot(g.R2 * Vec3::UnitZ())));

  try {
    const Plane omega = mirror_plane_omega(s);
    double dev = 0.0;
    for (int i = 2; i <= n; ++i)
      dev = std::max(dev, (r[static_cast<std::size_t>(i)] - reflect(omega.normal, r[static_cast<std::size_t>(i) - 2])).norm());
    dev = std::max(dev, line_direction_gap(reflect(omega.normal, g.A1s), g.A3s));
    dev = std::max(dev, line_direction_gap(reflect(omega.normal, g.B1s), g.B3s));
    rep.mirror = dev;
    rep.mirror_defined = true;
  } catch (const std::domain_error&) {
    rep.mirror_defined = false;
  }

  auto [pa, ca] = detail::quad_shape({s.alpha_point(1), s.alpha_point(2), s.alpha_point(3), s.alpha_point(4)});
  auto [pb, cb] = detail::quad_shape({s.beta_point(1), s.beta_point(2), s.beta_point(3), s.beta_point(4)});
  rep.side_pairing = std::max(pa, pb);
  rep.crossed = ca && cb;

  rep.max_deviation = std::max({rep.ruling_period, rep.section_period, rep.germ_faces, rep.side_pairing});
  if (rep.mirror_defined) rep.max_deviation = std::max(rep.max_deviation, rep.mirror);
  rep.passed = rep.max_deviation <= tol && rep.crossed;
  return rep;
}

/// Edge lines of the germ against the α- and β-section edges a0a1, a1a2, a2a3 of the strip.
/// Zero means the strip's development reproduces the σ/τ data.
inline double germ_edge_residual(const ConeStrip& s) {
  const GermVectors g = germ_vectors(s.config(), s.state);
  double dev = 0.0;
  const std::array<Vec3, 3> ea{g.A1s, g.A2, g.A3s}, eb{g.B1s, g.B2, g.B3s};
  for (int k = 0; k < 3; ++k) {
    dev = std::max(dev, line_direction_gap(s.alpha_point(k + 1) - s.alpha_point(k), ea[static_cast<std::size_t>(k)]));
    dev = std::max(dev, line_direction_gap(s.beta_point(k + 1) - s.beta_point(k), eb[static_cast<std::size_t>(k)]));
  }
  return dev;
}

// ---------------------------------------------------------------------------------------------
// Mesh and sweep

/// Triangle fan from V = origin with rulings of length `length`.
inline Mesh strip_mesh(const ConeStrip& s, double length = 2.0) {
  Mesh m;
  m.vertices.push_back(Vec3::Zero());
  for (const auto& r : s.rulings) m.vertices.push_back(length * r);
  for (int k = 1; k <= s.n(); ++k) m.faces.push_back({0, k, k + 1});
  return m;
}

/// Default cross-ratios for pencil checks.
inline std::vector<double> default_lambdas() { return {-3.0, -1.5, -0.5, 0.25, 0.5, 2.0, 3.0, 5.0, -7.0, 11.0}; }

struct SweepResiduals {
  double opening_angle = 0.0;  // max |θ_k - θ_k(reference)|
  double edge_length = 0.0;    // max relative change of section edge lengths
  double alpha_planarity = 0.0;
  double beta_planarity = 0.0;
  double pencil_planarity = 0.0;
  double pencil_membership = 0.0;
  double flatness = 0.0;       // max |n_k x e_z|; zero at a flat state
};

struct SweepFrame {
  FoldPair fold;
  bool skipped = false;
  std::string note;
  ConeStrip strip;
  Mesh mesh;
  SweepResiduals residuals;
};

/// Isometry and planarity residuals of a placed strip against its reference development.
inline SweepResiduals strip_residuals(const ConeStrip& s, const std::vector<double>& lambdas = default_lambdas()) {
  SweepResiduals res;
  const auto ref_strip = place_strip(s.ref, s.ref->state);
  for (int k = 1; k <= s.n(); ++k) {
    const auto K = static_cast<std::size_t>(k);
    res.opening_angle = std::max(res.opening_angle, std::abs(angle_between(s.rulings[K - 1], s.rulings[K]) -
                                                             std::abs(s.ref->theta[K])));
    for (bool alpha : {true, false}) {
      auto pt = [&](const ConeStrip& x, int i) { return alpha ? x.alpha_point(i) : x.beta_point(i); };
      const double l0 = (pt(ref_strip, k) - pt(ref_strip, k - 1)).norm();
      const double l = (pt(s, k) - pt(s, k - 1)).norm();
      res.edge_length = std::max(res.edge_length, std::abs(l - l0) / std::max(l0, 1e-300));
    }
    res.flatness = std::max(res.flatness, s.normals[K].cross(Vec3::UnitZ()).norm());
  }
  res.alpha_planarity = planarity_residual(alpha_points(s));
  res.beta_planarity = planarity_residual(beta_points(s));
  for (double lam : lambdas) {
    SectionPolygon sec;
    try {
      sec = pencil_section(s, lam);
    } catch (const std::domain_error&) {
      continue;
    }
    res.pencil_planarity = std::max(res.pencil_planarity, sec.planarity);
    res.pencil_membership = std::max(res.pencil_membership, pencil_membership(s, sec));
  }
  return res;
}

/// Rebuilds the strip at every d1 sample on the coupled motion. Samples where the coupling is
/// singular are kept as skipped frames with a note. Runs sequentially; frames are independent.
inline std::vector<SweepFrame> flex_sweep(const ConeStrip& s, const BranchSelector& sel,
                                          const std::vector<FoldValue>& d1_samples,
                                          const std::vector<double>& lambdas = default_lambdas()) {
  const CouplingLaw law = detect_coupling(s.config(), sel);
  std::vector<SweepFrame> out;
  out.reserve(d1_samples.size());
  for (const FoldValue& d1 : d1_samples) {
    SweepFrame f;
    f.fold.d1 = d1;
    try {
      f.fold.d2 = couple(law, d1);
    } catch (const std::runtime_error& e) {
      f.skipped = true;
      f.note = e.what();
      f.strip = s;
      out.push_back(std::move(f));
      continue;
    }
    f.strip = place_strip(s.ref, f.fold);
    f.mesh = strip_mesh(f.strip);
    f.residuals = strip_residuals(f.strip, lambdas);
    out.push_back(std::move(f));
  }
  return out;
}

/// `count` d1 samples spread over the motion: tangents of evenly spaced angles in (-π, π),
/// plus the two flat endpoints 0 and ∞ when `include_flat` is set.
inline std::vector<FoldValue> sweep_samples(int count, bool include_flat) {
  std::vector<FoldValue> out;
  for (int i = 0; i < count; ++i) {
    const double ang = -kPi + (2.0 * kPi) * (i + 0.5) / count;
    out.push_back({std::tan(0.5 * ang), false});
  }
  if (include_flat) {
    out.push_back({0.0, false});
    out.push_back(FoldValue::at_infinity());
  }
  return out;
}

}  // namespace conefold
