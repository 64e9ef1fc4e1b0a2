#pragma once

// Closed-form solution of the three-face conical germ.

#include "conefold/core_geometry.hpp"
#include "conefold/exact.hpp"
#include "conefold/poly_elim.hpp"
#include "conefold/section.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace conefold {

/// Raised when a synthesis step has no admissible solution. The message names the factor
/// or excluded case responsible.
struct SynthesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------------------------
// Factors

/// Coefficients {a2, a1, a0} of S_u (or T_v) viewed as a quadratic in w2.
/// S_1 carries +w2(w1-w3)(w1w3-1) as its constant-in-m term; with the opposite sign the
/// factor does not divide the algebraized determinant.
template <class T>
std::array<T, 3> factor_quadratic(int u, const T& m, const T& w1, const T& w3) {
  const T one(1);
  const T lead = w1 * (w3 * w3 + one) * m;
  const T plus = (w1 + w3) * (w1 * w3 + one);
  const T minus = (w1 - w3) * (w1 * w3 - one);
  if (u == 1) return {T(-lead), T(plus * m * m + minus), lead};
  if (u == 2) return {lead, T(minus * m * m + plus), T(-lead)};
  throw std::invalid_argument("factor index must be 1 or 2");
}

template <class T>
T eval_factor(int u, const T& m, const T& w1, const T& w2, const T& w3) {
  auto q = factor_quadratic(u, m, w1, w3);
  return (q[0] * w2 + q[1]) * w2 + q[2];
}

template <class T>
T eval_S(int u, const SectionConfig<T>& c) {
  return eval_factor(u, c.m, c.s1, c.s2, c.s3);
}

template <class T>
T eval_T(int v, const SectionConfig<T>& c) {
  return eval_factor(v, c.m, c.t1, c.t2, c.t3);
}

/// M_{u,v} or N_{u,v} as {coefficient of t3, remainder}; the factors are affine in t3.
template <class T>
std::array<T, 2> mn_affine_in_t3(const BranchSelector& sel, const T& s1, const T& s3, const T& t1) {
  const T one(1);
  const bool same = sel.u == sel.v;
  if (same && sel.mn == Coupling::M)
    return {T(-(s1 * s3) - s1 * t1 + s3 * t1 - one), T(s1 * s3 * t1 - s1 + s3 + t1)};
  if (same)
    return {T(s1 * s3 - s1 * t1 - s3 * t1 - one), T(s1 * s3 * t1 + s1 + s3 - t1)};
  if (sel.mn == Coupling::M)
    return {T(s1 * s3 * t1 - s1 + s3 + t1), T(s1 * s3 + s1 * t1 - s3 * t1 + one)};
  return {T(s1 * s3 * t1 + s1 + s3 - t1), T(-(s1 * s3) + s1 * t1 + s3 * t1 + one)};
}

template <class T>
T eval_MN(const BranchSelector& sel, const T& s1, const T& s3, const T& t1, const T& t3) {
  sel.validate();
  auto a = mn_affine_in_t3(sel, s1, s3, t1);
  return a[0] * t3 + a[1];
}

/// Fold-coupling factor as a coefficient pair. P: first * d1 + second * d2.
/// Q: first * d1 * d2 + second.
enum class CouplingType { P, Q };

template <class T>
std::array<T, 2> coupling_pair(CouplingType type, int u, const T& m, const T& w1, const T& w3) {
  const T one(1);
  if (type == CouplingType::P) {
    if (u == 1) return {T(w1 * w3 + w1 * m + w3 * m - one), T(-(w1 * w3 - w1 * m - w3 * m - one))};
    return {T(w1 * w3 * m - w1 - w3 - m), T(w1 * w3 * m + w1 + w3 - m)};
  }
  if (u == 1) return {T(w1 * w3 * m + w1 - w3 + m), T(-(w1 * w3 * m - w1 + w3 + m))};
  return {T(w1 * w3 - w1 * m + w3 * m + one), T(w1 * w3 + w1 * m - w3 * m + one)};
}

inline double eval_coupling_factor(CouplingType type, int u, double m, double w1, double w3, double d1, double d2) {
  auto p = coupling_pair(type, u, m, w1, w3);
  return type == CouplingType::P ? p[0] * d1 + p[1] * d2 : p[0] * d1 * d2 + p[1];
}

// ---------------------------------------------------------------------------------------------
// Trigonometric evaluation

/// Edge directions and rotations of the germ at a fold state, built from the angles.
struct GermVectors {
  double mu = 0.0;
  Mat3 R1, R2;
  Vec3 A1s, A2, A3s;  // alpha edges, A1 and A3 already rotated
  Vec3 B1s, B2, B3s;  // beta edges
};

inline GermVectors germ_vectors(const ConfigD& c, const FoldPair& f) {
  GermVectors g;
  g.mu = from_half_tan(c.m);
  g.R1 = rot_r1(f.d1.angle());
  g.R2 = rot_r2(g.mu, f.d2.angle());
  g.A1s = g.R1 * planar_dir(from_half_tan(c.s1));
  g.A2 = planar_dir(from_half_tan(c.s2));
  g.A3s = g.R2 * planar_dir(g.mu + from_half_tan(c.s3));
  g.B1s = g.R1 * planar_dir(from_half_tan(c.t1));
  g.B2 = planar_dir(from_half_tan(c.t2));
  g.B3s = g.R2 * planar_dir(g.mu + from_half_tan(c.t3));
  return g;
}

inline double eval_D1(const ConfigD& c, const FoldPair& f) {
  auto g = germ_vectors(c, f);
  return det3(g.A1s, g.A2, g.A3s);
}

inline double eval_D2(const ConfigD& c, const FoldPair& f) {
  auto g = germ_vectors(c, f);
  return det3(g.B1s, g.B2, g.B3s);
}

inline FoldPair fold_pair(double d1, double d2) { return {{d1, false}, {d2, false}}; }

// ---------------------------------------------------------------------------------------------
// Solvers

/// Real roots of a2 x^2 + a1 x + a0 in ascending order. A vanishing leading coefficient
/// gives the single affine root; no real root gives an empty result.
inline std::vector<double> real_quadratic_roots(double a2, double a1, double a0) {
  const double scale = std::max({std::abs(a2), std::abs(a1), std::abs(a0)});
  if (scale == 0.0) return {};
  if (std::abs(a2) <= 1e-15 * scale) {
    if (a1 == 0.0) return {};
    return {-a0 / a1};
  }
  const double disc = a1 * a1 - 4.0 * a2 * a0;
  if (disc < 0.0) return {};
  const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
  std::vector<double> r;
  if (q == 0.0) {
    r = {0.0, 0.0};
  } else {
    r = {q / a2, a0 / q};
  }
  std::sort(r.begin(), r.end());
  return r;
}

inline std::vector<double> solve_T_for_t2(int v, double m, double t1, double t3) {
  auto q = factor_quadratic(v, m, t1, t3);
  return real_quadratic_roots(q[0], q[1], q[2]);
}

inline std::vector<double> solve_S_for_s2(int u, double m, double s1, double s3) {
  auto q = factor_quadratic(u, m, s1, s3);
  return real_quadratic_roots(q[0], q[1], q[2]);
}

/// The t3 making M_{u,v} (or N_{u,v}) vanish.
template <class T>
T solve_MN_for_t3(const BranchSelector& sel, const T& s1, const T& s3, const T& t1) {
  sel.validate();
  auto a = mn_affine_in_t3(sel, s1, s3, t1);
  bool vanishing;
  if constexpr (is_exact_v<T>) {
    vanishing = conefold::is_zero(a[0]);
  } else {
    vanishing = std::abs(a[0]) <= 1e-14 * (1.0 + std::abs(a[1]));
  }
  if (vanishing) throw SynthesisError("t₃ at infinity (τ₃ = π), reparametrize");
  return T(-a[1] / a[0]);
}

// ---------------------------------------------------------------------------------------------
// Exclusions

namespace detail {

template <class T>
bool excl_zero(const T& x, double scale) {
  if constexpr (is_exact_v<T>)
    return conefold::is_zero(x);
  else
    return std::abs(x) <= 1e-12 * scale;
}

inline double mag(double x) { return 1.0 + std::abs(x); }
template <class T>
double mag(const T&) {
  return 1.0;
}

template <class T>
void side_exclusions(std::vector<std::string>& out, const char* letter, const T& m, const T& w1, const T& w2,
                     const T& w3) {
  const std::string L(letter);
  const T one(1);
  if (excl_zero(w1, 1.0)) out.push_back(L + "₁ along r₁");
  if (excl_zero(w3, 1.0)) out.push_back(L + "₃ along r₂");
  if (excl_zero(w2, 1.0)) out.push_back(L + "₂ along r₁");
  if (excl_zero(T(w2 - m), mag(w2) + mag(m))) out.push_back(L + "₂ along r₂");
  if (excl_zero(T(m * w2 + one), mag(m) * mag(w2))) out.push_back(L + "₂ opposite r₂");
  const double sc = mag(w1) * mag(w2);
  if (excl_zero(T(w1 - w2), sc)) out.push_back(L + "₁ ∥ " + L + "₂: δ₁=0 coincidence");
  if (excl_zero(T(w1 * w2 + one), sc)) out.push_back(L + "₁ ∥ " + L + "₂: δ₁=0 coincidence, opposite orientation");
  if (excl_zero(T(w1 + w2), sc)) out.push_back(L + "₁ ∥ " + L + "₂: δ₁=π coincidence");
  if (excl_zero(T(w1 * w2 - one), sc)) out.push_back(L + "₁ ∥ " + L + "₂: δ₁=π coincidence, opposite orientation");
}

}  // namespace detail

/// Violations of the excluded cases, as labels. Empty for an admissible configuration.
template <class T>
std::vector<std::string> validate_exclusions(const SectionConfig<T>& c) {
  std::vector<std::string> out;
  if constexpr (!is_exact_v<T>) {
    for (double x : {c.m, c.s1, c.s2, c.s3, c.t1, c.t2, c.t3})
      if (!std::isfinite(x)) {
        out.push_back("non-finite parameter (angle π)");
        return out;
      }
  }
  if (detail::excl_zero(c.m, 1.0)) out.push_back("m = 0: parallel fold lines");
  detail::side_exclusions(out, "A", c.m, c.s1, c.s2, c.s3);
  detail::side_exclusions(out, "B", c.m, c.t1, c.t2, c.t3);
  return out;
}

// ---------------------------------------------------------------------------------------------
// Synthesis

struct FreeParams {
  double m = 0.5, s1 = 2.0, s3 = 1.0 / 3.0, t1 = 3.0;
};

namespace detail {

inline void reject_parallel(double s3, double t3) {
  if (std::abs(s3 - t3) <= 1e-12 * (mag(s3) + mag(t3)) || std::abs(s3 * t3 + 1.0) <= 1e-12 * mag(s3) * mag(t3))
    throw SynthesisError("trivial parallel solution (s₃ = t₃ or s₃t₃ = −1: planes α and β parallel)");
}

inline double pick_unit_root(const std::vector<double>& roots, const char* factor) {
  if (roots.empty()) throw SynthesisError(std::string("branch infeasible: ") + factor + " has no real root");
  for (double r : roots)
    if (std::abs(r) <= 1.0) return r;
  return roots.front();
}

}  // namespace detail

/// Solves M/N for t3, T_v for t2 and S_u for s2. Of the two roots of each quadratic (their
/// product is -1, so both give the same edge line) the one with |x| <= 1 is taken.
inline ConfigD synthesize_config(const BranchSelector& sel, const FreeParams& p) {
  sel.validate();
  for (double x : {p.m, p.s1, p.s3, p.t1})
    if (!std::isfinite(x)) throw SynthesisError("free parameters must be finite");
  if (p.m == 0.0) throw SynthesisError("excluded case: m = 0: parallel fold lines");
  ConfigD c;
  c.m = p.m;
  c.s1 = p.s1;
  c.s3 = p.s3;
  c.t1 = p.t1;
  c.t3 = solve_MN_for_t3(sel, p.s1, p.s3, p.t1);
  detail::reject_parallel(c.s3, c.t3);
  const std::string tname = std::string("T_") + std::to_string(sel.v);
  const std::string sname = std::string("S_") + std::to_string(sel.u);
  c.t2 = detail::pick_unit_root(solve_T_for_t2(sel.v, c.m, c.t1, c.t3), tname.c_str());
  c.s2 = detail::pick_unit_root(solve_S_for_s2(sel.u, c.m, c.s1, c.s3), sname.c_str());
  auto bad = validate_exclusions(c);
  if (!bad.empty()) throw SynthesisError("excluded case: " + bad.front());
  return c;
}

struct ExactFreeParams {
  Rational m, s1, s3, t1;
};

/// Exact synthesis. s2 and t2 are the generators X, Y of Q[X, Y]/(S_u(X), T_v(Y)), so every
/// polynomial identity checked on the result holds for all root choices at once.
inline SectionConfig<ExtNumber> synthesize_exact(const BranchSelector& sel, const ExactFreeParams& p) {
  sel.validate();
  if (p.m == 0) throw SynthesisError("excluded case: m = 0: parallel fold lines");
  const Rational t3 = solve_MN_for_t3<Rational>(sel, p.s1, p.s3, p.t1);
  if (p.s3 == t3 || p.s3 * t3 == -1)
    throw SynthesisError("trivial parallel solution (s₃ = t₃ or s₃t₃ = −1: planes α and β parallel)");
  auto sq = factor_quadratic<Rational>(sel.u, p.m, p.s1, p.s3);
  auto tq = factor_quadratic<Rational>(sel.v, p.m, p.t1, t3);
  if (sq[0] == 0) throw SynthesisError("branch infeasible: S factor vanishes identically in s₂");
  if (tq[0] == 0) throw SynthesisError("branch infeasible: T factor vanishes identically in t₂");

  // Excluded cases for either root: check the quadratic at the forbidden rational values.
  auto hits = [](const std::array<Rational, 3>& q, const Rational& x) {
    return Rational(Rational(q[0] * x + q[1]) * x + q[2]) == 0;
  };
  auto check_side = [&](const std::array<Rational, 3>& q, const Rational& w1, const Rational& w3, const char* L) {
    if (w1 == 0 || w3 == 0) throw SynthesisError(std::string("excluded case: ") + L + "₁ or " + L + "₃ along a fold line");
    const Rational forbidden[] = {p.m, Rational(-1 / p.m), w1, Rational(-1 / w1), Rational(-w1), Rational(1 / w1)};
    for (const Rational& x : forbidden)
      if (hits(q, x))
        throw SynthesisError(std::string("excluded case: ") + L + "₂ coincides with a fold line or with " + L + "₁");
  };
  check_side(sq, p.s1, p.s3, "A");
  check_side(tq, p.t1, t3, "B");

  auto alg = QuadraticAlgebra::from_quadratics(sq[0], sq[1], sq[2], tq[0], tq[1], tq[2]);
  SectionConfig<ExtNumber> c;
  c.m = p.m;
  c.s1 = p.s1;
  c.s2 = ExtNumber::generator_x(alg);
  c.s3 = p.s3;
  c.t1 = p.t1;
  c.t2 = ExtNumber::generator_y(alg);
  c.t3 = t3;
  return c;
}

// ---------------------------------------------------------------------------------------------
// Fold coupling

/// The common factor of the two split determinants. P: c1 d1 + c2 d2 = 0.
/// Q: c1 d1 d2 + c2 = 0.
struct CouplingLaw {
  CouplingType type = CouplingType::P;
  double c1 = 0.0, c2 = 0.0;
};

namespace detail {

inline double factor_scale(int u, double m, double w1, double w2, double w3) {
  auto q = factor_quadratic(u, m, w1, w3);
  return std::abs(q[0]) * w2 * w2 + std::abs(q[1]) * std::abs(w2) + std::abs(q[2]);
}

inline double pair_misalignment(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double na = std::hypot(a[0], a[1]);
  const double nb = std::hypot(b[0], b[1]);
  if (na == 0.0 || nb == 0.0) return 1.0;
  return std::abs(a[0] * b[1] - a[1] * b[0]) / (na * nb);
}

}  // namespace detail

/// Finds which of the P/Q relations is shared by the alpha side (S_u) and the beta side (T_v).
inline CouplingLaw detect_coupling(const ConfigD& c, const BranchSelector& sel) {
  sel.validate();
  constexpr double tol = 1e-9;
  const double rs = std::abs(eval_S(sel.u, c)) / std::max(1e-300, detail::factor_scale(sel.u, c.m, c.s1, c.s2, c.s3));
  const double rt = std::abs(eval_T(sel.v, c)) / std::max(1e-300, detail::factor_scale(sel.v, c.m, c.t1, c.t2, c.t3));
  if (!(rs <= tol && rt <= tol))
    throw std::runtime_error("branch mismatch: configuration does not satisfy S_" + std::to_string(sel.u) +
                             " = T_" + std::to_string(sel.v) + " = 0");
  bool shared[2];
  CouplingLaw laws[2];
  int k = 0;
  for (CouplingType type : {CouplingType::P, CouplingType::Q}) {
    auto ps = coupling_pair(type, sel.u, c.m, c.s1, c.s3);
    auto pt = coupling_pair(type, sel.v, c.m, c.t1, c.t3);
    shared[k] = detail::pair_misalignment(ps, pt) <= tol;
    laws[k] = {type, ps[0], ps[1]};
    ++k;
  }
  if (shared[0] && shared[1]) return sel.mn == Coupling::M ? laws[1] : laws[0];
  if (shared[0]) return laws[0];
  if (shared[1]) return laws[1];
  throw std::runtime_error("branch mismatch: no P/Q factor is common to both sides");
}

/// d2 on the coupling law; may be at infinity.
inline FoldValue couple(const CouplingLaw& law, FoldValue d1) {
  if (law.type == CouplingType::P) {
    if (law.c2 == 0.0) throw std::runtime_error("fold at infinity (δ₂=π)");
    if (d1.infinite) return FoldValue::at_infinity();
    return {-law.c1 * d1.tan / law.c2, false};
  }
  if (d1.infinite) return {0.0, false};
  const double den = law.c1 * d1.tan;
  if (den == 0.0) return FoldValue::at_infinity();
  return {-law.c2 / den, false};
}

/// d2 as a function of d1 along the motion of a synthesized germ.
inline double fold_coupling(const ConfigD& c, const BranchSelector& sel, double d1) {
  FoldValue d2 = couple(detect_coupling(c, sel), {d1, false});
  if (d2.infinite || !std::isfinite(d2.tan)) throw std::runtime_error("fold at infinity (δ₂=π)");
  return d2.tan;
}

/// The two fold states where f1, f2, f3 are coplanar.
inline std::array<FoldPair, 2> flat_states(const ConfigD& c, const BranchSelector& sel) {
  const CouplingLaw law = detect_coupling(c, sel);
  const FoldValue zero{0.0, false};
  const FoldValue inf = FoldValue::at_infinity();
  if (law.type == CouplingType::P) return {FoldPair{zero, zero}, FoldPair{inf, inf}};
  return {FoldPair{zero, inf}, FoldPair{inf, zero}};
}

}  // namespace conefold
