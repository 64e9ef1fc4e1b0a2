#pragma once

// Algebraized coplanarity conditions and the elimination of d1.

#include "conefold/exact.hpp"
#include "conefold/poly.hpp"
#include "conefold/section.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace conefold {

/// Polynomial in d1 whose coefficients are polynomials in d2.
template <class T>
using BiPoly = UniPoly<UniPoly<T>>;

enum class Determinant { D1, D2 };

template <class T>
T eval_bipoly(const BiPoly<T>& p, const T& d1, const T& d2) {
  T acc = T(0);
  for (int i = p.degree(); i >= 0; --i) acc = acc * d1 + p.coeff(i).evaluate(d2);
  return acc;
}

namespace detail {

template <class T>
using BiVec = std::array<BiPoly<T>, 3>;

template <class T>
BiPoly<T> in_d1(std::initializer_list<T> c) {
  std::vector<UniPoly<T>> outer;
  for (const T& x : c) outer.emplace_back(x);
  return BiPoly<T>(std::move(outer));
}

template <class T>
BiPoly<T> in_d2(std::initializer_list<T> c) {
  return BiPoly<T>(UniPoly<T>(c));
}

template <class T>
BiPoly<T> det3(const BiVec<T>& u, const BiVec<T>& v, const BiVec<T>& w) {
  return u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) +
         u[2] * (v[0] * w[1] - v[1] * w[0]);
}

}  // namespace detail

/// det(R1 X1, X2, R2 X3) after the half-angle substitution, multiplied by the positive factor
/// (1+d1^2)(1+d2^2)(1+m^2)(1+w1^2)(1+w2^2)(1+w3^2). X_j are the alpha (D1) or beta (D2) edge
/// directions. Outer variable d1, inner variable d2.
template <class T>
BiPoly<T> coeffs_D(Determinant which, const SectionConfig<T>& c) {
  const T& m = c.m;
  const T& w1 = which == Determinant::D1 ? c.s1 : c.t1;
  const T& w2 = which == Determinant::D1 ? c.s2 : c.t2;
  const T& w3 = which == Determinant::D1 ? c.s3 : c.t3;
  const T one(1), two(2);
  const T zero(0);

  // R1 X1: ((1-w1^2)(1+d1^2), 2 w1 (1-d1^2), 4 w1 d1).
  const T cw1 = one - w1 * w1;
  const T sw1 = two * w1;
  detail::BiVec<T> x1{detail::in_d1<T>({cw1, zero, cw1}), detail::in_d1<T>({sw1, zero, T(-sw1)}),
                      detail::in_d1<T>({zero, T(two * sw1)})};
  // X2 stays in the fixed face.
  detail::BiVec<T> x2{BiPoly<T>(UniPoly<T>(T(one - w2 * w2))), BiPoly<T>(UniPoly<T>(T(two * w2))), BiPoly<T>()};
  // R2 X3 = (1-w3^2)(1+d2^2) ax + 2 w3 [(1-d2^2) axp + 2 d2 (1+m^2) e_z], with the axis
  // ax = (1-m^2, 2m, 0) and its in-plane normal axp = (-2m, 1-m^2, 0).
  const T cw3 = one - w3 * w3;
  const T sw3 = two * w3;
  const T ax0 = one - m * m, ax1 = two * m;
  const T axp0 = T(-(two * m)), axp1 = one - m * m;
  auto comp = [&](const T& a, const T& p) {
    // cw3 (1 + d2^2) a + sw3 (1 - d2^2) p
    T k0 = cw3 * a + sw3 * p;
    T k2 = cw3 * a - sw3 * p;
    return detail::in_d2<T>({k0, zero, k2});
  };
  detail::BiVec<T> x3{comp(ax0, axp0), comp(ax1, axp1),
                      detail::in_d2<T>({zero, T(two * sw3 * (one + m * m))})};
  return detail::det3(x1, x2, x3);
}

template <class T>
struct ECoefficients {
  T E4, E2, E0;
};

template <class T>
struct ECylinderCoefficients {
  T E2, E0;
};

namespace detail {

/// Resultant of D1 and D2 with respect to d1 (both of formal degree 2), as a polynomial in d2.
template <class T>
UniPoly<T> resultant_d1(const SectionConfig<T>& c) {
  return sylvester_resultant(coeffs_D(Determinant::D1, c), coeffs_D(Determinant::D2, c), 2, 2);
}

template <class T>
void require_zero(const T& value, const char* what) {
  if constexpr (is_exact_v<T>) {
    if (!conefold::is_zero(value)) throw std::logic_error(std::string("eval_E: nonzero ") + what);
  } else {
    (void)value;
    (void)what;
  }
}

}  // namespace detail

/// Coefficients of the d1-eliminant, which has the shape d2^2 (E4 d2^4 + E2 d2^2 + E0).
/// The factor d2^2 belongs to the flat fold and is divided out. In exact arithmetic the
/// vanishing of all other coefficients is checked and a violation throws std::logic_error.
template <class T>
ECoefficients<T> eval_E(const SectionConfig<T>& c) {
  UniPoly<T> r = detail::resultant_d1(c);
  detail::require_zero(r.coeff(0), "d2^0 coefficient");
  detail::require_zero(r.coeff(1), "d2^1 coefficient");
  detail::require_zero(r.coeff(3), "odd coefficient d2^3");
  detail::require_zero(r.coeff(5), "odd coefficient d2^5");
  detail::require_zero(r.coeff(7), "odd coefficient d2^7");
  detail::require_zero(r.coeff(8), "d2^8 coefficient");
  return {r.coeff(6), r.coeff(4), r.coeff(2)};
}

/// Largest odd coefficient of the eliminant relative to its largest coefficient (float check).
inline double eval_E_odd_ratio(const ConfigD& c) {
  UniPoly<double> r = detail::resultant_d1(c);
  double big = 0.0, odd = 0.0;
  for (int k = 0; k <= r.degree(); ++k) {
    big = std::max(big, std::abs(r.coeff(k)));
    if (k % 2 == 1) odd = std::max(odd, std::abs(r.coeff(k)));
  }
  return big == 0.0 ? 0.0 : odd / big;
}

/// Parallel fold lines (m = 0): the eliminant is d2^2 (1 + d2^2)(E2 d2^2 + E0).
template <class T>
ECylinderCoefficients<T> eval_E_cylinder(SectionConfig<T> c) {
  c.m = T(0);
  UniPoly<T> r = detail::resultant_d1(c);
  detail::require_zero(r.coeff(0), "d2^0 coefficient");
  detail::require_zero(r.coeff(1), "d2^1 coefficient");
  std::vector<T> shifted;
  for (int k = 2; k <= r.degree(); ++k) shifted.push_back(r.coeff(k));
  auto [q, rem] = divide_by_monic(UniPoly<T>(std::move(shifted)), UniPoly<T>{T(1), T(0), T(1)});
  for (int k = 0; k <= rem.degree(); ++k) detail::require_zero(rem.coeff(k), "remainder after dividing by 1+d2^2");
  detail::require_zero(q.coeff(1), "odd coefficient d2^1 of the reduced eliminant");
  detail::require_zero(q.coeff(3), "d2^3 coefficient of the reduced eliminant");
  detail::require_zero(q.coeff(4), "d2^4 coefficient of the reduced eliminant");
  return {q.coeff(2), q.coeff(0)};
}

namespace detail {

template <class T>
bool near_zero(const T& x, double scale) {
  if constexpr (is_exact_v<T>)
    return conefold::is_zero(x);
  else
    return std::abs(x) <= 1e-12 * scale;
}

inline double pair_scale(double a, double b) { return (1.0 + std::abs(a)) * (1.0 + std::abs(b)); }
template <class T>
double pair_scale(const T&, const T&) {
  return 1.0;
}

}  // namespace detail

/// Which flat-fold coincidence factors of the gcd of the first resultant chain vanish
/// for this configuration. Empty for generic input.
template <class T>
std::vector<std::string> classify_special_factor(const SectionConfig<T>& c) {
  std::vector<std::string> out;
  auto side = [&out](const T& a, const T& b, const char* name) {
    const double sc = detail::pair_scale(a, b);
    const std::string prefix = std::string("flat-fold ") + name + "-side, ";
    if (detail::near_zero(T(a - b), sc)) out.push_back(prefix + "δ₁=0 case");
    if (detail::near_zero(T(a * b + T(1)), sc)) out.push_back(prefix + "δ₁=0, opposite orientation");
    if (detail::near_zero(T(a + b), sc)) out.push_back(prefix + "δ₁=π case");
    if (detail::near_zero(T(a * b - T(1)), sc)) out.push_back(prefix + "δ₁=π, opposite orientation");
  };
  side(c.s1, c.s2, "a");
  side(c.t1, c.t2, "b");
  return out;
}

}  // namespace conefold
