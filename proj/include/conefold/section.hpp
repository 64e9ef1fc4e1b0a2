#pragma once

#include "conefold/core_geometry.hpp"
#include "conefold/exact.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace conefold {

/// Half-angle tangents of the three-face germ: m for the angle between the two fold lines,
/// s1..s3 for the alpha-edge angles and t1..t3 for the beta-edge angles.
template <class T>
struct SectionConfig {
  T m{0}, s1{0}, s2{0}, s3{0}, t1{0}, t2{0}, t3{0};

  /// The same germ with the two cutting planes swapped.
  SectionConfig swapped() const { return {m, t1, t2, t3, s1, s2, s3}; }
};

using ConfigD = SectionConfig<double>;

inline SectionConfig<Rational> to_exact(const ConfigD& c) {
  return {rational_from_double(c.m), rational_from_double(c.s1), rational_from_double(c.s2),
          rational_from_double(c.s3), rational_from_double(c.t1), rational_from_double(c.t2),
          rational_from_double(c.t3)};
}

template <class T>
ConfigD to_double(const SectionConfig<T>& c) {
  using conefold::to_double;
  return {to_double(c.m), to_double(c.s1), to_double(c.s2), to_double(c.s3),
          to_double(c.t1), to_double(c.t2), to_double(c.t3)};
}

enum class Coupling { M, N };

inline const char* to_string(Coupling c) { return c == Coupling::M ? "M" : "N"; }

/// Which S factor (u), which T factor (v) and which coupling factor the solution lives on.
struct BranchSelector {
  int u = 1;
  int v = 1;
  Coupling mn = Coupling::M;

  void validate() const {
    if ((u != 1 && u != 2) || (v != 1 && v != 2)) throw std::invalid_argument("branch selector: u and v must be 1 or 2");
  }
  std::string label() const {
    return std::string("u=") + std::to_string(u) + " v=" + std::to_string(v) + " " + to_string(mn);
  }
  bool operator==(const BranchSelector&) const = default;
};

/// Half-angle tangent of a dihedral angle; `infinite` marks delta = pi exactly.
struct FoldValue {
  double tan = 0.0;
  bool infinite = false;

  static FoldValue at_infinity() { return {0.0, true}; }
  static FoldValue from_angle(double delta) {
    double w = std::remainder(delta, 2.0 * kPi);
    if (std::abs(std::abs(w) - kPi) < 1e-15) return at_infinity();
    return {std::tan(0.5 * w), false};
  }
  double angle() const { return infinite ? kPi : 2.0 * std::atan(tan); }
  bool is_flat() const { return infinite || tan == 0.0; }
};

struct FoldPair {
  FoldValue d1, d2;
};

}  // namespace conefold
