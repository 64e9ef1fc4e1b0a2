#pragma once

#include "conefold/discrete_cone.hpp"

#include <random>

namespace conefold::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Random nonzero rational p/q with |p| <= pmax, 1 <= q <= qmax.
inline Rational small_rational(int pmax = 9, int qmax = 7) {
  std::uniform_int_distribution<int> P(-pmax, pmax), Q(1, qmax);
  int p = 0;
  while (p == 0) p = P(rng());
  Rational r(p, Q(rng()));
  r.canonicalize();
  return r;
}

inline ConfigD random_config() {
  return {uniform(0.2, 1.5), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
}

inline SectionConfig<Rational> random_exact_config() {
  return {small_rational(), small_rational(), small_rational(), small_rational(), small_rational(), small_rational(),
          small_rational()};
}

inline const BranchSelector kAllSelectors[8] = {
    {1, 1, Coupling::M}, {1, 1, Coupling::N}, {1, 2, Coupling::M}, {1, 2, Coupling::N},
    {2, 1, Coupling::M}, {2, 1, Coupling::N}, {2, 2, Coupling::M}, {2, 2, Coupling::N}};

/// Synthesizes a float configuration from random free parameters, retrying rejected seeds.
inline ConfigD random_synthesized(const BranchSelector& sel) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    FreeParams p{uniform(0.15, 1.2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
    if (std::abs(p.s1) < 0.1 || std::abs(p.s3) < 0.1 || std::abs(p.t1) < 0.1) continue;
    try {
      ConfigD c = synthesize_config(sel, p);
      if (std::abs(c.t3) > 20 || std::abs(c.t3) < 0.05) continue;
      return c;
    } catch (const SynthesisError&) {
    }
  }
  throw std::runtime_error("no admissible random seed");
}

}  // namespace conefold::testing
