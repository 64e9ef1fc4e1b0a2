#include "conefold/discrete_cylinder.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace conefold;
using conefold::testing::small_rational;
using conefold::testing::uniform;

namespace {

CylinderConfig random_cylinder(int root2, int root3) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CylinderFreeParams p{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
    try {
      return synthesize_cylinder(p, root2, root3);
    } catch (const SynthesisError&) {
    }
  }
  throw std::runtime_error("no admissible cylinder seed");
}

}  // namespace

TEST(DiscreteCylinder, PrintedPolynomialMatchesRatioForm) {
  for (int i = 0; i < 100; ++i) {
    const double s1 = uniform(-3, 3), si = uniform(-3, 3), t1 = uniform(-3, 3), ti = uniform(-3, 3);
    const double printed = s1 * s1 * si * t1 * ti * ti - s1 * si * si * t1 * t1 * ti - s1 * s1 * si * t1 +
                           s1 * si * si * ti + s1 * t1 * t1 * ti - si * t1 * ti * ti - s1 * ti + si * t1;
    EXPECT_NEAR(eval_R(2, s1, si, t1, ti), printed, 1e-12 * (1 + std::abs(printed)));
  }
}

TEST(DiscreteCylinder, RVanishesForIdenticalPlanes) {
  EXPECT_NEAR(eval_R(2, 0.7, -1.3, 0.7, -1.3), 0.0, 1e-15);
  EXPECT_NE(eval_R(3, 0.7, -1.3, 0.2, 0.9), 0.0);
}

TEST(DiscreteCylinder, SolveRRoots) {
  auto roots = solve_R_for_ti(2, 1.0, 2.0, 3.0);
  // s1 = 1 kills the quadratic; the affine remainder has the single root t_i = 0.
  ASSERT_EQ(roots.size(), 1u);
  EXPECT_EQ(roots[0], 0.0);
  for (int i = 0; i < 1000; ++i) {
    const double s1 = uniform(-3, 3), si = uniform(-3, 3), t1 = uniform(-3, 3);
    for (double t : solve_R_for_ti(3, s1, si, t1)) EXPECT_LT(std::abs(eval_R(3, s1, si, t1, t)), 1e-12 * (1 + t * t) * 50);
  }
  auto same = solve_R_for_ti(2, 0.4, 1.7, 0.4);
  ASSERT_EQ(same.size(), 2u);
  EXPECT_TRUE(std::abs(same[0] - 1.7) < 1e-12 || std::abs(same[1] - 1.7) < 1e-12);
}

TEST(DiscreteCylinder, TangentRatioIsPreserved) {
  const CylinderConfig c = synthesize_cylinder({2.0, 0.6, -3.0, 0.4});
  auto tan_of = [](double t) { return std::tan(from_half_tan(t)); };
  const double r1 = tan_of(c.s1) / tan_of(c.t1);
  EXPECT_NEAR(tan_of(c.s2) / tan_of(c.t2), r1, 1e-12);
  EXPECT_NEAR(tan_of(c.s3) / tan_of(c.t3), r1, 1e-12);
}

TEST(DiscreteCylinder, MatchesConeEvaluatorsAtZeroMu) {
  for (int i = 0; i < 100; ++i) {
    CylinderConfig c{uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
    const double d1 = uniform(-2, 2), d2 = uniform(-2, 2);
    EXPECT_NEAR(eval_cyl_D1(c, d1, d2), eval_D1(c.as_section(), fold_pair(d1, d2)), 1e-14);
    EXPECT_NEAR(eval_cyl_D2(c, d1, d2), eval_D2(c.as_section(), fold_pair(d1, d2)), 1e-14);
  }
}

TEST(DiscreteCylinder, AllFourRootCombinationsCouple) {
  for (int r2 = 0; r2 < 2; ++r2)
    for (int r3 = 0; r3 < 2; ++r3)
      for (int rep = 0; rep < 25; ++rep) {
        const CylinderConfig c = random_cylinder(r2, r3);
        for (int k = 0; k < 4; ++k) {
          const double d2 = uniform(-3, 3);
          for (double d1 : fold_coupling_cyl(c, d2)) EXPECT_LT(std::abs(eval_cyl_D2(c, d1, d2)), 1e-10);
        }
      }
}

TEST(DiscreteCylinder, FlatStateAmongRoots) {
  const CylinderConfig c = synthesize_cylinder({2.0, 0.6, -3.0, 0.4});
  auto r = fold_coupling_cyl(c, 0.0);
  ASSERT_FALSE(r.empty());
  EXPECT_TRUE(std::any_of(r.begin(), r.end(), [](double x) { return x == 0.0; }));
}

TEST(DiscreteCylinder, NonSynthesizedFailsCoupling) {
  CylinderConfig c = synthesize_cylinder({2.0, 0.6, -3.0, 0.4});
  c.t2 += 0.05;
  double worst = 0.0;
  for (double d2 : {0.3, 0.8, -1.1})
    for (double d1 : fold_coupling_cyl(c, d2)) worst = std::max(worst, std::abs(eval_cyl_D2(c, d1, d2)));
  EXPECT_GT(worst, 1e-3);
}

TEST(DiscreteCylinder, ExactEliminantVanishes) {
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    ExactCylinderFreeParams p{small_rational(), small_rational(), small_rational(), small_rational()};
    SectionConfig<ExtNumber> c;
    try {
      c = synthesize_cylinder_exact(p);
    } catch (const SynthesisError&) {
      continue;
    }
    auto e = eval_E_cylinder(c);
    EXPECT_TRUE(is_zero(e.E2));
    EXPECT_TRUE(is_zero(e.E0));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(DiscreteCylinder, StripSectionsStayPlanar) {
  for (int rep = 0; rep < 10; ++rep) {
    const CylinderConfig c = random_cylinder(rep % 2, (rep / 2) % 2);
    int built = 0;
    // Some motions end close to the flat state, so samples are spaced geometrically around it.
    for (int i = 0; i < 20; ++i) {
      const double d2 = (i % 2 ? 1.0 : -1.0) * 1e-3 * std::pow(2.0, i / 2);
      CylinderStrip s;
      try {
        s = build_prism_strip(c, 9, d2);
      } catch (const std::domain_error&) {
        continue;
      }
      ++built;
      auto r = cylinder_residuals(s);
      EXPECT_LT(r.alpha_planarity, 1e-9);
      EXPECT_LT(r.beta_planarity, 1e-9);
      EXPECT_LT(r.edge_length, 1e-10);
      EXPECT_LT(r.coplanarity, 1e-10);
    }
    EXPECT_GT(built, 0);
  }
}

TEST(DiscreteCylinder, FlatBaseStripIsPlanar) {
  const CylinderConfig c = synthesize_cylinder({2.0, 0.6, -3.0, 0.4});
  const CylinderStrip s = build_prism_strip(c, 3, 0.0);
  const Mesh m = cylinder_mesh(s);
  for (const auto& v : m.vertices) EXPECT_NEAR(v.z(), 0.0, 1e-15);
  for (const auto& f : m.faces) {
    std::vector<Vec3> q;
    for (int i : f) q.push_back(m.vertices[static_cast<std::size_t>(i)]);
    EXPECT_LT(planarity_residual(q), 1e-12);
  }
}

TEST(DiscreteCylinder, NormalizedBetaVariant) {
  const CylinderConfig c = normalized_cylinder(0.8, -0.4, 1.9);
  for (double d2 : {0.2, -0.6, 1.4}) {
    auto r = cylinder_residuals(build_prism_strip(c, 7, d2));
    EXPECT_LT(r.alpha_planarity, 1e-9);
    EXPECT_LT(r.beta_planarity, 1e-9);
  }
}

TEST(DiscreteCylinder, ParallelFacesRejected) {
  CylinderConfig c{0.5, 1.5, 0.5, 0.3, 0.9, 0.3};
  auto bad = validate_cylinder(c);
  ASSERT_FALSE(bad.empty());
  EXPECT_NE(bad.front().find("parallel"), std::string::npos);
}
