#include "conefold/smooth_cylinder.hpp"

#include <gtest/gtest.h>

using namespace conefold;

TEST(PlanarFrame, StraightLineAndCircle) {
  const auto g = grid_with_step(0.0, 2 * kPi, 1e-3);
  const auto line = planar_frame_integrate(CurvatureField::constant(0.0), g);
  for (std::size_t i = 0; i < g.size(); i += 500) {
    EXPECT_NEAR((line.c[i] - Vec3(g[i], 0, 0)).norm(), 0.0, 1e-12);
    EXPECT_EQ(line.e1[i], Vec3::UnitX());
  }
  const auto circle = planar_frame_integrate(CurvatureField::constant(1.0), g);
  EXPECT_LT((circle.c.back() - circle.c.front()).norm(), 1e-8);
  EXPECT_LT((circle.e1.back() - circle.e1.front()).norm(), 1e-8);
  double drift = 0.0;
  for (const auto& e : circle.e1) drift = std::max(drift, std::abs(e.norm() - 1.0));
  EXPECT_LT(drift, 1e-9);
  EXPECT_EQ(circle.e3, Vec3::UnitZ());
}

TEST(CylResidual, HandSubstitutions) {
  const auto g = uniform_grid(-1.0, 1.0, 101);
  const auto k = CurvatureField::from_function([](double s) { return 1.0 + 0.5 * s * s; }, [](double s) { return s; });
  EXPECT_EQ(cyl_residual(profiles::constant(2.0, -1, 1), k, g), 0.0);
  EXPECT_NEAR(cyl_residual(profiles::polynomial({0.0, 0.7}, -1, 1), CurvatureField::constant(1.5), g), 0.7 * std::pow(1.5, 3), 1e-14);
  const auto cosine = profiles::trig(0.0, -1.0, 1.0, 0.0, -1, 1);
  EXPECT_LT(cyl_residual(cosine, CurvatureField::constant(1.0), g), 1e-15);
}

TEST(KappaPlanar, InclinedEllipse) {
  const double eps = 0.05;
  const auto phi = profiles::trig(0.0, -1.0, 1.0, 0.0, -kPi / 2 + eps, kPi / 2 - eps);
  const auto g = grid_with_step(phi.lo(), phi.hi(), 1e-3);
  const auto k = kappa_planar(phi, 1.0, g);
  EXPECT_EQ(k.grid.size(), g.size());
  for (double v : k.field.values()) EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_LT(cyl_residual(phi, k.field, k.grid), 1e-8);
}

TEST(KappaPlanar, TrimsEndsAndRejectsInteriorGaps) {
  const auto phi = profiles::trig(0.0, -1.0, 1.0, 0.0, -kPi / 2, kPi / 2);
  const auto g = uniform_grid(-kPi / 2, kPi / 2, 101);
  const auto k = kappa_planar(phi, 1.0, g);
  EXPECT_EQ(k.trimmed_front, 1u);
  EXPECT_EQ(k.trimmed_back, 1u);
  const auto wide = profiles::trig(0.0, -1.0, 1.0, 0.0, -kPi, kPi);
  EXPECT_THROW(kappa_planar(wide, 0.5, uniform_grid(-kPi, kPi, 101)), std::domain_error);
  EXPECT_THROW(kappa_planar(profiles::polynomial({0.0, 2.0}, 0, 1), 1.0, uniform_grid(0, 1, 11)), std::domain_error);
  const auto flat = kappa_planar(profiles::constant(0.4, 0, 1), 2.0, uniform_grid(0, 1, 11));
  for (double v : flat.field.values()) EXPECT_EQ(v, 0.0);
}

TEST(KappaPlanar, OutputSolvesTheOde) {
  const auto phi = profiles::polynomial({0.2, 0.3, -0.4, 0.1}, -1.0, 1.5);
  const auto g = grid_with_step(-1.0, 1.5, 1e-3);
  for (double I : {3.0, 4.0, 6.0}) {
    const auto k = kappa_planar(phi, I, g);
    EXPECT_LT(cyl_residual(phi, k.field, k.grid), 1e-8);
    const auto kp = fd_derivative(k.grid, k.field.values());
    double worst = 0.0;
    for (std::size_t i = 0; i < k.grid.size(); ++i)
      worst = std::max(worst, std::abs(cyl_value(phi(k.grid[i]), k.field.values()[i], kp[i])));
    EXPECT_LT(worst, 1e-6);
  }
}

TEST(Scaling, ResidualIsLinearInProfile) {
  const auto phi = profiles::exponential(0.3, 0.5, 0.8, 0.0, 2.0);
  const auto k = CurvatureField::from_function([](double s) { return 0.5 + 0.2 * std::sin(s); },
                                               [](double s) { return 0.2 * std::cos(s); });
  const auto g = uniform_grid(0.0, 2.0, 201);
  auto r = scaling_check(phi, 1.0, k, g);
  EXPECT_EQ(r.scaled, r.multiplied);
  r = scaling_check(phi, 0.0, k, g);
  EXPECT_EQ(r.scaled, 0.0);
  EXPECT_EQ(r.multiplied, 0.0);
  r = scaling_check(phi, 3.7, k, g);
  EXPECT_NE(r.multiplied, 0.0);
  EXPECT_LT(std::abs(r.scaled - r.multiplied), 1e-12 * std::abs(r.multiplied));
}

TEST(CylinderSection, EllipseConstantAndHelix) {
  const auto g = grid_with_step(0.0, 2 * kPi, 1e-3);
  const auto circle = CurvatureField::constant(1.0);
  const auto ellipse = cylinder_section_planarity(circle, profiles::trig(0.0, -1.0, 1.0, 0.0, 0.0, 2 * kPi), g);
  EXPECT_LT(ellipse.plane_fit, 1e-6);
  EXPECT_LT(ellipse.torsion, 1e-6);
  EXPECT_LT(cylinder_section_planarity(circle, profiles::constant(0.5, 0.0, 2 * kPi), g).plane_fit, 1e-10);
  EXPECT_GT(cylinder_section_planarity(circle, profiles::polynomial({0.0, 1.0}, 0.0, 2 * kPi), g).torsion, 0.4);
}

TEST(CylinderSection, DeformationFamilyStaysPlanar) {
  const auto phi = profiles::polynomial({0.2, 0.3, -0.4, 0.1}, -1.0, 1.5);
  const auto g = grid_with_step(-1.0, 1.5, 1e-3);
  std::vector<Vec3> ends;
  for (double I : {3.0, 4.0, 6.0}) {
    const auto k = kappa_planar(phi, I, g);
    const auto r = cylinder_section_planarity(k.field, phi, k.grid);
    EXPECT_LT(r.plane_fit, 1e-6) << I;
    const auto f = planar_frame_integrate(k.field, k.grid);
    EXPECT_LT(planarity_residual(f.c), 1e-12);
    ends.push_back(f.c.back());
  }
  EXPECT_GT((ends[0] - ends[2]).norm(), 1e-2);
}
