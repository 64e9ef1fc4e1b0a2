#include "conefold/smooth_cone.hpp"

#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <random>

using namespace conefold;

namespace {

double jet_gap(const ProfileFunction& p, double x) {
  const Jet a = p(x), b = p.fd_jet(x, 2e-3);
  return std::max({std::abs(a.v - b.v), std::abs(a.d1 - b.d1), std::abs(a.d2 - b.d2), std::abs(a.d3 - b.d3)});
}

// Frame after arc length s for constant κ: rotation about (-κ, 0, -1) in frame coordinates.
Frame constant_kappa_frame(double kappa, double s) {
  const Eigen::Vector3d w(-kappa, 0.0, -1.0);
  const Eigen::Matrix3d R = Eigen::AngleAxisd(w.norm() * s, w.normalized()).toRotationMatrix();
  // Rows of E(s) = R E(0) with E(0) = I hold e1, e2, e3.
  Frame f;
  f.e1 = R.row(0).transpose();
  f.e2 = R.row(1).transpose();
  f.e3 = R.row(2).transpose();
  return f;
}

double frame_error(const FrameSamples& fs, double kappa) {
  double e = 0.0;
  for (std::size_t i = 0; i < fs.grid.size(); ++i) {
    const Frame ref = constant_kappa_frame(kappa, fs.grid[i]);
    e = std::max({e, (fs.e1[i] - ref.e1).norm(), (fs.e2[i] - ref.e2).norm(), (fs.e3[i] - ref.e3).norm()});
  }
  return e;
}

std::vector<ProfileFunction> test_profiles() {
  return {profiles::trig(1.5, 0.3, 1.0, 0.2, 0.0, 1.5), profiles::exponential(1.0, 0.2, 0.5, 0.0, 1.5),
          profiles::polynomial({1.0, 0.2, 0.1}, 0.0, 1.5), profiles::reciprocal_trig(1.0, 0.3, 2.0, 0.4, 0.0, 1.5),
          profiles::trig(2.0, -0.4, 1.7, 1.0, 0.0, 1.5)};
}

std::vector<double> fd_kappa_prime(const CurvatureField& k) { return fd_derivative(k.grid(), k.values()); }

}  // namespace

TEST(Profile, JetsMatchFiniteDifferences) {
  for (const auto& p : test_profiles())
    for (double x : {0.3, 0.75, 1.2}) EXPECT_LT(jet_gap(p, x), 1e-6) << p.name() << " at " << x;
}

TEST(Profile, ValueOnlyProfileUsesDifferences) {
  auto p = ProfileFunction::from_values([](double x) { return std::exp(0.5 * x); }, 0.0, 2.0);
  EXPECT_FALSE(p.analytic());
  const Jet j = p(1.0);
  const double e = std::exp(0.5);
  EXPECT_NEAR(j.d1, 0.5 * e, 1e-9);
  EXPECT_NEAR(j.d2, 0.25 * e, 1e-6);
  EXPECT_NEAR(j.d3, 0.125 * e, 1e-3);
}

TEST(Profile, FourthOrderDerivativeOfSamples) {
  const auto g = uniform_grid(0.0, 2.0, 201);
  std::vector<double> f;
  for (double x : g) f.push_back(std::sin(x));
  const auto d = fd_derivative(g, f);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(d[i], std::cos(g[i]), 1e-8);
  EXPECT_THROW(uniform_step({0.0, 0.1, 0.3}), std::invalid_argument);
}

TEST(Darboux, ZeroCurvatureIsAGreatCircle) {
  const auto g = grid_with_step(0.0, 2 * kPi, 1e-3);
  const auto fs = darboux_integrate(CurvatureField::constant(0.0), g);
  double e = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    e = std::max(e, (fs.e1[i] - Vec3(std::cos(g[i]), std::sin(g[i]), 0.0)).norm());
    e = std::max(e, (fs.e3[i] - Vec3::UnitZ()).norm());
  }
  EXPECT_LT(e, 1e-10);
}

TEST(Darboux, ConstantCurvatureMatchesRotation) {
  const auto g = grid_with_step(0.0, 2 * kPi, 1e-3);
  const auto fs = darboux_integrate(CurvatureField::constant(0.7), g);
  EXPECT_LT(frame_error(fs, 0.7), 1e-10);
  double worst = 0.0;
  for (const auto& e1 : fs.e1) worst = std::max(worst, std::abs(e1.norm() - 1.0));
  EXPECT_LT(worst, 5e-10);
  EXPECT_LT(fs.orthonormality_drift(), 1e-9);
}

TEST(Darboux, GlobalErrorIsFourthOrder) {
  const double kappa = 1.3;
  const double e1 = frame_error(darboux_integrate(CurvatureField::constant(kappa), grid_with_step(0.0, 2 * kPi, 0.02)), kappa);
  const double e2 = frame_error(darboux_integrate(CurvatureField::constant(kappa), grid_with_step(0.0, 2 * kPi, 0.01)), kappa);
  const double order = std::log2(e1 / e2);
  EXPECT_GT(order, 3.7);
  EXPECT_LT(order, 4.3);
}

TEST(Darboux, RejectsBadInitialFrame) {
  Frame f;
  f.e1 = Vec3(1.0, 1e-6, 0.0);
  EXPECT_THROW(darboux_integrate(CurvatureField::constant(0.1), uniform_grid(0, 1, 11), f), std::invalid_argument);
  Frame left;
  left.e3 = -Vec3::UnitZ();
  EXPECT_THROW(darboux_integrate(CurvatureField::constant(0.1), uniform_grid(0, 1, 11), left), std::invalid_argument);
  EXPECT_THROW(darboux_integrate(CurvatureField::constant(0.1), {0.0, 0.5, 0.4}), std::invalid_argument);
}

TEST(Darboux, InitialFramesGiveCongruentCurves) {
  const auto phi = profiles::trig(1.5, 0.3, 1.0, 0.2, 0.0, 1.5);
  const auto g = grid_with_step(0.0, 1.5, 1e-3);
  const auto k = kappa_from_profile(phi, feasible_I_lower_bound(phi, g) + 1.0, g);
  const Mat3 Q = Eigen::AngleAxisd(0.8, Vec3(1, -2, 0.5).normalized()).toRotationMatrix();
  Frame f;
  f.e1 = Q.col(0);
  f.e2 = Q.col(1);
  f.e3 = Q.col(2);
  const auto a = darboux_integrate(k, g);
  const auto b = darboux_integrate(k, g, f);
  double dev = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) dev = std::max(dev, (Q * a.e1[i] - b.e1[i]).norm());
  EXPECT_LT(dev, 1e-8);
}

TEST(Torsion, PlanarCircleAndHelix) {
  const auto g = grid_with_step(0.0, 2 * kPi, 1e-3);
  std::vector<Vec3> circle, helix;
  for (double s : g) {
    circle.emplace_back(std::cos(s), std::sin(s), 0.0);
    helix.emplace_back(std::cos(s), std::sin(s), s);
  }
  EXPECT_LT(torsion_residual(circle, g), 1e-8);
  EXPECT_NEAR(torsion_residual(helix, g), 0.5, 1e-5);
}

TEST(Torsion, StraightLineIsUndefined) {
  const auto g = uniform_grid(0.0, 1.0, 20);
  std::vector<Vec3> line;
  for (double s : g) line.emplace_back(s, 2 * s, 0.0);
  EXPECT_THROW(torsion_residual(line, g), std::domain_error);
  EXPECT_THROW(torsion_residual(std::vector<Vec3>(5, Vec3::Zero()), uniform_grid(0, 1, 5)), std::invalid_argument);
}

TEST(KCondition, ConstantProfileClosedForm) {
  const auto g = uniform_grid(0.0, 2.0, 101);
  const auto phi = profiles::constant(1.7, 0.0, 2.0);
  EXPECT_EQ(K_residual(phi, CurvatureField::constant(0.4), g), 0.0);
  const auto k = CurvatureField::from_function([](double s) { return 0.3 * std::sin(s); },
                                               [](double s) { return 0.3 * std::cos(s); });
  EXPECT_NEAR(K_residual(phi, k, g), std::pow(1.7, 3) * 0.3, 1e-12);
}

TEST(KappaFromProfile, ConstantProfile) {
  const auto g = uniform_grid(0.0, 1.0, 101);
  const auto k = kappa_from_profile(profiles::constant(1.0, 0.0, 1.0), 4.0, g);
  for (double v : k.values()) EXPECT_DOUBLE_EQ(v, 0.5);
  const auto k2 = kappa_from_profile(profiles::constant(2.5, 0.0, 1.0), 3.0, g);
  for (double v : k2.values()) EXPECT_NEAR(v, 1.0 / (2.5 * std::sqrt(3.0)), 1e-15);
}

TEST(KappaFromProfile, IntegralHasClosedForm) {
  // The six integrands add up to -(u² + u'²)' with u = 1/φ.
  for (const auto& phi : test_profiles()) {
    const auto g = grid_with_step(phi.lo(), phi.hi(), 1e-3);
    const auto J = W_integral(phi, g);
    auto q = [&phi](double s) {
      const Jet u = recip(phi(s));
      return u.v * u.v + u.d1 * u.d1;
    };
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) e = std::max(e, std::abs(J[i] - (q(g[0]) - q(g[i]))));
    EXPECT_LT(e, 1e-11) << phi.name();
  }
}

TEST(KappaFromProfile, PlaneSectionsOfCircularConeGiveConstantCurvature) {
  const double a = 1.2, b = 0.5, omega = 1.6;
  const double kappa = std::sqrt(omega * omega - 1.0);
  const auto phi = profiles::reciprocal_trig(a, b, omega, 0.3, 0.0, 3.0);
  const auto g = grid_with_step(0.0, 3.0, 1e-3);
  const double u0 = a + b * std::cos(0.3), u0p = -b * omega * std::sin(0.3);
  const double I = a * a / (kappa * kappa) + a * a + b * b * omega * omega - (u0 * u0 + u0p * u0p);
  const auto k = kappa_from_profile(phi, I, g);
  for (double v : k.values()) EXPECT_NEAR(v, kappa, 1e-10);
  EXPECT_LT(K_residual(phi, CurvatureField::constant(kappa), g), 1e-12);
}

TEST(KappaFromProfile, SolvesKWithDifferencedDerivative) {
  for (const auto& phi : test_profiles()) {
    const auto g = grid_with_step(phi.lo(), phi.hi(), 1e-3);
    const auto k = kappa_from_profile(phi, feasible_I_lower_bound(phi, g) + 0.5, g);
    EXPECT_LT(K_residual(phi, k.values(), fd_kappa_prime(k), g), 1e-6) << phi.name();
    EXPECT_LT(K_residual(phi, k, g), 1e-10) << phi.name();
  }
}

TEST(KappaFromProfile, QuadratureConvergesUnderHalving) {
  const auto phi = profiles::exponential(1.0, 0.2, 0.5, 0.0, 1.5);
  const auto g = uniform_grid(0.0, 1.5, 1501);
  const auto gh = uniform_grid(0.0, 1.5, 3001);
  const double I = feasible_I_lower_bound(phi, g) + 0.5;
  const auto k = kappa_from_profile(phi, I, g);
  const auto kh = kappa_from_profile(phi, I, gh);
  double d = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) d = std::max(d, std::abs(k.values()[i] - kh.values()[2 * i]));
  EXPECT_LT(d, 1e-8);
}

TEST(KappaFromProfile, Errors) {
  const auto g = uniform_grid(0.0, 1.0, 11);
  EXPECT_THROW(kappa_from_profile(profiles::constant(1.0, 0.0, 1.0), 0.0, g), std::domain_error);
  EXPECT_THROW(kappa_from_profile(profiles::polynomial({-1.0, 0.5}, 0.0, 1.0), 1.0, g), std::domain_error);
  // φ = 1/cos ς is a straight line in the plane of a great circle: Φ vanishes identically.
  const auto line = profiles::reciprocal_trig(0.0, 1.0, 1.0, 0.0, 0.0, 1.0);
  try {
    kappa_from_profile(line, 1.0, g);
    FAIL() << "expected a degenerate profile";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate profile"), std::string::npos);
  }
}

TEST(KappaFromProfile, DegenerateSolutionsAreReported) {
  const auto g = uniform_grid(0.0, 1.0, 11);
  const auto labels = degenerate_solutions(profiles::constant(1.0, 0.0, 1.0), CurvatureField::constant(0.0), g);
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_NE(labels[0].find("κ ≡ 0"), std::string::npos);
  EXPECT_TRUE(degenerate_solutions(profiles::constant(1.0, 0.0, 1.0), CurvatureField::constant(0.5), g).empty());
}

TEST(ConeSection, CircleOnCircularCone) {
  const auto g = grid_with_step(0.0, 2 * kPi, 1e-3);
  const auto k = kappa_from_profile(profiles::constant(1.0, 0.0, 2 * kPi), 4.0, g);
  const auto r = cone_section_planarity(k, profiles::constant(1.0, 0.0, 2 * kPi), g);
  EXPECT_LT(r.plane_fit, 1e-6);
  EXPECT_LT(r.torsion, 1e-6);
}

TEST(ConeSection, SolutionsArePlanarAndOthersAreNot) {
  for (const auto& phi : test_profiles()) {
    const auto g = grid_with_step(phi.lo(), phi.hi(), 1e-3);
    const auto k = kappa_from_profile(phi, feasible_I_lower_bound(phi, g) + 0.5, g);
    const auto r = cone_section_planarity(k, phi, g);
    EXPECT_LT(r.torsion, 1e-5) << phi.name();
    EXPECT_LT(r.plane_fit, 1e-8) << phi.name();
  }
  const auto g = grid_with_step(0.0, 1.5, 1e-3);
  const auto bad = cone_section_planarity(CurvatureField::constant(0.5), profiles::polynomial({1.0, 0.0, 0.3}, 0.0, 1.5), g);
  EXPECT_GT(bad.torsion, 1e-2);
}

TEST(ConeSection, DeformationKeepsSectionsPlanar) {
  const auto phi = profiles::polynomial({1.0, 0.2, 0.1}, 0.0, 1.5);
  const auto g = grid_with_step(0.0, 1.5, 1e-3);
  const double lo = feasible_I_lower_bound(phi, g);
  const auto k1 = kappa_from_profile(phi, lo + 0.3, g);
  const auto k2 = kappa_from_profile(phi, lo + 2.0, g);
  EXPECT_GT(std::abs(k1.values()[100] - k2.values()[100]), 1e-2);
  EXPECT_LT(cone_section_planarity(k1, phi, g).torsion, 1e-5);
  EXPECT_LT(cone_section_planarity(k2, phi, g).torsion, 1e-5);
}

TEST(Phi1, IdentityAndDerivatives) {
  const auto phi2 = profiles::trig(1.5, 0.3, 1.0, 0.2, 0.0, 1.5);
  const auto same = phi1_from_phi2(phi2, 0.0, 0.0, 1);
  for (double x : {0.1, 0.7, 1.4}) {
    const Jet a = same(x), b = phi2(x);
    EXPECT_DOUBLE_EQ(a.v, b.v);
    EXPECT_DOUBLE_EQ(a.d3, b.d3);
  }
  const auto phi1 = phi1_from_phi2(phi2, 0.2, -0.3, 1);
  for (double x : {0.1, 0.7, 1.4}) EXPECT_LT(jet_gap(phi1, x), 1e-6);
  EXPECT_THROW(phi1_from_phi2(phi2, 0.0, 0.0, 0), std::invalid_argument);
  EXPECT_THROW(phi1_from_phi2(phi2, 0.0, -3.0, -1), std::domain_error);
}

TEST(Phi1, SolvesU1) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> C(-0.3, 0.3);
  const auto phi2 = profiles::exponential(1.0, 0.2, 0.5, 0.0, 1.5);
  const auto g = grid_with_step(0.0, 1.5, 1e-2);
  for (int trial = 0; trial < 20; ++trial) {
    for (int sign : {1, -1}) {
      ProfileFunction phi1;
      try {
        phi1 = phi1_from_phi2(phi2, C(gen), C(gen), sign);
      } catch (const std::domain_error&) {
        continue;
      }
      if (phi1.value(0.0) < 0.0) continue;  // the other nappe
      const auto r = U_residuals(phi1, phi2, {1.0, 2.0}, g);
      EXPECT_LT(r.U1_max, 1e-9);
    }
  }
}

TEST(UResiduals, SymmetricAndGenericCases) {
  const auto g = grid_with_step(0.0, 1.5, 1e-2);
  const auto phi = profiles::trig(1.5, 0.3, 1.0, 0.2, 0.0, 1.5);
  const auto same = U_residuals(phi, phi, {1.0, 1.0, 3.0}, g);
  EXPECT_EQ(same.U1_max, 0.0);
  EXPECT_EQ(same.U0_max, 0.0);
  const auto other = U_residuals(phi, profiles::exponential(1.0, 0.2, 0.5, 0.0, 1.5), {1.0, 3.0}, g);
  EXPECT_GT(other.U1_max, 1e-3);
  EXPECT_THROW(U_residuals(phi, phi, {2.0, 2.0}, g), std::invalid_argument);
}

TEST(Pencil, LimitsAndPlanarity) {
  const double omega = 1.4, kappa = std::sqrt(omega * omega - 1.0);
  const auto p1 = profiles::reciprocal_trig(1.0, 0.3, omega, 0.0, 0.0, 2.0);
  const auto p2 = profiles::reciprocal_trig(0.6, -0.2, omega, 0.9, 0.0, 2.0);
  const auto g = grid_with_step(0.0, 2.0, 1e-3);
  const auto k = CurvatureField::constant(kappa);
  ASSERT_LT(K_residual(p1, k, g), 1e-6);
  ASSERT_LT(K_residual(p2, k, g), 1e-6);
  const auto at0 = pencil_profile(p1, p2, 0.0);
  EXPECT_NEAR(at0.value(1.0), p1.value(1.0), 1e-15);
  EXPECT_NEAR(pencil_profile(p1, p2, 1e12).value(1.0), p2.value(1.0), 1e-11);
  for (double lambda : {-2.0, -0.5, 3.0, 7.5}) EXPECT_LT(K_residual(pencil_profile(p1, p2, lambda), k, g), 1e-5) << lambda;
  EXPECT_THROW(pencil_profile(p1, p2, 1.0), std::domain_error);
}
