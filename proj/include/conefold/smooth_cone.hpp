#pragma once

// Smooth cones: Darboux frames along the spherical directrix and curves φ e1 on the cone.

#include "conefold/core_geometry.hpp"
#include "conefold/mesh.hpp"
#include "conefold/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conefold {

/// κ(ς) for one value of the deformation parameter: either a callback or samples with
/// derivatives, interpolated by cubic Hermite between nodes.
class CurvatureField {
 public:
  using Fn = std::function<double(double)>;

  static CurvatureField constant(double c) {
    return from_function([c](double) { return c; }, [](double) { return 0.0; });
  }
  static CurvatureField from_function(Fn k, Fn kp) {
    CurvatureField f;
    f.fn_ = std::move(k);
    f.fnp_ = std::move(kp);
    return f;
  }
  static CurvatureField sampled(std::vector<double> grid, std::vector<double> k, std::vector<double> kp) {
    if (grid.size() < 2 || k.size() != grid.size() || kp.size() != grid.size())
      throw std::invalid_argument("curvature samples must match the grid");
    CurvatureField f;
    f.grid_ = std::move(grid);
    f.k_ = std::move(k);
    f.kp_ = std::move(kp);
    return f;
  }

  double at(double s) const {
    if (fn_) return fn_(s);
    return hermite(s, false);
  }
  double derivative_at(double s) const {
    if (fnp_) return fnp_(s);
    return hermite(s, true);
  }

  bool is_sampled() const { return !fn_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return k_; }
  const std::vector<double>& derivatives() const { return kp_; }

 private:
  double hermite(double s, bool deriv) const {
    if (s < grid_.front() - 1e-12 || s > grid_.back() + 1e-12) throw std::out_of_range("curvature requested off its grid");
    auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
    std::size_t i = it == grid_.begin() ? 0 : static_cast<std::size_t>(it - grid_.begin()) - 1;
    i = std::min(i, grid_.size() - 2);
    const double h = grid_[i + 1] - grid_[i];
    const double t = (s - grid_[i]) / h;
    const double y0 = k_[i], y1 = k_[i + 1], m0 = kp_[i] * h, m1 = kp_[i + 1] * h;
    if (!deriv) {
      const double t2 = t * t, t3 = t2 * t;
      return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
    }
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 + (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * m1) / h;
  }

  Fn fn_, fnp_;
  std::vector<double> grid_, k_, kp_;
};

struct Frame {
  Vec3 e1 = Vec3::UnitX(), e2 = Vec3::UnitY(), e3 = Vec3::UnitZ();
};

struct FrameSamples {
  std::vector<double> grid;
  std::vector<Vec3> e1, e2, e3;

  /// Largest deviation of (e1, e2, e3) from an orthonormal frame over the samples.
  double orthonormality_drift() const {
    double d = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      Mat3 m;
      m.col(0) = e1[i];
      m.col(1) = e2[i];
      m.col(2) = e3[i];
      d = std::max(d, (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff());
    }
    return d;
  }
};

namespace detail {

inline void require_increasing(const std::vector<double>& g) {
  if (g.size() < 2) throw std::invalid_argument("grid needs at least two nodes");
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[i] > g[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
}

inline void require_orthonormal(const Frame& f) {
  Mat3 m;
  m.col(0) = f.e1;
  m.col(1) = f.e2;
  m.col(2) = f.e3;
  if ((m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-12 || m.determinant() < 0.0)
    throw std::invalid_argument("initial frame must be orthonormal and right-handed");
}

}  // namespace detail

/// Classical RK4 for e1' = e2, e2' = -e1 + κ e3, e3' = -κ e2 over the grid nodes.
/// No re-orthonormalization; the drift is left visible.
inline FrameSamples darboux_integrate(const CurvatureField& kappa, const std::vector<double>& grid, const Frame& initial = {}) {
  detail::require_increasing(grid);
  detail::require_orthonormal(initial);
  using State = Eigen::Matrix<double, 9, 1>;
  auto rhs = [&kappa](double s, const State& y) {
    const double k = kappa.at(s);
    State d;
    d.segment<3>(0) = y.segment<3>(3);
    d.segment<3>(3) = -y.segment<3>(0) + k * y.segment<3>(6);
    d.segment<3>(6) = -k * y.segment<3>(3);
    return d;
  };
  FrameSamples out;
  out.grid = grid;
  State y;
  y << initial.e1, initial.e2, initial.e3;
  auto push = [&out](const State& s) {
    out.e1.push_back(s.segment<3>(0));
    out.e2.push_back(s.segment<3>(3));
    out.e3.push_back(s.segment<3>(6));
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

/// max |(p' x p'') . p'''| / |p' x p''|^2 over the interior nodes, with fourth-order central
/// differences on a uniform grid.
inline double torsion_residual(const std::vector<Vec3>& p, const std::vector<double>& grid) {
  if (p.size() != grid.size() || p.size() < 7) throw std::invalid_argument("torsion needs at least 7 samples");
  const double h = uniform_step(grid);
  double worst = 0.0;
  for (std::size_t i = 3; i + 3 < p.size(); ++i) {
    const Vec3 d1 = (-p[i + 2] + 8 * p[i + 1] - 8 * p[i - 1] + p[i - 2]) / (12 * h);
    const Vec3 d2 = (-p[i + 2] + 16 * p[i + 1] - 30 * p[i] + 16 * p[i - 1] - p[i - 2]) / (12 * h * h);
    const Vec3 d3 = (-p[i + 3] + 8 * p[i + 2] - 13 * p[i + 1] + 13 * p[i - 1] - 8 * p[i - 2] + p[i - 3]) / (8 * h * h * h);
    const Vec3 c = d1.cross(d2);
    const double cn = c.norm();
    if (cn < 1e-8) throw std::domain_error("torsion undefined: p' x p'' vanishes near ς = " + std::to_string(grid[i]));
    worst = std::max(worst, std::abs(c.dot(d3)) / (cn * cn));
  }
  return worst;
}

// ---------------------------------------------------------------------------------------------
// Planarity condition and its solution

/// Φ = φ² - φ φ'' + 2 φ'².
inline double big_phi(const Jet& f) { return f.v * f.v - f.v * f.d2 + 2.0 * f.d1 * f.d1; }

/// K = Φ φ κ' + (κ² φ² φ' + φ² φ' + φ² φ''' - 6 φ φ' φ'' + 6 φ'³) κ.
inline double K_value(const Jet& f, double k, double kp) {
  const double p = f.v, p1 = f.d1, p2 = f.d2, p3 = f.d3;
  return big_phi(f) * p * kp + (k * k * p * p * p1 + p * p * p1 + p * p * p3 - 6 * p * p1 * p2 + 6 * p1 * p1 * p1) * k;
}

inline double K_residual(const ProfileFunction& phi, const CurvatureField& kappa, const std::vector<double>& grid) {
  double worst = 0.0;
  for (double s : grid) worst = std::max(worst, std::abs(K_value(phi(s), kappa.at(s), kappa.derivative_at(s))));
  return worst;
}

/// Same with κ and κ' given as samples on the grid (for instance κ' by finite differences).
inline double K_residual(const ProfileFunction& phi, const std::vector<double>& kappa, const std::vector<double>& kappa_prime,
                         const std::vector<double>& grid) {
  if (kappa.size() != grid.size() || kappa_prime.size() != grid.size())
    throw std::invalid_argument("curvature samples must match the grid");
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    worst = std::max(worst, std::abs(K_value(phi(grid[i]), kappa[i], kappa_prime[i])));
  return worst;
}

/// Sum of the six integrands of W (without the free term I).
inline double W_integrand(const Jet& f) {
  const double p = f.v, p1 = f.d1, p2 = f.d2;
  const double P = big_phi(f);
  return (2 * p1 / p + 8 * p1 * p1 * p1 / (p * p * p) + 8 * std::pow(p1, 5) / std::pow(p, 5) - 4 * p1 * p2 / (p * p) +
          2 * p1 * p2 * p2 / (p * p * p) - 8 * p1 * p1 * p1 * p2 / std::pow(p, 4)) /
         P;
}

/// Cumulative Simpson quadrature on a uniform grid, starting from 0 at the first node. Odd nodes
/// use the three-point interval rule h/12 (5 f0 + 8 f1 - f2).
inline std::vector<double> cumulative_simpson(const std::vector<double>& grid, const std::vector<double>& f) {
  const double h = uniform_step(grid);
  const std::size_t n = f.size();
  if (n < 3) throw std::invalid_argument("Simpson quadrature needs at least 3 nodes");
  std::vector<double> J(n, 0.0);
  for (std::size_t i = 2; i < n; i += 2) J[i] = J[i - 2] + h / 3.0 * (f[i - 2] + 4 * f[i - 1] + f[i]);
  for (std::size_t i = 1; i < n; i += 2) {
    if (i + 1 < n)
      J[i] = J[i - 1] + h / 12.0 * (5 * f[i - 1] + 8 * f[i] - f[i + 1]);
    else
      J[i] = J[i - 1] + h / 12.0 * (-f[i - 2] + 8 * f[i - 1] + 5 * f[i]);
  }
  return J;
}

namespace detail {

inline std::vector<Jet> profile_jets(const ProfileFunction& phi, const std::vector<double>& grid) {
  std::vector<Jet> out;
  out.reserve(grid.size());
  for (double s : grid) {
    const Jet f = phi(s);
    if (!(f.v > 0.0)) throw std::domain_error("profile must be positive on the grid (ς = " + std::to_string(s) + ")");
    out.push_back(f);
  }
  return out;
}

inline void require_nondegenerate(const Jet& f, double s) {
  const double scale = f.v * f.v + std::abs(f.v * f.d2) + 2 * f.d1 * f.d1;
  if (std::abs(big_phi(f)) <= 1e-12 * scale)
    throw std::domain_error("degenerate profile: Φ vanishes near ς = " + std::to_string(s));
}

}  // namespace detail

/// The integral part of W (lower limit at the first grid node).
inline std::vector<double> W_integral(const ProfileFunction& phi, const std::vector<double>& grid) {
  const auto jets = detail::profile_jets(phi, grid);
  std::vector<double> f;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    detail::require_nondegenerate(jets[i], grid[i]);
    f.push_back(W_integrand(jets[i]));
  }
  return cumulative_simpson(grid, f);
}

/// Infimum of I(η) keeping W > 0 on the grid.
inline double feasible_I_lower_bound(const ProfileFunction& phi, const std::vector<double>& grid) {
  const auto J = W_integral(phi, grid);
  return -*std::min_element(J.begin(), J.end());
}

/// κ = Φ / (φ³ √W), W = I + Σ integrals, sampled on a uniform grid; κ' follows from the
/// same expression with W' the integrand.
inline CurvatureField kappa_from_profile(const ProfileFunction& phi, double I_value, const std::vector<double>& grid) {
  const auto jets = detail::profile_jets(phi, grid);
  const auto J = W_integral(phi, grid);
  std::vector<double> k(grid.size()), kp(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Jet& f = jets[i];
    const double W = I_value + J[i];
    if (!(W > 0.0))
      throw std::domain_error("I(η) too small — no real deformation (W ≤ 0 at ς = " + std::to_string(grid[i]) + ")");
    const double P = big_phi(f);
    const double dP = 2 * f.v * f.d1 + 3 * f.d1 * f.d2 - f.v * f.d3;
    k[i] = P / (f.v * f.v * f.v * std::sqrt(W));
    kp[i] = k[i] * (dP / P - 3 * f.d1 / f.v - 0.5 * W_integrand(f) / W);
  }
  return CurvatureField::sampled(grid, std::move(k), std::move(kp));
}

/// Labels for the two degenerate solutions of K = 0 (κ ≡ 0 or φ ≡ 0) on the grid.
inline std::vector<std::string> degenerate_solutions(const ProfileFunction& phi, const CurvatureField& kappa,
                                                     const std::vector<double>& grid) {
  std::vector<std::string> out;
  double kmax = 0.0, pmax = 0.0;
  for (double s : grid) {
    kmax = std::max(kmax, std::abs(kappa.at(s)));
    pmax = std::max(pmax, std::abs(phi.value(s)));
  }
  if (kmax < 1e-14) out.push_back("κ ≡ 0: the directrix is a great circle and the cone is a plane");
  if (pmax < 1e-14) out.push_back("φ ≡ 0: the curve collapses to the vertex");
  return out;
}

// ---------------------------------------------------------------------------------------------
// Profiles built from other profiles

namespace detail {

inline void scan_denominator(const ProfileFunction& p, const std::function<double(double)>& den, const char* what) {
  const int n = 4001;
  double prev = den(p.lo());
  for (int i = 1; i < n; ++i) {
    const double s = p.lo() + (p.hi() - p.lo()) * i / (n - 1);
    const double cur = den(s);
    if (cur == 0.0 || (prev > 0.0) != (cur > 0.0))
      throw std::domain_error(std::string(what) + " denominator vanishes near ς = " + std::to_string(s));
    prev = cur;
  }
}

}  // namespace detail

/// φ1 = φ2 / (φ2 (C1 sin ς - C2 cos ς) ± 1), which solves U1 = 0.
inline ProfileFunction phi1_from_phi2(const ProfileFunction& phi2, double C1, double C2, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  auto den = [phi2, C1, C2, sign](double s) {
    const Jet x = Jet::variable(s);
    return phi2(s) * (C1 * sin(x) - C2 * cos(x)) + Jet::constant(sign);
  };
  detail::scan_denominator(phi2, [den](double s) { return den(s).v; }, "φ₁");
  return {[phi2, den](double s) { return phi2(s) / den(s); }, phi2.lo(), phi2.hi(), "phi1_from_phi2"};
}

/// φ = φ1 φ2 (λ - 1) / (λ φ1 - φ2): the curve at cross-ratio λ against φ1, φ2 and V.
inline ProfileFunction pencil_profile(const ProfileFunction& phi1, const ProfileFunction& phi2, double lambda) {
  if (lambda == 1.0) throw std::domain_error("cross-ratio λ = 1 maps the curve to the vertex");
  const double lo = std::max(phi1.lo(), phi2.lo()), hi = std::min(phi1.hi(), phi2.hi());
  if (!(lo < hi)) throw std::invalid_argument("profiles have disjoint domains");
  ProfileFunction dom({[](double) { return Jet{}; }}, lo, hi);
  detail::scan_denominator(dom, [&](double s) { return lambda * phi1.value(s) - phi2.value(s); }, "pencil");
  return {[phi1, phi2, lambda](double s) {
            const Jet a = phi1(s), b = phi2(s);
            return (lambda - 1.0) * (a * b) / (lambda * a - b);
          },
          lo, hi, "pencil"};
}

struct UResiduals {
  double U1_max = 0.0;
  double U0_max = 0.0;
};

/// U1 from Φ1² φ2⁶ - Φ2² φ1⁶. U0 from the affine fit in I of Φ2² φ1⁶ W1 - Φ1² φ2⁶ W2 at the
/// first two distinct I samples.
inline UResiduals U_residuals(const ProfileFunction& phi1, const ProfileFunction& phi2, const std::vector<double>& I_samples,
                              const std::vector<double>& grid) {
  std::size_t second = 1;
  while (second < I_samples.size() && I_samples[second] == I_samples[0]) ++second;
  if (I_samples.empty() || second >= I_samples.size()) throw std::invalid_argument("U residuals need two distinct I values");
  const double Ia = I_samples[0], Ib = I_samples[second];
  const auto J1 = W_integral(phi1, grid);
  const auto J2 = W_integral(phi2, grid);
  UResiduals r;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Jet a = phi1(grid[i]), b = phi2(grid[i]);
    const double P1 = big_phi(a), P2 = big_phi(b);
    const double a6 = std::pow(a.v, 6), b6 = std::pow(b.v, 6);
    r.U1_max = std::max(r.U1_max, std::abs(P1 * P1 * b6 - P2 * P2 * a6));
    auto G = [&](double I) { return P2 * P2 * a6 * (J1[i] + I) - P1 * P1 * b6 * (J2[i] + I); };
    const double slope = (G(Ib) - G(Ia)) / (Ib - Ia);
    r.U0_max = std::max(r.U0_max, std::abs(G(Ia) - slope * Ia));
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Sections of the integrated cone

struct SectionPlanarity {
  double torsion = 0.0;    // torsion_residual of the sampled curve
  double plane_fit = 0.0;  // planarity_residual (distance to the fitted plane / diameter)
};

inline std::vector<Vec3> cone_curve(const FrameSamples& frame, const ProfileFunction& phi) {
  std::vector<Vec3> p;
  for (std::size_t i = 0; i < frame.grid.size(); ++i) p.push_back(phi.value(frame.grid[i]) * frame.e1[i]);
  return p;
}

inline SectionPlanarity cone_section_planarity(const CurvatureField& kappa, const ProfileFunction& phi,
                                               const std::vector<double>& grid, const Frame& initial = {}) {
  const FrameSamples f = darboux_integrate(kappa, grid, initial);
  const auto p = cone_curve(f, phi);
  return {torsion_residual(p, grid), planarity_residual(p)};
}

/// Triangle fan of the cone from V through the samples of e1, rulings of length `length`.
inline Mesh cone_mesh(const FrameSamples& f, double length = 2.0, std::size_t stride = 1) {
  Mesh m;
  m.vertices.push_back(Vec3::Zero());
  for (std::size_t i = 0; i < f.e1.size(); i += std::max<std::size_t>(stride, 1)) m.vertices.push_back(length * f.e1[i]);
  for (int k = 1; k + 1 < static_cast<int>(m.vertices.size()); ++k) m.faces.push_back({0, k, k + 1});
  return m;
}

}  // namespace conefold
