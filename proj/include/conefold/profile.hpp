#pragma once

// Scalar profiles φ(ς) with derivatives up to order three.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conefold {

/// Value and first three derivatives of a scalar function, with the arithmetic that carries them.
struct Jet {
  double v = 0.0, d1 = 0.0, d2 = 0.0, d3 = 0.0;

  static Jet constant(double c) { return {c, 0.0, 0.0, 0.0}; }
  static Jet variable(double x) { return {x, 1.0, 0.0, 0.0}; }

  Jet operator-() const { return {-v, -d1, -d2, -d3}; }
  friend Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3}; }
  friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }
  friend Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
  }
  friend Jet operator*(double s, const Jet& a) { return {s * a.v, s * a.d1, s * a.d2, s * a.d3}; }
  friend Jet operator+(double s, const Jet& a) { return {s + a.v, a.d1, a.d2, a.d3}; }
  friend Jet operator-(double s, const Jet& a) { return s + (-a); }
  friend Jet operator*(const Jet& a, double s) { return s * a; }
  friend Jet operator+(const Jet& a, double s) { return s + a; }
  friend Jet operator-(const Jet& a, double s) { return (-s) + a; }
  friend Jet operator/(const Jet& a, double s) { return (1.0 / s) * a; }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

  friend Jet recip(const Jet& g) {
    if (g.v == 0.0) throw std::domain_error("division by zero in profile evaluation");
    const double r = 1.0 / g.v;
    const double r2 = r * r, r3 = r2 * r, r4 = r3 * r;
    return {r, -g.d1 * r2, (2.0 * g.d1 * g.d1 - g.v * g.d2) * r3,
            (-6.0 * g.d1 * g.d1 * g.d1 + 6.0 * g.v * g.d1 * g.d2 - g.v * g.v * g.d3) * r4};
  }
  friend Jet sin(const Jet& g) {
    const double s = std::sin(g.v), c = std::cos(g.v);
    return {s, c * g.d1, -s * g.d1 * g.d1 + c * g.d2,
            -c * g.d1 * g.d1 * g.d1 - 3.0 * s * g.d1 * g.d2 + c * g.d3};
  }
  friend Jet cos(const Jet& g) {
    const double s = std::sin(g.v), c = std::cos(g.v);
    return {c, -s * g.d1, -c * g.d1 * g.d1 - s * g.d2,
            s * g.d1 * g.d1 * g.d1 - 3.0 * c * g.d1 * g.d2 - s * g.d3};
  }
  friend Jet exp(const Jet& g) {
    const double e = std::exp(g.v);
    return {e, e * g.d1, e * (g.d1 * g.d1 + g.d2), e * (g.d1 * g.d1 * g.d1 + 3.0 * g.d1 * g.d2 + g.d3)};
  }
};

/// φ on a closed interval. Either analytic (a jet-valued callback) or value-only, in which case
/// derivatives come from fourth-order central differences with step 1e-4 times the domain length.
class ProfileFunction {
 public:
  using JetFn = std::function<Jet(double)>;
  using ValueFn = std::function<double(double)>;

  ProfileFunction() = default;
  ProfileFunction(JetFn fn, double lo, double hi, std::string name = "custom")
      : jet_(std::move(fn)), lo_(lo), hi_(hi), name_(std::move(name)) {
    check_domain();
  }

  static ProfileFunction from_values(ValueFn f, double lo, double hi, std::string name = "sampled") {
    ProfileFunction p;
    p.value_ = std::move(f);
    p.lo_ = lo;
    p.hi_ = hi;
    p.name_ = std::move(name);
    p.check_domain();
    return p;
  }

  Jet operator()(double x) const {
    if (jet_) return jet_(x);
    if (!value_) throw std::logic_error("empty profile");
    return fd_jet(x);
  }
  double value(double x) const { return (*this)(x).v; }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::string& name() const { return name_; }
  bool analytic() const { return static_cast<bool>(jet_); }

  /// Derivatives by central differences, for checking analytic callbacks. The default step is
  /// 1e-4 of the domain length; the third derivative then carries rounding noise of order
  /// 1e-16 / h³, so checks of φ''' want a coarser step.
  Jet fd_jet(double x, double step = 0.0) const {
    const double h = step > 0.0 ? step : 1e-4 * (hi_ - lo_);
    auto f = [this](double t) { return value_ ? value_(t) : jet_(t).v; };
    const double fm3 = f(x - 3 * h), fm2 = f(x - 2 * h), fm1 = f(x - h), f0 = f(x);
    const double fp1 = f(x + h), fp2 = f(x + 2 * h), fp3 = f(x + 3 * h);
    Jet j;
    j.v = f0;
    j.d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
    j.d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    j.d3 = (-fp3 + 8 * fp2 - 13 * fp1 + 13 * fm1 - 8 * fm2 + fm3) / (8 * h * h * h);
    return j;
  }

 private:
  void check_domain() const {
    if (!(lo_ < hi_) || !std::isfinite(lo_) || !std::isfinite(hi_))
      throw std::invalid_argument("profile domain must be a finite interval lo < hi");
  }

  JetFn jet_;
  ValueFn value_;
  double lo_ = 0.0, hi_ = 1.0;
  std::string name_ = "custom";
};

namespace profiles {

inline ProfileFunction constant(double c, double lo, double hi) {
  return {[c](double) { return Jet::constant(c); }, lo, hi, "constant"};
}

/// Σ coeffs[k] ς^k.
inline ProfileFunction polynomial(std::vector<double> coeffs, double lo, double hi) {
  return {[coeffs](double x) {
            Jet acc = Jet::constant(0.0);
            const Jet t = Jet::variable(x);
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + Jet::constant(*it);
            return acc;
          },
          lo, hi, "polynomial"};
}

/// a + b cos(ω ς + phase).
inline ProfileFunction trig(double a, double b, double omega, double phase, double lo, double hi) {
  return {[=](double x) { return a + b * cos(omega * Jet::variable(x) + phase); }, lo, hi, "trig"};
}

/// a + b exp(k ς).
inline ProfileFunction exponential(double a, double b, double k, double lo, double hi) {
  return {[=](double x) { return a + b * exp(k * Jet::variable(x)); }, lo, hi, "exp"};
}

/// 1 / (a + b cos(ω ς + phase)). For ω >= 1 these are the plane sections of the cone with constant
/// geodesic curvature √(ω² - 1) of its directrix.
inline ProfileFunction reciprocal_trig(double a, double b, double omega, double phase, double lo, double hi) {
  return {[=](double x) { return recip(a + b * cos(omega * Jet::variable(x) + phase)); }, lo, hi, "reciprocal_trig"};
}

}  // namespace profiles

/// Uniform grid of `count` nodes on [lo, hi].
inline std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2 || !(lo < hi)) throw std::invalid_argument("grid needs count >= 2 and lo < hi");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double h = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = lo + h * i;
  g.back() = hi;
  return g;
}

/// Grid with step close to h covering [lo, hi].
inline std::vector<double> grid_with_step(double lo, double hi, double h) {
  const int n = std::max(2, static_cast<int>(std::lround((hi - lo) / h)) + 1);
  return uniform_grid(lo, hi, n);
}

/// Step of a uniform grid; throws if the spacing is not uniform.
inline double uniform_step(const std::vector<double>& g) {
  if (g.size() < 2) throw std::invalid_argument("grid needs at least two nodes");
  const double h = (g.back() - g.front()) / static_cast<double>(g.size() - 1);
  if (!(h > 0.0)) throw std::invalid_argument("grid must be strictly increasing");
  for (std::size_t i = 1; i < g.size(); ++i)
    if (std::abs((g[i] - g[i - 1]) - h) > 1e-9 * h) throw std::invalid_argument("grid must be uniform");
  return h;
}

/// Fourth-order finite-difference derivative of samples on a uniform grid (one-sided stencils
/// of the same order at the ends).
inline std::vector<double> fd_derivative(const std::vector<double>& grid, const std::vector<double>& f) {
  const double h = uniform_step(grid);
  const std::size_t n = f.size();
  if (n != grid.size() || n < 5) throw std::invalid_argument("fd_derivative needs at least 5 samples");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 2 && i + 2 < n) {
      d[i] = (-f[i + 2] + 8 * f[i + 1] - 8 * f[i - 1] + f[i - 2]) / (12 * h);
    } else if (i < 2) {
      d[i] = (-25 * f[i] + 48 * f[i + 1] - 36 * f[i + 2] + 16 * f[i + 3] - 3 * f[i + 4]) / (12 * h);
    } else {
      d[i] = (25 * f[i] - 48 * f[i - 1] + 36 * f[i - 2] - 16 * f[i - 3] + 3 * f[i - 4]) / (12 * h);
    }
  }
  return d;
}

}  // namespace conefold
