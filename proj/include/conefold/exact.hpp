#pragma once

#include <gmpxx.h>

#include <array>
#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace conefold {

using Rational = mpq_class;

/// Parses "p", "p/q", or a plain decimal such as "-1.25" into an exact rational.
/// Anything else (nan, inf, expressions) is rejected.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("not a rational number: empty string");

  auto all_digits = [](std::string_view v) {
    if (v.empty()) return false;
    for (char c : v)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body(s);
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("not a rational number: " + s);
    out = Rational(mpz_class(std::string(num)), mpz_class(std::string(den)));
    if (out.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw std::invalid_argument("not a rational number: " + s);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    out = Rational(digits, scale);
  } else {
    if (!all_digits(body)) throw std::invalid_argument("not a rational number: " + s);
    out = Rational(mpz_class(std::string(body)));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

/// Exact value of a finite double.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational representation");
  return Rational(x);
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Multiplication table for Q[X, Y] / (X^2 - x1 X - x0, Y^2 - y1 Y - y0).
struct QuadraticAlgebra {
  Rational x1, x0;
  Rational y1, y0;

  /// Algebra whose generators are the roots of a2 X^2 + a1 X + a0 and b2 Y^2 + b1 Y + b0.
  static std::shared_ptr<const QuadraticAlgebra> from_quadratics(const Rational& a2, const Rational& a1,
                                                                 const Rational& a0, const Rational& b2,
                                                                 const Rational& b1, const Rational& b0) {
    if (a2 == 0 || b2 == 0) throw std::invalid_argument("quadratic algebra needs nonzero leading coefficients");
    auto alg = std::make_shared<QuadraticAlgebra>();
    alg->x1 = -a1 / a2;
    alg->x0 = -a0 / a2;
    alg->y1 = -b1 / b2;
    alg->y0 = -b0 / b2;
    return alg;
  }

  bool operator==(const QuadraticAlgebra&) const = default;
};

/// Element c0 + c1 X + c2 Y + c3 XY of a QuadraticAlgebra. Rationals embed with a null algebra.
///
/// An element is zero iff the corresponding polynomial expression vanishes for every choice of
/// roots X, Y of the defining quadratics (when those have distinct roots).
class ExtNumber {
 public:
  ExtNumber() = default;
  ExtNumber(const Rational& q) { c_[0] = q; }  // NOLINT(google-explicit-constructor)
  ExtNumber(long q) { c_[0] = q; }             // NOLINT(google-explicit-constructor)

  static ExtNumber generator_x(std::shared_ptr<const QuadraticAlgebra> alg) {
    ExtNumber e;
    e.alg_ = std::move(alg);
    e.c_[1] = 1;
    return e;
  }
  static ExtNumber generator_y(std::shared_ptr<const QuadraticAlgebra> alg) {
    ExtNumber e;
    e.alg_ = std::move(alg);
    e.c_[2] = 1;
    return e;
  }

  const std::array<Rational, 4>& coefficients() const { return c_; }
  const std::shared_ptr<const QuadraticAlgebra>& algebra() const { return alg_; }

  bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
  bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

  /// Numeric value for concrete roots x, y of the defining quadratics.
  double evaluate(double x, double y) const {
    return c_[0].get_d() + c_[1].get_d() * x + c_[2].get_d() * y + c_[3].get_d() * x * y;
  }

  ExtNumber operator-() const {
    ExtNumber r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  ExtNumber& operator+=(const ExtNumber& o) {
    adopt(o);
    for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
    return *this;
  }
  ExtNumber& operator-=(const ExtNumber& o) {
    adopt(o);
    for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  ExtNumber& operator*=(const ExtNumber& o) {
    *this = *this * o;
    return *this;
  }

  friend ExtNumber operator+(ExtNumber a, const ExtNumber& b) { return a += b; }
  friend ExtNumber operator-(ExtNumber a, const ExtNumber& b) { return a -= b; }
  friend ExtNumber operator*(const ExtNumber& a, const ExtNumber& b) {
    ExtNumber r;
    r.alg_ = a.alg_ ? a.alg_ : b.alg_;
    if (a.alg_ && b.alg_ && a.alg_ != b.alg_ && !(*a.alg_ == *b.alg_))
      throw std::logic_error("ExtNumber: mixing elements of different algebras");
    if (a.is_rational() || b.is_rational()) {
      const ExtNumber& scalar_side = a.is_rational() ? a : b;
      const ExtNumber& other = a.is_rational() ? b : a;
      for (int i = 0; i < 4; ++i) r.c_[i] = scalar_side.c_[0] * other.c_[i];
      return r;
    }
    const QuadraticAlgebra& g = *r.alg_;
    // Write each operand as u + v X with u, v in Q[Y]/(Y^2 - y1 Y - y0).
    auto ymul = [&g](const Rational& p, const Rational& q, const Rational& s, const Rational& t,
                     Rational& out0, Rational& out1) {
      Rational qt = q * t;
      out0 = p * s + qt * g.y0;
      out1 = p * t + q * s + qt * g.y1;
    };
    Rational uw0, uw1, uz0, uz1, vw0, vw1, vz0, vz1;
    ymul(a.c_[0], a.c_[2], b.c_[0], b.c_[2], uw0, uw1);
    ymul(a.c_[0], a.c_[2], b.c_[1], b.c_[3], uz0, uz1);
    ymul(a.c_[1], a.c_[3], b.c_[0], b.c_[2], vw0, vw1);
    ymul(a.c_[1], a.c_[3], b.c_[1], b.c_[3], vz0, vz1);
    r.c_[0] = uw0 + vz0 * g.x0;
    r.c_[2] = uw1 + vz1 * g.x0;
    r.c_[1] = uz0 + vw0 + vz0 * g.x1;
    r.c_[3] = uz1 + vw1 + vz1 * g.x1;
    return r;
  }

  friend bool operator==(const ExtNumber& a, const ExtNumber& b) { return (a - b).is_zero(); }

 private:
  void adopt(const ExtNumber& o) {
    if (!alg_) {
      alg_ = o.alg_;
    } else if (o.alg_ && o.alg_ != alg_ && !(*o.alg_ == *alg_)) {
      throw std::logic_error("ExtNumber: mixing elements of different algebras");
    }
  }

  std::shared_ptr<const QuadraticAlgebra> alg_;
  std::array<Rational, 4> c_{};
};

// Scalar traits shared by the templated evaluators.

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational> || std::is_same_v<T, ExtNumber>;

inline bool is_zero(double x, double tol = 0.0) { return std::abs(x) <= tol; }
inline bool is_zero(const Rational& x, double = 0.0) { return x == 0; }
inline bool is_zero(const ExtNumber& x, double = 0.0) { return x.is_zero(); }

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

}  // namespace conefold
