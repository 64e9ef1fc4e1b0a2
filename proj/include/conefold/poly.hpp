#pragma once

#include "conefold/exact.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conefold {

template <class T>
class UniPoly;
template <class T>
bool is_zero(const UniPoly<T>& p, double tol = 0.0);

/// Dense univariate polynomial over a commutative ring T; coefficient index = degree.
/// The zero polynomial has no coefficients and degree -1.
template <class T>
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
  explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(const T& constant) : c_{constant} { trim(); }  // NOLINT(google-explicit-constructor)

  static UniPoly monomial(const T& coeff, int degree) {
    std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
    c.back() = coeff;
    return UniPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coefficients() const { return c_; }

  /// Coefficient of x^k (zero outside the stored range).
  T coeff(int k) const {
    if (k < 0 || k > degree()) return T(0);
    return c_[static_cast<std::size_t>(k)];
  }
  const T& leading() const { return c_.back(); }

  template <class X>
  X evaluate(const X& x) const {
    X acc = X(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
    return acc;
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = T(-c);
    return r;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (conefold::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(c));
  }
  UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
  UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return (a - b).is_zero(); }

 private:
  void trim() {
    while (!c_.empty() && conefold::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

template <class T>
bool is_zero(const UniPoly<T>& p, double) {
  return p.is_zero();
}

/// Exact division by a monic divisor. Returns {quotient, remainder}.
template <class T>
std::pair<UniPoly<T>, UniPoly<T>> divide_by_monic(const UniPoly<T>& num, const UniPoly<T>& monic) {
  if (monic.is_zero() || !(monic.leading() == T(1)))
    throw std::invalid_argument("divide_by_monic: divisor must be monic");
  const int dd = monic.degree();
  std::vector<T> rem = num.coefficients();
  if (num.degree() < dd) return {UniPoly<T>{}, num};
  std::vector<T> quot(static_cast<std::size_t>(num.degree() - dd) + 1, T(0));
  for (int k = num.degree(); k >= dd; --k) {
    T lead = rem[static_cast<std::size_t>(k)];
    quot[static_cast<std::size_t>(k - dd)] = lead;
    if (conefold::is_zero(lead)) continue;
    for (int j = 0; j <= dd; ++j) {
      auto idx = static_cast<std::size_t>(k - dd + j);
      rem[idx] = rem[idx] - lead * monic.coeff(j);
    }
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {UniPoly<T>(std::move(quot)), UniPoly<T>(std::move(rem))};
}

/// Square matrix with entries in a ring, row-major.
template <class T>
struct SquareMatrix {
  int n = 0;
  std::vector<T> a;

  explicit SquareMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, T(0)) {}
  T& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  const T& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

namespace detail {

template <class T>
T laplace_det(const SquareMatrix<T>& m, std::vector<int>& rows, std::vector<int>& cols) {
  const std::size_t k = rows.size();
  if (k == 1) return m(rows[0], cols[0]);
  if (k == 2) return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
  // Expand along the first remaining column.
  const int col = cols.front();
  std::vector<int> sub_cols(cols.begin() + 1, cols.end());
  T acc = T(0);
  for (std::size_t i = 0; i < k; ++i) {
    const T& entry = m(rows[i], col);
    if (conefold::is_zero(entry)) continue;
    std::vector<int> sub_rows;
    sub_rows.reserve(k - 1);
    for (std::size_t j = 0; j < k; ++j)
      if (j != i) sub_rows.push_back(rows[j]);
    T minor = laplace_det(m, sub_rows, sub_cols);
    if (i % 2 == 0)
      acc = acc + entry * minor;
    else
      acc = acc - entry * minor;
  }
  return acc;
}

}  // namespace detail

/// Determinant by cofactor expansion; uses only ring operations so it works over polynomials
/// and the quadratic algebra. Intended for the small matrices that appear here (n <= 8).
template <class T>
T determinant(const SquareMatrix<T>& m) {
  if (m.n == 0) return T(1);
  if (m.n > 8) throw std::invalid_argument("determinant: cofactor expansion limited to n <= 8");
  std::vector<int> rows(static_cast<std::size_t>(m.n)), cols(static_cast<std::size_t>(m.n));
  for (int i = 0; i < m.n; ++i) rows[static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)] = i;
  return detail::laplace_det(m, rows, cols);
}

/// Sylvester matrix of p and q taken with formal degrees n >= deg p and m >= deg q, size n + m.
/// Rows hold shifted coefficient vectors in ascending order: m rows of p, then n rows of q.
template <class T>
SquareMatrix<T> sylvester_matrix(const UniPoly<T>& p, const UniPoly<T>& q, int n, int m) {
  if (n < p.degree() || m < q.degree()) throw std::invalid_argument("formal degree below actual degree");
  SquareMatrix<T> s(n + m);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(r, r + k) = p.coeff(k);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(m + r, r + k) = q.coeff(k);
  return s;
}

template <class T>
SquareMatrix<T> sylvester_matrix(const UniPoly<T>& p, const UniPoly<T>& q) {
  return sylvester_matrix(p, q, p.degree(), q.degree());
}

/// Resultant of p and q as the determinant of their Sylvester matrix. Vanishes iff p and q
/// share a root over the algebraic closure (or both leading coefficients vanish).
template <class T>
T sylvester_resultant(const UniPoly<T>& p, const UniPoly<T>& q) {
  if (p.degree() < 1 && q.degree() < 1) throw std::invalid_argument("degenerate resultant");
  if (p.is_zero() || q.is_zero()) return T(0);
  return determinant(sylvester_matrix(p, q));
}

/// Resultant with formal degrees, so that it stays a polynomial identity in the coefficients
/// when a leading coefficient happens to vanish.
template <class T>
T sylvester_resultant(const UniPoly<T>& p, const UniPoly<T>& q, int n, int m) {
  if (n < 1 && m < 1) throw std::invalid_argument("degenerate resultant");
  return determinant(sylvester_matrix(p, q, n, m));
}

}  // namespace conefold
