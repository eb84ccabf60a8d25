#pragma once

// Truncated Taylor series (jets) in one and two variables.
//
// A Series1 stores c_0..c_K with c_m = f^{(m)}(base) / m!. A Series2 stores the
// rectangular grid c_{m,n} of mixed Taylor coefficients, m <= K1, n <= K2.
// Arithmetic truncates to the smaller order of the operands. sinh, cosh and exp
// are propagated with the usual first-order ODE recurrences, so high mixed
// partials come out exact up to rounding.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sixv/core.hpp"

namespace sixv {

template <class S>
class Series1 {
 public:
  Series1() : coeffs_(1, S(0)) {}
  Series1(S base, std::size_t order) : base_(base), coeffs_(order + 1, S(0)) {}
  Series1(S base, std::vector<S> coeffs) : base_(base), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.assign(1, S(0));
  }

  static Series1 constant(S value, std::size_t order, S base = S(0)) {
    Series1 s(base, order);
    s.coeffs_[0] = value;
    return s;
  }

  /// The identity jet t -> base + t.
  static Series1 variable(S base, std::size_t order) {
    Series1 s(base, order);
    s.coeffs_[0] = base;
    if (order >= 1) s.coeffs_[1] = S(1);
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const S& base() const { return base_; }
  const std::vector<S>& coeffs() const { return coeffs_; }
  S& operator[](std::size_t m) { return coeffs_[m]; }
  const S& operator[](std::size_t m) const { return coeffs_[m]; }
  S value() const { return coeffs_[0]; }

  Series1 truncated(std::size_t order) const {
    Series1 r(base_, std::min(order, this->order()));
    for (std::size_t m = 0; m <= r.order(); ++m) r.coeffs_[m] = coeffs_[m];
    return r;
  }

  Series1& operator+=(const Series1& o) { return *this = *this + o; }
  Series1& operator-=(const Series1& o) { return *this = *this - o; }
  Series1& operator*=(const Series1& o) { return *this = *this * o; }
  Series1& operator/=(const Series1& o) { return *this = *this / o; }

  friend Series1 operator+(const Series1& a, const Series1& b) {
    Series1 r(a.base_, std::min(a.order(), b.order()));
    for (std::size_t m = 0; m <= r.order(); ++m) r.coeffs_[m] = a.coeffs_[m] + b.coeffs_[m];
    return r;
  }
  friend Series1 operator-(const Series1& a, const Series1& b) {
    Series1 r(a.base_, std::min(a.order(), b.order()));
    for (std::size_t m = 0; m <= r.order(); ++m) r.coeffs_[m] = a.coeffs_[m] - b.coeffs_[m];
    return r;
  }
  friend Series1 operator-(const Series1& a) {
    Series1 r = a;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Series1 operator*(const Series1& a, const Series1& b) {
    Series1 r(a.base_, std::min(a.order(), b.order()));
    for (std::size_t m = 0; m <= r.order(); ++m) {
      S acc(0);
      for (std::size_t k = 0; k <= m; ++k) acc += a.coeffs_[k] * b.coeffs_[m - k];
      r.coeffs_[m] = acc;
    }
    return r;
  }
  friend Series1 operator/(const Series1& a, const Series1& b) { return divide(a, b, 1e-14); }

  /// Long division q = a / b, q_m = (a_m - sum_{k>=1} b_k q_{m-k}) / b_0.
  static Series1 divide(const Series1& a, const Series1& b, double tol) {
    if (static_cast<double>(std::abs(b.coeffs_[0])) <= tol) {
      throw DivisionBySingularSeries("series division: constant term below tolerance");
    }
    Series1 q(a.base_, std::min(a.order(), b.order()));
    for (std::size_t m = 0; m <= q.order(); ++m) {
      S acc = a.coeffs_[m];
      for (std::size_t k = 1; k <= m; ++k) acc -= b.coeffs_[k] * q.coeffs_[m - k];
      q.coeffs_[m] = acc / b.coeffs_[0];
    }
    return q;
  }

  friend Series1 operator+(const Series1& a, const S& x) {
    Series1 r = a;
    r.coeffs_[0] += x;
    return r;
  }
  friend Series1 operator+(const S& x, const Series1& a) { return a + x; }
  friend Series1 operator-(const Series1& a, const S& x) {
    Series1 r = a;
    r.coeffs_[0] -= x;
    return r;
  }
  friend Series1 operator-(const S& x, const Series1& a) { return -a + x; }
  friend Series1 operator*(const Series1& a, const S& x) {
    Series1 r = a;
    for (auto& c : r.coeffs_) c *= x;
    return r;
  }
  friend Series1 operator*(const S& x, const Series1& a) { return a * x; }
  friend Series1 operator/(const Series1& a, const S& x) {
    Series1 r = a;
    for (auto& c : r.coeffs_) c /= x;
    return r;
  }
  friend Series1 operator/(const S& x, const Series1& a) { return constant(x, a.order(), a.base_) / a; }

 private:
  S base_{0};
  std::vector<S> coeffs_;
};

/// d/dt: c_m -> (m+1) c_{m+1}, order drops by one.
template <class S>
Series1<S> derivative(const Series1<S>& s) {
  if (s.order() == 0) return Series1<S>::constant(S(0), 0, s.base());
  Series1<S> r(s.base(), s.order() - 1);
  for (std::size_t m = 0; m <= r.order(); ++m) r[m] = S(double(m + 1)) * s[m + 1];
  return r;
}

/// sinh and cosh of a jet together: S' = C s', C' = S s'.
template <class S>
std::pair<Series1<S>, Series1<S>> sinh_cosh(const Series1<S>& s) {
  using std::cosh;
  using std::sinh;
  const std::size_t K = s.order();
  Series1<S> sh(s.base(), K), ch(s.base(), K);
  sh[0] = sinh(s[0]);
  ch[0] = cosh(s[0]);
  for (std::size_t m = 1; m <= K; ++m) {
    S as(0), ac(0);
    for (std::size_t k = 1; k <= m; ++k) {
      const S ks = S(double(k)) * s[k];
      as += ks * ch[m - k];
      ac += ks * sh[m - k];
    }
    sh[m] = as / S(double(m));
    ch[m] = ac / S(double(m));
  }
  return {sh, ch};
}

template <class S>
Series1<S> sinh(const Series1<S>& s) {
  return sinh_cosh(s).first;
}
template <class S>
Series1<S> cosh(const Series1<S>& s) {
  return sinh_cosh(s).second;
}

template <class S>
Series1<S> exp(const Series1<S>& s) {
  using std::exp;
  const std::size_t K = s.order();
  Series1<S> e(s.base(), K);
  e[0] = exp(s[0]);
  for (std::size_t m = 1; m <= K; ++m) {
    S acc(0);
    for (std::size_t k = 1; k <= m; ++k) acc += S(double(k)) * s[k] * e[m - k];
    e[m] = acc / S(double(m));
  }
  return e;
}

// ---------------------------------------------------------------------------

template <class S>
class Series2 {
 public:
  using Row = Series1<S>;  // series in the second variable

  Series2() : Series2({S(0), S(0)}, {0, 0}) {}
  Series2(std::array<S, 2> base, std::array<std::size_t, 2> orders)
      : base_(base), orders_(orders), coeffs_((orders[0] + 1) * (orders[1] + 1), S(0)) {}

  static Series2 constant(S value, std::array<std::size_t, 2> orders, std::array<S, 2> base = {S(0), S(0)}) {
    Series2 s(base, orders);
    s(0, 0) = value;
    return s;
  }

  /// Identity jet of variable `which` (0 or 1) expanded about base[which].
  static Series2 variable(int which, std::array<S, 2> base, std::array<std::size_t, 2> orders) {
    Series2 s(base, orders);
    s(0, 0) = base[which];
    if (which == 0 && orders[0] >= 1) s(1, 0) = S(1);
    if (which == 1 && orders[1] >= 1) s(0, 1) = S(1);
    return s;
  }

  const std::array<std::size_t, 2>& orders() const { return orders_; }
  const std::array<S, 2>& base() const { return base_; }
  S& operator()(std::size_t m, std::size_t n) { return coeffs_[m * (orders_[1] + 1) + n]; }
  const S& operator()(std::size_t m, std::size_t n) const { return coeffs_[m * (orders_[1] + 1) + n]; }
  S value() const { return (*this)(0, 0); }

  /// Coefficients with first-variable power m, as a series in the second variable.
  Row row(std::size_t m) const {
    Row r(base_[1], orders_[1]);
    for (std::size_t n = 0; n <= orders_[1]; ++n) r[n] = (*this)(m, n);
    return r;
  }
  void set_row(std::size_t m, const Row& r) {
    for (std::size_t n = 0; n <= orders_[1]; ++n) (*this)(m, n) = n <= r.order() ? r[n] : S(0);
  }
  /// Coefficients with second-variable power n, as a series in the first variable.
  Series1<S> column(std::size_t n) const {
    Series1<S> c(base_[0], orders_[0]);
    for (std::size_t m = 0; m <= orders_[0]; ++m) c[m] = (*this)(m, n);
    return c;
  }

  friend Series2 operator+(const Series2& a, const Series2& b) { return zip(a, b, [](S x, S y) { return x + y; }); }
  friend Series2 operator-(const Series2& a, const Series2& b) { return zip(a, b, [](S x, S y) { return x - y; }); }
  friend Series2 operator-(const Series2& a) {
    Series2 r = a;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Series2 operator*(const Series2& a, const Series2& b) {
    Series2 r(a.base_, common(a, b));
    for (std::size_t m = 0; m <= r.orders_[0]; ++m)
      for (std::size_t n = 0; n <= r.orders_[1]; ++n) {
        S acc(0);
        for (std::size_t i = 0; i <= m; ++i)
          for (std::size_t j = 0; j <= n; ++j) acc += a(i, j) * b(m - i, n - j);
        r(m, n) = acc;
      }
    return r;
  }
  friend Series2 operator/(const Series2& a, const Series2& b) { return divide(a, b, 1e-14); }

  /// Row-recursive long division: q_m = (a_m - sum_{k>=1} b_k q_{m-k}) / b_0,
  /// each row division itself a univariate long division.
  static Series2 divide(const Series2& a, const Series2& b, double tol) {
    if (static_cast<double>(std::abs(b(0, 0))) <= tol) {
      throw DivisionBySingularSeries("series division: constant term below tolerance");
    }
    const auto ord = common(a, b);
    Series2 q(a.base_, ord);
    const Row b0 = b.row(0).truncated(ord[1]);
    for (std::size_t m = 0; m <= ord[0]; ++m) {
      Row acc = a.row(m).truncated(ord[1]);
      for (std::size_t k = 1; k <= m; ++k) acc = acc - b.row(k).truncated(ord[1]) * q.row(m - k);
      q.set_row(m, Row::divide(acc, b0, tol));
    }
    return q;
  }

  friend Series2 operator+(const Series2& a, const S& x) {
    Series2 r = a;
    r(0, 0) += x;
    return r;
  }
  friend Series2 operator+(const S& x, const Series2& a) { return a + x; }
  friend Series2 operator-(const Series2& a, const S& x) {
    Series2 r = a;
    r(0, 0) -= x;
    return r;
  }
  friend Series2 operator-(const S& x, const Series2& a) { return -a + x; }
  friend Series2 operator*(const Series2& a, const S& x) {
    Series2 r = a;
    for (auto& c : r.coeffs_) c *= x;
    return r;
  }
  friend Series2 operator*(const S& x, const Series2& a) { return a * x; }
  friend Series2 operator/(const Series2& a, const S& x) {
    Series2 r = a;
    for (auto& c : r.coeffs_) c /= x;
    return r;
  }
  friend Series2 operator/(const S& x, const Series2& a) { return constant(x, a.orders_, a.base_) / a; }

  Series2& operator+=(const Series2& o) { return *this = *this + o; }
  Series2& operator-=(const Series2& o) { return *this = *this - o; }
  Series2& operator*=(const Series2& o) { return *this = *this * o; }

 private:
  static std::array<std::size_t, 2> common(const Series2& a, const Series2& b) {
    return {std::min(a.orders_[0], b.orders_[0]), std::min(a.orders_[1], b.orders_[1])};
  }
  template <class Op>
  static Series2 zip(const Series2& a, const Series2& b, Op op) {
    Series2 r(a.base_, common(a, b));
    for (std::size_t m = 0; m <= r.orders_[0]; ++m)
      for (std::size_t n = 0; n <= r.orders_[1]; ++n) r(m, n) = op(a(m, n), b(m, n));
    return r;
  }

  std::array<S, 2> base_;
  std::array<std::size_t, 2> orders_;
  std::vector<S> coeffs_;
};

/// Coupled recurrence in the first variable; each coefficient row is a
/// univariate series in the second variable.
template <class S>
std::pair<Series2<S>, Series2<S>> sinh_cosh(const Series2<S>& s) {
  using Row = typename Series2<S>::Row;
  const auto ord = s.orders();
  Series2<S> sh(s.base(), ord), ch(s.base(), ord);
  auto [s0, c0] = sinh_cosh(s.row(0));
  sh.set_row(0, s0);
  ch.set_row(0, c0);
  for (std::size_t m = 1; m <= ord[0]; ++m) {
    Row as(s.base()[1], ord[1]), ac(s.base()[1], ord[1]);
    for (std::size_t k = 1; k <= m; ++k) {
      const Row ks = s.row(k) * S(double(k));
      as = as + ks * ch.row(m - k);
      ac = ac + ks * sh.row(m - k);
    }
    sh.set_row(m, as / S(double(m)));
    ch.set_row(m, ac / S(double(m)));
  }
  return {sh, ch};
}

template <class S>
Series2<S> sinh(const Series2<S>& s) {
  return sinh_cosh(s).first;
}
template <class S>
Series2<S> cosh(const Series2<S>& s) {
  return sinh_cosh(s).second;
}

template <class S>
Series2<S> exp(const Series2<S>& s) {
  using Row = typename Series2<S>::Row;
  const auto ord = s.orders();
  Series2<S> e(s.base(), ord);
  e.set_row(0, exp(s.row(0)));
  for (std::size_t m = 1; m <= ord[0]; ++m) {
    Row acc(s.base()[1], ord[1]);
    for (std::size_t k = 1; k <= m; ++k) acc = acc + s.row(k) * S(double(k)) * e.row(m - k);
    e.set_row(m, acc / S(double(m)));
  }
  return e;
}

/// d^m/de1^m d^n/de2^n f at the base point, i.e. m! n! c_{m,n}.
template <class S>
S partial_coefficient(const Series2<S>& s, std::size_t m, std::size_t n) {
  if (m > s.orders()[0] || n > s.orders()[1]) {
    throw OrderExceeded("partial_coefficient: requested (" + std::to_string(m) + "," + std::to_string(n) +
                        ") beyond series orders");
  }
  return S(factorial(static_cast<int>(m)) * factorial(static_cast<int>(n))) * s(m, n);
}

}  // namespace sixv
