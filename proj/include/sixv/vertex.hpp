#pragma once

// Local algebra of the six-vertex model: weights a, b, c, the R- and
// L-matrices, the diagonal reflecting-end matrix K+, and a Yang-Baxter check.
//
// Basis conventions shared by the whole library:
//   * a two-state site has index 0 = up, 1 = down;
//   * two-site spaces are ordered {uu, ud, du, dd}, first factor = auxiliary
//     (row) space, index 2*aux + site;
//   * sigma^2 |up> = i |down>, sigma^2 |down> = -i |up>.

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "sixv/core.hpp"

namespace sixv {

template <class Real = double>
struct ModelParams {
  std::vector<Complex<Real>> lambdas;
  std::vector<Complex<Real>> nus;
  Complex<Real> eta{0.5};
  Complex<Real> zeta_plus{0.8};

  int size() const { return static_cast<int>(lambdas.size()); }

  void validate() const {
    if (lambdas.empty()) throw ConfigError("model needs N >= 1");
    if (lambdas.size() != nus.size()) {
      throw ConfigError("lambda and nu lists differ in length (" + std::to_string(lambdas.size()) + " vs " +
                        std::to_string(nus.size()) + ")");
    }
  }

  template <class Other>
  ModelParams<Other> cast() const {
    ModelParams<Other> p;
    for (const auto& l : lambdas) p.lambdas.emplace_back(Other(l.real()), Other(l.imag()));
    for (const auto& n : nus) p.nus.emplace_back(Other(n.real()), Other(n.imag()));
    p.eta = {Other(eta.real()), Other(eta.imag())};
    p.zeta_plus = {Other(zeta_plus.real()), Other(zeta_plus.imag())};
    return p;
  }
};

template <class Real>
using Mat2 = std::array<std::array<Complex<Real>, 2>, 2>;

template <class Real>
using Mat4 = std::array<std::array<Complex<Real>, 4>, 4>;

template <class Real>
struct Weights {
  Complex<Real> a, b, c;
};

/// a = 1, b = sh(u)/sh(u+eta), c = sh(eta)/sh(u+eta).
template <class Real>
Weights<Real> weights(Complex<Real> u, Complex<Real> eta, const Settings& st = {}) {
  const auto d = std::sinh(u + eta);
  if (static_cast<double>(std::abs(d)) <= st.weight_tol) {
    throw SingularWeight("sh(u + eta) vanishes at u = " + std::to_string(static_cast<double>(u.real())));
  }
  return {Complex<Real>(1), std::sinh(u) / d, std::sinh(eta) / d};
}

template <class Real>
Mat4<Real> r_matrix(Complex<Real> u, Complex<Real> eta, const Settings& st = {}) {
  const auto w = weights(u, eta, st);
  Mat4<Real> r{};
  r[0][0] = w.a;
  r[3][3] = w.a;
  r[1][1] = w.b;
  r[2][2] = w.b;
  r[1][2] = w.c;
  r[2][1] = w.c;
  return r;
}

/// L(lambda, nu) = R(lambda - nu - eta/2).
template <class Real>
Mat4<Real> l_matrix(Complex<Real> lambda, Complex<Real> nu, Complex<Real> eta, const Settings& st = {}) {
  return r_matrix(lambda - nu - eta / Real(2), eta, st);
}

template <class Real>
Mat2<Real> sigma2() {
  using C = Complex<Real>;
  return {{{C(0), C(0, -1)}, {C(0, 1), C(0)}}};
}

template <class Real>
Mat2<Real> sigma3() {
  using C = Complex<Real>;
  return {{{C(1), C(0)}, {C(0), C(-1)}}};
}

/// (X (x) 1) M (Y (x) 1) on the two-site space, X and Y acting on the first factor.
template <class Real>
Mat4<Real> sandwich_aux(const Mat2<Real>& x, const Mat4<Real>& m, const Mat2<Real>& y) {
  Mat4<Real> out{};
  for (int a1 = 0; a1 < 2; ++a1)
    for (int s1 = 0; s1 < 2; ++s1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int s2 = 0; s2 < 2; ++s2) {
          Complex<Real> acc(0);
          for (int b1 = 0; b1 < 2; ++b1)
            for (int b2 = 0; b2 < 2; ++b2) acc += x[a1][b1] * m[2 * b1 + s1][2 * b2 + s2] * y[b2][a2];
          out[2 * a1 + s1][2 * a2 + s2] = acc;
        }
  return out;
}

/// Odd-row weight sigma^2 L(-lambda, nu) sigma^2, sigma^2 on the row space.
template <class Real>
Mat4<Real> conj_l_matrix(Complex<Real> lambda, Complex<Real> nu, Complex<Real> eta, const Settings& st = {}) {
  const auto s2 = sigma2<Real>();
  return sandwich_aux(s2, l_matrix(-lambda, nu, eta, st), s2);
}

/// K+(lambda) = diag(sh(lambda + eta/2 + zeta), sh(-lambda - eta/2 + zeta)).
template <class Real>
Mat2<Real> k_plus(Complex<Real> lambda, Complex<Real> eta, Complex<Real> zeta_plus) {
  const auto h = eta / Real(2);
  Mat2<Real> k{};
  k[0][0] = std::sinh(lambda + h + zeta_plus);
  k[1][1] = std::sinh(-lambda - h + zeta_plus);
  return k;
}

namespace detail {

// R acting on factors (i, j) of three two-state spaces; index = 4*s1 + 2*s2 + s3.
template <class Real>
std::array<std::array<Complex<Real>, 8>, 8> embed(const Mat4<Real>& r, int i, int j) {
  std::array<std::array<Complex<Real>, 8>, 8> out{};
  const int k = 3 - i - j;
  auto bit = [](int idx, int f) { return (idx >> (2 - f)) & 1; };
  for (int in = 0; in < 8; ++in)
    for (int o = 0; o < 8; ++o) {
      if (bit(in, k) != bit(o, k)) continue;
      out[o][in] = r[2 * bit(o, i) + bit(o, j)][2 * bit(in, i) + bit(in, j)];
    }
  return out;
}

template <class Real>
std::array<std::array<Complex<Real>, 8>, 8> mul8(const std::array<std::array<Complex<Real>, 8>, 8>& a,
                                                 const std::array<std::array<Complex<Real>, 8>, 8>& b) {
  std::array<std::array<Complex<Real>, 8>, 8> c{};
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k)
      for (int j = 0; j < 8; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace detail

/// max |R12(l) R13(l+m) R23(m) - R23(m) R13(l+m) R12(l)| on the triple space.
template <class Real>
double yang_baxter_residual(Complex<Real> lambda, Complex<Real> mu, Complex<Real> eta, const Settings& st = {}) {
  using detail::embed;
  using detail::mul8;
  const auto r12 = embed(r_matrix(lambda, eta, st), 0, 1);
  const auto r13 = embed(r_matrix(lambda + mu, eta, st), 0, 2);
  const auto r23 = embed(r_matrix(mu, eta, st), 1, 2);
  const auto lhs = mul8(mul8(r12, r13), r23);
  const auto rhs = mul8(mul8(r23, r13), r12);
  double res = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) res = std::max(res, static_cast<double>(std::abs(lhs[i][j] - rhs[i][j])));
  return res;
}

}  // namespace sixv
