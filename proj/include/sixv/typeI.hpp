#pragma once

// Type I boundary two-point function Psi_1(M, L): the odd row 2M-1 turns
// column 1 down and the even row 2L turns column 2 down. Three evaluations:
// the (alpha, beta) double sum of minors, the same sum written as a
// determinant with two substitution-operator columns, and the homogeneous
// limit with derivative columns acting on a two-variable jet.

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "sixv/core.hpp"
#include "sixv/detkit.hpp"
#include "sixv/jets.hpp"
#include "sixv/parallel.hpp"
#include "sixv/partition.hpp"
#include "sixv/vertex.hpp"

namespace sixv {

enum class TypeIFactor { G1, G2, H1, H2 };

/// Antisymmetric sign table: +1 for alpha > beta, -1 for alpha < beta, 0 on the diagonal.
inline int epsilon_sign(int alpha, int beta) { return alpha > beta ? 1 : (alpha < beta ? -1 : 0); }

namespace detail {

template <class X>
X unit_like(const X& x) {
  return x * typename std::decay_t<decltype(x.value())>(0) + typename std::decay_t<decltype(x.value())>(1);
}
template <class Real>
Complex<Real> unit_like(const Complex<Real>&) {
  return Complex<Real>(1);
}

template <class Real>
void check_denominator(const Complex<Real>& x, const Settings& st, const char* what) {
  guard_nonzero(x, st.guard_tol, what);
}
template <class X>
void check_denominator(const X& x, const Settings& st, const char* what) {
  guard_nonzero(x.value(), st.guard_tol, what);
}

/// Product over j = 3..N of [sh^2 nu_j - sh^2(x)].
template <class X, class Real>
X nu_tail(const ModelParams<Real>& p, const X& x, const Settings& st) {
  X acc = unit_like(x);
  for (int j = 3; j <= p.size(); ++j) {
    X f = sh2(x) * Complex<Real>(-1) + sh2(p.nus[j - 1]);
    check_denominator(f, st, "sh^2 nu_j - sh^2(rapidity +- eta/2)");
    acc = acc * f;
  }
  return acc;
}

/// prod_{j=lo..hi} [sh^2(x) - sh^2 lambda_j] (empty range gives 1).
template <class X, class Real>
X lambda_product(const ModelParams<Real>& p, const X& x, int lo, int hi) {
  X acc = unit_like(x);
  const X s = sh2(x);
  for (int j = lo; j <= hi; ++j) acc = acc * (s - sh2(p.lambdas[j - 1]));
  return acc;
}

template <class X, class Real>
X g1(const ModelParams<Real>& p, int L, const X& a, const Settings& st) {
  using std::sinh;
  using C = Complex<Real>;
  const C eta = p.eta, h = eta / Real(2);
  const int n = p.size();
  X den = sinh(a * C(2)) * sinh(a + p.lambdas[L - 1] + eta);
  check_denominator(den, st, "sh(2 lambda_alpha) sh(lambda_alpha + lambda_L + eta)");
  X num = sinh(a + h - p.zeta_plus) * lambda_product(p, a + eta, 1, L) * lambda_product(p, a, L + 1, n);
  return num / (den * nu_tail(p, a + h, st));
}

template <class X, class Real>
X g2(const ModelParams<Real>& p, int L, const X& a, const Settings& st) {
  using std::sinh;
  using C = Complex<Real>;
  const C eta = p.eta, h = eta / Real(2);
  const int n = p.size();
  X den = sinh(a * C(2)) * sinh(a * C(2) - eta) * sinh(a - p.lambdas[L - 1] - eta);
  check_denominator(den, st, "sh(2 lambda_alpha) sh(2 lambda_alpha - eta) sh(lambda_alpha - lambda_L - eta)");
  X num = sinh(a * C(2) + eta) * sinh(a - h + p.zeta_plus) * lambda_product(p, a - eta, 1, L) *
          lambda_product(p, a, L + 1, n);
  return num / (den * nu_tail(p, a - h, st));
}

template <class X, class Real>
X h1(const ModelParams<Real>& p, int M, const X& b, const Settings& st) {
  using std::sinh;
  using C = Complex<Real>;
  const C eta = p.eta, h = eta / Real(2), nu2 = p.nus[1];
  const int n = p.size();
  X den = sinh(b * C(2)) * sinh(b + nu2 + h);
  check_denominator(den, st, "sh(2 lambda_beta) sh(lambda_beta + nu_2 + eta/2)");
  X num = sinh(b + p.lambdas[M - 1]) * sinh(b + h - p.zeta_plus) * sinh(b * C(-1) + h - nu2) *
          lambda_product(p, b + eta, 1, M - 1) * lambda_product(p, b, M + 1, n);
  return num / (den * nu_tail(p, b + h, st));
}

template <class X, class Real>
X h2(const ModelParams<Real>& p, int M, const X& b, const Settings& st) {
  using std::sinh;
  using C = Complex<Real>;
  const C eta = p.eta, h = eta / Real(2), nu2 = p.nus[1];
  const int n = p.size();
  X den = sinh(b * C(2)) * sinh(b * C(2) - eta) * sinh(b - nu2 - h);
  check_denominator(den, st, "sh(2 lambda_beta) sh(2 lambda_beta - eta) sh(lambda_beta - nu_2 - eta/2)");
  X num = sinh(b * C(2) + eta) * sinh(b - p.lambdas[M - 1]) * sinh(b * C(-1) + h - p.zeta_plus) *
          sinh(b - nu2 + h) * lambda_product(p, b - eta, 1, M - 1) * lambda_product(p, b, M + 1, n);
  return num / (den * nu_tail(p, b - h, st));
}

/// sum_{i,j in {1,2}} F_{i,j}(a, b).
template <class X, class Real>
X f_sum(const ModelParams<Real>& p, int M, int L, const X& a, const X& b, const Settings& st) {
  const Complex<Real> eta = p.eta;
  const X hs = h1(p, M, b, st) + h2(p, M, b, st);
  const X d1 = sh2(a + eta) - sh2(b);
  const X d2 = sh2(a - eta) - sh2(b);
  check_denominator(d1, st, "sh^2(lambda_alpha + eta) - sh^2 lambda_beta");
  check_denominator(d2, st, "sh^2(lambda_alpha - eta) - sh^2 lambda_beta");
  return g1(p, L, a, st) * hs / d1 + g2(p, L, a, st) * hs / d2;
}

inline void check_type1_indices(int n, int M, int L) {
  if (n < 2) throw IndexOutOfRange("Type I needs N >= 2");
  if (M < 1 || M > n || L < 1 || L > n) throw IndexOutOfRange("Type I: M, L must lie in 1..N");
  if (M >= L) throw OrderingViolation("Type I: requires M < L (got M=" + std::to_string(M) + ", L=" +
                                      std::to_string(L) + ")");
}

/// Everything in front of the double sum, except the 1/det_N chi factor.
template <class Real>
ScaledProduct<Real> type1_prefactor(const ModelParams<Real>& p, int M, int L, const Settings& st) {
  using C = Complex<Real>;
  const int n = p.size();
  const C eta = p.eta, h = eta / Real(2);
  const auto& lam = p.lambdas;
  const auto& nu = p.nus;
  ScaledProduct<Real> acc;
  acc.mul(sh2(eta));
  const C s1 = std::sinh(lam[M - 1] + nu[0] - h), s2 = std::sinh(lam[L - 1] - nu[1] - h);
  guard_nonzero(s1, st.guard_tol, "sh(lambda_M + nu_1 - eta/2)");
  guard_nonzero(s2, st.guard_tol, "sh(lambda_L - nu_2 - eta/2)");
  acc.div(s1);
  acc.div(s2);
  for (int j = 1; j <= M - 1; ++j) acc.div(sh2(nu[0] - h) - sh2(lam[j - 1]));
  for (int j = 2; j <= n; ++j) acc.mul(sh2(nu[0]) - sh2(nu[j - 1]));
  for (int j = 3; j <= n; ++j) acc.mul(sh2(nu[1]) - sh2(nu[j - 1]));
  for (int j = M; j <= n; ++j) acc.div(sh2(nu[0] + h) - sh2(lam[j - 1]));
  for (int j = 1; j <= L; ++j) acc.div(sh2(nu[1] - h) - sh2(lam[j - 1]));
  for (int j = L + 1; j <= n; ++j) acc.div(sh2(nu[1] + h) - sh2(lam[j - 1]));
  return acc;
}

}  // namespace detail

/// One of G1, G2 (functions of lambda_alpha) or H1, H2 (functions of lambda_beta).
template <class Real>
Complex<Real> typeI_factor(TypeIFactor which, const ModelParams<Real>& p, int M, int L, Complex<Real> rapidity,
                           const Settings& st = {}) {
  p.validate();
  detail::check_type1_indices(p.size(), M, L);
  switch (which) {
    case TypeIFactor::G1: return detail::g1(p, L, rapidity, st);
    case TypeIFactor::G2: return detail::g2(p, L, rapidity, st);
    case TypeIFactor::H1: return detail::h1(p, M, rapidity, st);
    case TypeIFactor::H2: return detail::h2(p, M, rapidity, st);
  }
  return {};
}

/// Psi_1(M, L) as the double sum over alpha <= L, beta <= M of (N-2)-minors of chi.
template <class Real>
Complex<Real> psi1_double_sum(const ModelParams<Real>& p, int M, int L, const Settings& st = {}) {
  using C = Complex<Real>;
  p.validate();
  const int n = p.size();
  detail::check_type1_indices(n, M, L);
  require_distinct_sh2(p.lambdas, st, "lambda");
  require_distinct_sh2(p.nus, st, "nu");
  const auto chi = chi_matrix(p.lambdas, p.nus, p.eta, p.zeta_plus, st);

  std::vector<std::array<int, 2>> pairs;
  for (int alpha = 1; alpha <= L; ++alpha)
    for (int beta = 1; beta <= M; ++beta)
      if (alpha != beta) pairs.push_back({alpha, beta});
  auto terms = parallel_map(pairs.size(), st.threads, [&](std::size_t t) {
    const auto [alpha, beta] = pairs[t];
    const C minor = minor_det(chi, {std::size_t(alpha - 1), std::size_t(beta - 1)}, {0, 1}, st.pivot_tol);
    const Real sign = Real(((alpha + beta) % 2 ? -1 : 1) * epsilon_sign(alpha, beta));
    return sign * minor * detail::f_sum(p, M, L, p.lambdas[alpha - 1], p.lambdas[beta - 1], st);
  });
  auto pre = detail::type1_prefactor(p, M, L, st);
  pre.div(lu_det(chi, st.pivot_tol));
  return pre.value() * tree_sum(std::move(terms));
}

/// Rapidities written as a common base plus per-row shifts.
template <class Real = double>
struct ShiftedParams {
  Complex<Real> lambda_base;
  std::vector<Complex<Real>> shifts;
  std::vector<Complex<Real>> nus;
  Complex<Real> eta;
  Complex<Real> zeta_plus;

  ModelParams<Real> expand() const {
    ModelParams<Real> p;
    for (const auto& z : shifts) p.lambdas.push_back(lambda_base + z);
    p.nus = nus;
    p.eta = eta;
    p.zeta_plus = zeta_plus;
    return p;
  }
};

/// Psi_1(M, L) from det(exp(z_j d_e1) | exp(z_j d_e2) | chi(lambda + z_j, nu_k))_{k>=3}
/// applied to sum F(lambda + e1, lambda + e2) at e = 0. The substitution
/// operators turn the Laplace expansion into F(lambda_p, lambda_q) for all p != q.
template <class Real>
Complex<Real> psi1_det_form(const ShiftedParams<Real>& sp, int M, int L, const Settings& st = {}) {
  using C = Complex<Real>;
  const auto p = sp.expand();
  p.validate();
  const int n = p.size();
  detail::check_type1_indices(n, M, L);
  require_distinct_sh2(p.lambdas, st, "lambda");
  require_distinct_sh2(p.nus, st, "nu");
  const auto chi = chi_matrix(p.lambdas, p.nus, p.eta, p.zeta_plus, st);
  const auto block = submatrix(chi, {}, {0, 1});
  const C d = laplace_two_column_expand(
      std::size_t(n),
      [&](std::size_t a, std::size_t b) { return detail::f_sum(p, M, L, p.lambdas[a], p.lambdas[b], st); }, block,
      st.pivot_tol);
  auto pre = detail::type1_prefactor(p, M, L, st);
  pre.div(lu_det(chi, st.pivot_tol));
  return pre.value() * d;
}

/// Jet of sum F^{(h)}(e1, e2) at coincident rapidities, orders (N-1, N-1).
template <class Real>
Series2<Complex<Real>> homogeneous_f_jet(Complex<Real> lambda, Complex<Real> nu, Complex<Real> eta,
                                         Complex<Real> zeta_plus, int n, int M, int L, const Settings& st = {}) {
  using C = Complex<Real>;
  ModelParams<Real> hp;
  hp.lambdas.assign(n, lambda);
  hp.nus.assign(n, nu);
  hp.eta = eta;
  hp.zeta_plus = zeta_plus;
  const std::array<std::size_t, 2> ord{std::size_t(n - 1), std::size_t(n - 1)};
  const std::array<C, 2> base{lambda, lambda};
  const auto a = Series2<C>::variable(0, base, ord);
  const auto b = Series2<C>::variable(1, base, ord);
  return detail::f_sum(hp, M, L, a, b, st);
}

/// Homogeneous limit lambda_j -> lambda, nu_k -> nu of Psi_1(M, L).
template <class Real>
Complex<Real> psi1_homogeneous(Complex<Real> lambda, Complex<Real> nu, Complex<Real> eta, Complex<Real> zeta_plus,
                               int n, int M, int L, const Settings& st = {}) {
  using C = Complex<Real>;
  detail::check_type1_indices(n, M, L);
  guard_nonzero(std::sinh(Real(2) * lambda), st.guard_tol, "sh 2 lambda");
  guard_nonzero(std::sinh(eta), st.guard_tol, "sh eta");
  const auto phi = phi_matrix_homogeneous(lambda, nu, eta, zeta_plus, n, st);
  const auto block = submatrix(phi, {}, {std::size_t(n - 2), std::size_t(n - 1)});
  const auto f = homogeneous_f_jet(lambda, nu, eta, zeta_plus, n, M, L, st);
  const C d = laplace_two_column_det(f, block, st.pivot_tol);

  const C h = eta / Real(2);
  ScaledProduct<Real> pre;
  pre.mul(C(factorial(n - 1) * factorial(n - 2)));
  pre.mul(sh2(eta));
  const C s2nu = std::sinh(Real(2) * nu);
  for (int k = 0; k < 2 * n - 3; ++k) pre.mul(s2nu);
  const C det_phi = lu_det(phi, st.pivot_tol);
  guard_nonzero(det_phi, 0.0, "det Phi");
  pre.div(det_phi);
  const C u = sh2(nu) - sh2(lambda - h);
  const C minus = sh2(nu - h) - sh2(lambda);
  const C plus = sh2(nu + h) - sh2(lambda);
  guard_nonzero(u, st.guard_tol, "sh^2 nu - sh^2(lambda - eta/2)");
  guard_nonzero(minus, st.guard_tol, "sh^2(nu - eta/2) - sh^2 lambda");
  guard_nonzero(plus, st.guard_tol, "sh^2(nu + eta/2) - sh^2 lambda");
  pre.div(u);
  for (int k = 0; k < L + M - 1; ++k) pre.div(minus);
  for (int k = 0; k < 2 * n - L - M + 1; ++k) pre.div(plus);
  return pre.value() * d;
}

}  // namespace sixv
