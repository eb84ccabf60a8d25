#pragma once

// Type II boundary two-point function Psi_2(M, L): the odd row 2M-1 turns
// column 1 down and the last even row turns column L up. The closed form sums
// over alpha = 1..M and the 2^(N-1) sign vectors sigma of lambda_1..lambda_{N-1}
// (reflection symmetry), each term carrying an (N-1) x (N-1) determinant h.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sixv/core.hpp"
#include "sixv/detkit.hpp"
#include "sixv/parallel.hpp"
#include "sixv/partition.hpp"
#include "sixv/vertex.hpp"

namespace sixv {

/// Signs sigma_1..sigma_{N-1}; entry j is +1 or -1.
using SigmaVector = std::vector<int>;

/// Bit j of mask clear means sigma_{j+1} = +1.
inline SigmaVector sigma_from_mask(std::uint64_t mask, int length) {
  SigmaVector s(length);
  for (int j = 0; j < length; ++j) s[j] = (mask >> j) & 1u ? -1 : 1;
  return s;
}

template <class Real = double>
struct HMatrix {
  Matrix<Complex<Real>> matrix;
  int alpha = 0;
  int L = 0;
};

namespace detail {

inline void check_type2_indices(int n, int M, int L) {
  if (n < 2) throw IndexOutOfRange("Type II needs N >= 2");
  if (M < 1 || M > n - 1) throw IndexOutOfRange("Type II: M must lie in 1..N-1 (got " + std::to_string(M) + ")");
  if (L < 1 || L > n) throw IndexOutOfRange("Type II: L must lie in 1..N (got " + std::to_string(L) + ")");
}

template <class Real>
std::vector<Complex<Real>> signed_lambdas(const ModelParams<Real>& p, const SigmaVector& sigma) {
  const int n = p.size();
  if (static_cast<int>(sigma.size()) != n - 1) throw ConfigError("sigma must have N-1 entries");
  std::vector<Complex<Real>> sl(n - 1);
  for (int j = 0; j < n - 1; ++j) {
    if (sigma[j] != 1 && sigma[j] != -1) throw ConfigError("sigma entries must be +1 or -1");
    sl[j] = Real(sigma[j]) * p.lambdas[j];
  }
  return sl;
}

}  // namespace detail

/// h for a given alpha and sigma. Column k uses nu_{k+1}; row 1 is the product
/// row, rows 2..N-1 are phi(sigma_i lambda_i, nu_{k+1}) over i != alpha.
template <class Real>
HMatrix<Real> build_h_matrix(const ModelParams<Real>& p, int alpha, int L, const SigmaVector& sigma,
                             const Settings& st = {}) {
  using C = Complex<Real>;
  p.validate();
  const int n = p.size();
  if (alpha < 1 || alpha > n - 1) throw IndexOutOfRange("h matrix: alpha must lie in 1..N-1");
  if (L < 1 || L > n) throw IndexOutOfRange("h matrix: L must lie in 1..N");
  const auto sl = detail::signed_lambdas(p, sigma);
  std::vector<C> others;
  for (int j = 0; j < n - 1; ++j)
    if (j != alpha - 1) others.push_back(sl[j]);
  const C eta = p.eta, h = eta / Real(2);
  Matrix<C> m(n - 1, n - 1);
  for (int k = 1; k < n; ++k) {
    const C nk = p.nus[k];
    ScaledProduct<Real> top;
    for (int i = 2; i <= L - 1; ++i) top.mul(std::sinh(p.nus[i - 1] - nk + eta));
    for (int i = L + 1; i <= n; ++i) top.mul(std::sinh(p.nus[i - 1] - nk));
    for (const C& x : others) {
      const C d = std::sinh(x - nk + h);
      guard_nonzero(d, st.guard_tol, "sh(sigma_i lambda_i - nu_k + eta/2)");
      top.div(d);
    }
    m(0, k - 1) = top.value();
    for (int j = 2; j <= n - 1; ++j) m(j - 1, k - 1) = phi_entry(others[j - 2], nk, eta, st);
  }
  return {std::move(m), alpha, L};
}

/// One (alpha, sigma) term of the sum, without the common prefactor.
template <class Real>
Complex<Real> psi2_sigma_term(const ModelParams<Real>& p, int M, int L, int alpha, const SigmaVector& sigma,
                              const Settings& st = {}) {
  using C = Complex<Real>;
  const int n = p.size();
  detail::check_type2_indices(n, M, L);
  if (alpha < 1 || alpha > M) throw IndexOutOfRange("Type II: alpha must lie in 1..M");
  const auto sl = detail::signed_lambdas(p, sigma);
  const C eta = p.eta, h = eta / Real(2), zeta = p.zeta_plus;
  const C sa = sl[alpha - 1];

  ScaledProduct<Real> t;
  for (int j = 0; j < n - 1; ++j) t.mul(Real(-sigma[j]) * std::sinh(-sl[j] + h - zeta));
  for (int j = 0; j < n - 1; ++j)
    for (int k = j + 1; k < n - 1; ++k) t.mul(std::sinh(sl[j] + sl[k] - eta));
  for (int j = 0; j < n - 1; ++j)
    for (int k = 1; k < n; ++k) {
      const C d = std::sinh(-sl[j] - p.nus[k] + h);
      guard_nonzero(d, st.guard_tol, "sh(-sigma_j lambda_j - nu_k + eta/2)");
      t.div(d);
    }
  for (int j = M; j < n - 1; ++j) t.mul(sh2(p.lambdas[alpha - 1]) - sh2(p.lambdas[j]));
  for (int j = 0; j < M - 1; ++j) t.mul(std::sinh(sa - sl[j] - eta));
  for (int j = 1; j < n; ++j) {
    const C d = std::sinh(sa - p.nus[j] - h);
    guard_nonzero(d, st.guard_tol, "sh(sigma_alpha lambda_alpha - nu_j - eta/2)");
    t.div(d);
  }
  for (int j = M - 1; j < n - 1; ++j) {
    const C d = std::sinh(sa + sl[j] - eta);
    guard_nonzero(d, st.guard_tol, "sh(sigma_alpha lambda_alpha + sigma_j lambda_j - eta)");
    t.div(d);
  }
  t.mul(Real(alpha % 2 ? -1 : 1) * std::sinh(-sa + p.lambdas[M - 1]));
  t.mul(lu_det(build_h_matrix(p, alpha, L, sigma, st).matrix, st.pivot_tol));
  return t.value();
}

/// Optional output of psi2: the largest |term| seen, to judge cancellation.
struct Psi2Diagnostics {
  double max_term_magnitude = 0;
  std::size_t terms = 0;
};

namespace detail {

template <class Real>
ScaledProduct<Real> type2_prefactor(const ModelParams<Real>& p, int M, int L, const Settings& st) {
  using C = Complex<Real>;
  const int n = p.size();
  const C eta = p.eta, h = eta / Real(2), zeta = p.zeta_plus;
  const auto& lam = p.lambdas;
  const auto& nu = p.nus;
  const C lN = lam[n - 1];
  ScaledProduct<Real> acc;
  acc.mul(sh2(eta));
  acc.mul(std::sinh(lN + h + zeta));
  acc.mul(std::sinh(-lN - nu[L - 1] - h));
  const C s1 = std::sinh(-lam[M - 1] - nu[0] + h);
  const C s2 = sh2(nu[L - 1] - h) - sh2(lN);
  guard_nonzero(s1, st.guard_tol, "sh(-lambda_M - nu_1 + eta/2)");
  guard_nonzero(s2, st.guard_tol, "sh^2(nu_L - eta/2) - sh^2 lambda_N");
  acc.div(s1);
  acc.div(s2);
  for (int j = 0; j < n - 1; ++j) {
    const C d = std::sinh(Real(2) * lam[j]);
    guard_nonzero(d, st.guard_tol, "sh 2 lambda_j");
    acc.mul(std::sinh(Real(2) * lam[j] + eta));
    acc.div(d);
  }
  for (int k = 1; k < n; ++k) acc.mul(sh2(nu[k]) - sh2(nu[0]));
  for (int j = 1; j < n; ++j)
    for (int k = j + 1; k < n; ++k) acc.mul(std::sinh(nu[k] + nu[j]));
  for (int j = 0; j < n - 1; ++j) acc.mul(sh2(lam[j]) - sh2(lN));
  for (int j = 0; j < M - 1; ++j) acc.div(sh2(nu[0] - h) - sh2(lam[j]));
  for (int j = M - 1; j < n; ++j) acc.div(sh2(nu[0] + h) - sh2(lam[j]));
  for (int j = 1; j < L; ++j) acc.div(sh2(nu[j] + h) - sh2(lN));
  for (int j = L; j < n; ++j) acc.div(sh2(nu[j]) - sh2(lN + h));
  return acc;
}

}  // namespace detail

/// Psi_2(M, L), 1 <= M <= N-1, 1 <= L <= N.
template <class Real>
Complex<Real> psi2(const ModelParams<Real>& p, int M, int L, const Settings& st = {},
                   Psi2Diagnostics* diagnostics = nullptr) {
  p.validate();
  const int n = p.size();
  detail::check_type2_indices(n, M, L);
  if (n - 1 > 62) throw ConfigError("Type II: N too large for the sign-vector sum");
  require_distinct_sh2(p.lambdas, st, "lambda");
  require_distinct_sh2(p.nus, st, "nu");
  const auto chi = chi_matrix(p.lambdas, p.nus, p.eta, p.zeta_plus, st);

  const std::size_t n_sigma = std::size_t(1) << (n - 1);
  const std::size_t total = std::size_t(M) * n_sigma;
  auto terms = parallel_map(total, st.threads, [&](std::size_t t) {
    const int alpha = static_cast<int>(t / n_sigma) + 1;
    return psi2_sigma_term(p, M, L, alpha, sigma_from_mask(t % n_sigma, n - 1), st);
  });
  if (diagnostics) {
    diagnostics->terms = terms.size();
    diagnostics->max_term_magnitude = 0;
    for (const auto& x : terms)
      diagnostics->max_term_magnitude = std::max(diagnostics->max_term_magnitude, static_cast<double>(std::abs(x)));
  }
  auto pre = detail::type2_prefactor(p, M, L, st);
  pre.div(lu_det(chi, st.pivot_tol));
  return pre.value() * tree_sum(std::move(terms));
}

}  // namespace sixv
