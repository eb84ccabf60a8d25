#pragma once

// Closed-form partition functions: the reflecting-end determinant with kernel
// chi, the N x N domain-wall determinant with kernel phi, and the matrix of
// mixed partials of chi used by the homogeneous limit.

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "sixv/core.hpp"
#include "sixv/detkit.hpp"
#include "sixv/jets.hpp"
#include "sixv/vertex.hpp"

namespace sixv {

/// chi(l, n) = -sh(eta) sh(2l + eta) sh(n + zeta) /
///             ([sh^2(n + eta/2) - sh^2 l][sh^2(n - eta/2) - sh^2 l]).
/// X may be a complex scalar or a jet in either argument.
template <class X, class Y, class C>
auto chi_kernel(const X& lambda, const Y& nu, const C& eta, const C& zeta_plus) {
  using std::sinh;
  const C h = eta / typename C::value_type(2);
  auto num = sinh(lambda * typename C::value_type(2) + eta) * sinh(nu + zeta_plus) * (-sinh(eta));
  auto den = (sh2(nu + h) - sh2(lambda)) * (sh2(nu - h) - sh2(lambda));
  return num / den;
}

template <class Real>
Complex<Real> chi_entry(Complex<Real> lambda, Complex<Real> nu, Complex<Real> eta, Complex<Real> zeta_plus,
                        const Settings& st = {}) {
  const auto h = eta / Real(2);
  guard_nonzero(sh2(nu + h) - sh2(lambda), st.guard_tol, "sh^2(nu + eta/2) - sh^2 lambda");
  guard_nonzero(sh2(nu - h) - sh2(lambda), st.guard_tol, "sh^2(nu - eta/2) - sh^2 lambda");
  return chi_kernel(lambda, nu, eta, zeta_plus);
}

/// phi(l, n) = sh(eta) / (sh(l - n + eta/2) sh(l - n - eta/2)).
template <class Real>
Complex<Real> phi_entry(Complex<Real> lambda, Complex<Real> nu, Complex<Real> eta, const Settings& st = {}) {
  const auto h = eta / Real(2);
  const auto d = std::sinh(lambda - nu + h) * std::sinh(lambda - nu - h);
  guard_nonzero(d, st.guard_tol, "sh(lambda - nu + eta/2) sh(lambda - nu - eta/2)");
  return std::sinh(eta) / d;
}

template <class Real>
Matrix<Complex<Real>> chi_matrix(const std::vector<Complex<Real>>& lambdas, const std::vector<Complex<Real>>& nus,
                                 Complex<Real> eta, Complex<Real> zeta_plus, const Settings& st = {}) {
  Matrix<Complex<Real>> m(lambdas.size(), nus.size());
  for (std::size_t j = 0; j < lambdas.size(); ++j)
    for (std::size_t k = 0; k < nus.size(); ++k) m(j, k) = chi_entry(lambdas[j], nus[k], eta, zeta_plus, st);
  return m;
}

/// Refuses parameter sets whose sh^2 values coincide within genericity_tol.
template <class Real>
void require_distinct_sh2(const std::vector<Complex<Real>>& xs, const Settings& st, const char* what) {
  for (std::size_t k = 0; k < xs.size(); ++k)
    for (std::size_t j = 0; j < k; ++j)
      if (static_cast<double>(std::abs(sh2(xs[j]) - sh2(xs[k]))) <= st.genericity_tol)
        throw DegenerateParameters(std::string("coincident sh^2 values among ") + what);
}

/// Reflecting-end 2N x N partition function in determinant form.
template <class Real>
Complex<Real> tsuchiya_Z(const ModelParams<Real>& p, const Settings& st = {}) {
  p.validate();
  require_distinct_sh2(p.lambdas, st, "lambda");
  require_distinct_sh2(p.nus, st, "nu");
  const std::size_t n = p.lambdas.size();
  const auto h = p.eta / Real(2);
  ScaledProduct<Real> acc;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) acc.mul(sh2(p.nus[j] + h) - sh2(p.lambdas[k]));
  acc.mul(lu_det(chi_matrix(p.lambdas, p.nus, p.eta, p.zeta_plus, st), st.pivot_tol));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      acc.div(sh2(p.nus[j]) - sh2(p.nus[k]));
      acc.div(sh2(p.lambdas[k]) - sh2(p.lambdas[j]));
    }
  return acc.value();
}

/// N x N domain-wall partition function (Izergin determinant).
template <class Real>
Complex<Real> izergin_Z(const std::vector<Complex<Real>>& lambdas, const std::vector<Complex<Real>>& nus,
                        Complex<Real> eta, const Settings& st = {}) {
  const std::size_t n = lambdas.size();
  if (n == 0 || nus.size() != n) throw ConfigError("izergin_Z: need equal, nonempty lambda and nu lists");
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j) {
      if (static_cast<double>(std::abs(std::sinh(lambdas[k] - lambdas[j]))) <= st.genericity_tol)
        throw DegenerateParameters("coincident lambdas");
      if (static_cast<double>(std::abs(std::sinh(nus[k] - nus[j]))) <= st.genericity_tol)
        throw DegenerateParameters("coincident nus");
    }
  const auto h = eta / Real(2);
  Matrix<Complex<Real>> phi(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) phi(j, k) = phi_entry(lambdas[j], nus[k], eta, st);
  ScaledProduct<Real> acc;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) acc.mul(std::sinh(lambdas[j] - nus[k] - h));
  acc.mul(lu_det(phi, st.pivot_tol));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      acc.div(std::sinh(nus[j] - nus[k]));
      acc.div(std::sinh(lambdas[k] - lambdas[j]));
    }
  return acc.value();
}

/// Phi_{j,k} = d_lambda^{j-1} d_nu^{k-1} chi(lambda, nu), j, k = 1..N, via a
/// two-variable jet of chi.
template <class Real>
Matrix<Complex<Real>> phi_matrix_homogeneous(Complex<Real> lambda, Complex<Real> nu, Complex<Real> eta,
                                             Complex<Real> zeta_plus, int n, const Settings& st = {}) {
  using C = Complex<Real>;
  if (n < 1) throw ConfigError("phi_matrix_homogeneous: N >= 1 required");
  chi_entry(lambda, nu, eta, zeta_plus, st);  // singularity guard
  const std::array<std::size_t, 2> ord{std::size_t(n - 1), std::size_t(n - 1)};
  const std::array<C, 2> base{lambda, nu};
  const auto l = Series2<C>::variable(0, base, ord);
  const auto v = Series2<C>::variable(1, base, ord);
  const auto jet = chi_kernel(l, v, eta, zeta_plus);
  Matrix<C> out(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out(j, k) = partial_coefficient(jet, j, k);
  return out;
}

}  // namespace sixv
