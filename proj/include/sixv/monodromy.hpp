#pragma once

// Brute-force ground truth. Every object of the lattice model is built as a
// dense operator on the 2^N quantum space and contracted directly:
//
//   * quantum basis index: bit k-1 holds site k, bit set = down;
//   * a BlockOperator is the 2x2 auxiliary-space grid of quantum operators,
//     blocks[x][y] = <x|_aux M |y>_aux with 0 = up, 1 = down;
//   * for U^{t} the grid reads (A C; B D) in the calligraphic letters.
//
// Within a double row the odd (upper) row sigma^2 T(-lambda) sigma^2 acts on
// the state first, then K+, then the even row T^{t}(lambda).

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sixv/core.hpp"
#include "sixv/detkit.hpp"
#include "sixv/parallel.hpp"
#include "sixv/vertex.hpp"

namespace sixv {

template <class Real = double>
using Operator = Matrix<Complex<Real>>;

template <class Real = double>
using StateVector = std::vector<Complex<Real>>;

template <class Real = double>
struct BlockOperator {
  std::array<std::array<Operator<Real>, 2>, 2> blocks;

  const Operator<Real>& operator()(int x, int y) const { return blocks[x][y]; }
  Operator<Real>& operator()(int x, int y) { return blocks[x][y]; }

  static BlockOperator identity(int n_sites) {
    const std::size_t d = std::size_t(1) << n_sites;
    BlockOperator b;
    b.blocks[0][0] = Operator<Real>::identity(d);
    b.blocks[1][1] = Operator<Real>::identity(d);
    b.blocks[0][1] = Operator<Real>(d, d);
    b.blocks[1][0] = Operator<Real>(d, d);
    return b;
  }
};

enum class Spin { up = 0, down = 1 };

/// Projector onto one site state, 1/2(1 +- sigma^3_site).
struct Pin {
  int site;  // 1-based
  Spin spin;
};

template <class Real>
StateVector<Real> all_up(int n_sites) {
  StateVector<Real> v(std::size_t(1) << n_sites, Complex<Real>(0));
  v.front() = Complex<Real>(1);
  return v;
}

template <class Real>
StateVector<Real> all_down(int n_sites) {
  StateVector<Real> v(std::size_t(1) << n_sites, Complex<Real>(0));
  v.back() = Complex<Real>(1);
  return v;
}

/// Basis state with every site down except `up_site` (1-based).
template <class Real>
StateVector<Real> down_except(int n_sites, int up_site) {
  StateVector<Real> v(std::size_t(1) << n_sites, Complex<Real>(0));
  const std::size_t full = (std::size_t(1) << n_sites) - 1;
  v[full & ~(std::size_t(1) << (up_site - 1))] = Complex<Real>(1);
  return v;
}

template <class Real>
Complex<Real> dot(const StateVector<Real>& bra, const StateVector<Real>& ket) {
  Complex<Real> acc(0);
  for (std::size_t i = 0; i < bra.size(); ++i) acc += bra[i] * ket[i];
  return acc;
}

/// max |lhs - rhs| / max |lhs|.
template <class Real>
double relative_residual(const StateVector<Real>& lhs, const StateVector<Real>& rhs) {
  double diff = 0, scale = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    diff = std::max(diff, static_cast<double>(std::abs(lhs[i] - rhs[i])));
    scale = std::max(scale, static_cast<double>(std::abs(lhs[i])));
  }
  return scale == 0 ? diff : diff / scale;
}

namespace detail {

inline void check_sites(int n, const Settings& st) {
  if (n < 1) throw ConfigError("oracle needs at least one site");
  if (n > st.max_oracle_sites) {
    throw ConfigError("oracle limited to N <= " + std::to_string(st.max_oracle_sites) + " sites (got " +
                      std::to_string(n) + ")");
  }
}

/// Left-multiply the block operator by a two-site factor acting on (aux, site).
/// With site_first the factor's two-site index is 2*site + aux instead.
template <class Real>
BlockOperator<Real> left_apply_site(const Mat4<Real>& f, int site, const BlockOperator<Real>& t,
                                    bool site_first = false) {
  using C = Complex<Real>;
  const std::size_t d = t(0, 0).rows();
  const std::size_t mask = std::size_t(1) << (site - 1);
  auto entry = [&](int x, int c, int so, int si) -> C {
    return site_first ? f[2 * so + x][2 * si + c] : f[2 * x + so][2 * c + si];
  };
  BlockOperator<Real> out;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      Operator<Real> m(d, d);
      for (std::size_t r = 0; r < d; ++r) {
        const int so = (r & mask) ? 1 : 0;
        const std::size_t r0 = r & ~mask;
        C* dst = m.row_ptr(r);
        for (int c = 0; c < 2; ++c)
          for (int si = 0; si < 2; ++si) {
            const C w = entry(x, c, so, si);
            if (w == C(0)) continue;
            const C* src = t(c, y).row_ptr(si ? (r0 | mask) : r0);
            for (std::size_t col = 0; col < d; ++col) dst[col] += w * src[col];
          }
      }
      out(x, y) = std::move(m);
    }
  return out;
}

template <class Real>
BlockOperator<Real> left_apply_aux(const Mat2<Real>& f, const BlockOperator<Real>& t) {
  BlockOperator<Real> out;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) out(x, y) = f[x][0] * t(0, y) + f[x][1] * t(1, y);
  return out;
}

/// Zero the rows (left projector) or columns (right projector) whose site state differs from the pin.
template <class Real>
Operator<Real> project_rows(Operator<Real> m, const Pin& p) {
  const std::size_t mask = std::size_t(1) << (p.site - 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const bool down = (r & mask) != 0;
    if (down != (p.spin == Spin::down))
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = Complex<Real>(0);
  }
  return m;
}

template <class Real>
Operator<Real> project_cols(Operator<Real> m, const Pin& p) {
  const std::size_t mask = std::size_t(1) << (p.site - 1);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const bool down = (c & mask) != 0;
    if (down != (p.spin == Spin::down))
      for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = Complex<Real>(0);
  }
  return m;
}

template <class Real>
void check_pin(const Pin& p, int n) {
  if (p.site < 1 || p.site > n) throw IndexOutOfRange("projector site " + std::to_string(p.site) + " out of range");
}

}  // namespace detail

/// T(lambda) = L_N ... L_1 over all columns.
template <class Real>
BlockOperator<Real> build_one_row_T(const ModelParams<Real>& p, Complex<Real> lambda, const Settings& st = {}) {
  p.validate();
  const int n = p.size();
  detail::check_sites(n, st);
  auto t = BlockOperator<Real>::identity(n);
  for (int k = 1; k <= n; ++k) t = detail::left_apply_site(l_matrix(lambda, p.nus[k - 1], p.eta, st), k, t);
  return t;
}

/// sigma^2 T(-lambda) sigma^2, optionally with the auxiliary up-projector
/// inserted just before the factor of column `aux_up_before` (1-based).
template <class Real>
BlockOperator<Real> build_conj_row(const ModelParams<Real>& p, Complex<Real> lambda, const Settings& st = {},
                                   std::optional<int> aux_up_before = std::nullopt) {
  p.validate();
  const int n = p.size();
  detail::check_sites(n, st);
  const Mat2<Real> up_proj{{{Complex<Real>(1), Complex<Real>(0)}, {Complex<Real>(0), Complex<Real>(0)}}};
  auto t = BlockOperator<Real>::identity(n);
  for (int k = 1; k <= n; ++k) {
    if (aux_up_before && *aux_up_before == k) t = detail::left_apply_aux(up_proj, t);
    t = detail::left_apply_site(conj_l_matrix(lambda, p.nus[k - 1], p.eta, st), k, t);
  }
  return t;
}

template <class Real>
BlockOperator<Real> transpose_aux(BlockOperator<Real> t) {
  std::swap(t(0, 1), t(1, 0));
  return t;
}

/// U^{t}(lambda) = T^{t}(lambda) K+(lambda) sigma^2 T(-lambda) sigma^2, grid (A C; B D).
template <class Real>
BlockOperator<Real> build_double_row_U(const ModelParams<Real>& p, Complex<Real> lambda, const Settings& st = {}) {
  const auto lower = transpose_aux(build_one_row_T(p, lambda, st));
  const auto upper = build_conj_row(p, lambda, st);
  const auto k = k_plus(lambda, p.eta, p.zeta_plus);
  BlockOperator<Real> u;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) u(x, y) = k[0][0] * (lower(x, 0) * upper(0, y)) + k[1][1] * (lower(x, 1) * upper(1, y));
  return u;
}

namespace detail {

// Lower-left element of lower * K * upper with optional site projectors:
//   sum_a [after] lower(1,a) [between] k_a upper(a,0) [before].
template <class Real>
Operator<Real> pinned_lower_left(const BlockOperator<Real>& lower, const BlockOperator<Real>& upper,
                                 const Mat2<Real>& k, std::optional<Pin> after, std::optional<Pin> between,
                                 std::optional<Pin> before) {
  std::array<Operator<Real>, 2> terms;
  for (int a = 0; a < 2; ++a) {
    Operator<Real> left = lower(1, a);
    Operator<Real> right = upper(a, 0);
    if (after) left = project_rows(std::move(left), *after);
    if (between) left = project_cols(std::move(left), *between);
    if (before) right = project_cols(std::move(right), *before);
    terms[a] = k[a][a] * (left * right);
  }
  return terms[0] + terms[1];
}

}  // namespace detail

/// The lower-left element of U^{t} with optional site projectors after the even
/// row, between the rows, and before the odd row. No pins gives the B operator.
template <class Real>
Operator<Real> build_pinned_B(const ModelParams<Real>& p, Complex<Real> lambda, std::optional<Pin> after,
                              std::optional<Pin> between, std::optional<Pin> before, const Settings& st = {}) {
  const int n = p.size();
  for (const auto& pin : {after, between, before})
    if (pin) detail::check_pin<Real>(*pin, n);
  const auto lower = transpose_aux(build_one_row_T(p, lambda, st));
  const auto upper = build_conj_row(p, lambda, st);
  return detail::pinned_lower_left(lower, upper, k_plus(lambda, p.eta, p.zeta_plus), after, between, before);
}

template <class Real>
Operator<Real> build_B(const ModelParams<Real>& p, Complex<Real> lambda, const Settings& st = {}) {
  return build_pinned_B<Real>(p, lambda, std::nullopt, std::nullopt, std::nullopt, st);
}

/// F: the odd row turns site 1 from up to down.
template <class Real>
Operator<Real> build_F(const ModelParams<Real>& p, Complex<Real> lambda, const Settings& st = {}) {
  return build_pinned_B<Real>(p, lambda, std::nullopt, Pin{1, Spin::down}, Pin{1, Spin::up}, st);
}

/// G2: the even row turns site 2 from up to down.
template <class Real>
Operator<Real> build_G2(const ModelParams<Real>& p, Complex<Real> lambda, const Settings& st = {}) {
  if (p.size() < 2) throw IndexOutOfRange("G2 needs N >= 2");
  return build_pinned_B<Real>(p, lambda, Pin{2, Spin::down}, Pin{2, Spin::up}, std::nullopt, st);
}

/// E_L: site L is up between the rows and the odd-row auxiliary spin is up
/// between columns L-1 and L.
template <class Real>
Operator<Real> build_EL(const ModelParams<Real>& p, Complex<Real> lambda, int column, const Settings& st = {}) {
  const int n = p.size();
  if (column < 1 || column > n) throw IndexOutOfRange("E_L: column " + std::to_string(column) + " outside 1..N");
  const auto lower = transpose_aux(build_one_row_T(p, lambda, st));
  const auto upper = build_conj_row(p, lambda, st, column);
  return detail::pinned_lower_left(lower, upper, k_plus(lambda, p.eta, p.zeta_plus), std::nullopt,
                                   std::optional<Pin>(Pin{column, Spin::up}), std::nullopt);
}

namespace detail {

/// bra * ops[n-1] ... ops[0] * ket.
template <class Real>
Complex<Real> contract(const std::vector<Operator<Real>>& ops, const StateVector<Real>& bra, StateVector<Real> ket) {
  for (const auto& op : ops) ket = op * ket;
  return dot(bra, ket);
}

}  // namespace detail

/// Z = w- B(lambda_N) ... B(lambda_1) w+.
template <class Real>
Complex<Real> contract_Z(const ModelParams<Real>& p, const Settings& st = {}) {
  p.validate();
  const int n = p.size();
  detail::check_sites(n, st);
  auto ops = parallel_map(std::size_t(n), st.threads, [&](std::size_t j) { return build_B(p, p.lambdas[j], st); });
  return detail::contract(ops, all_down<Real>(n), all_up<Real>(n));
}

/// Numerator of the Type I function: G2 at row pair L, F at row pair M, B elsewhere.
template <class Real>
Complex<Real> contract_psi1(const ModelParams<Real>& p, int M, int L, const Settings& st = {}) {
  p.validate();
  const int n = p.size();
  detail::check_sites(n, st);
  if (M < 1 || M > n || L < 1 || L > n) throw IndexOutOfRange("psi1: M, L must lie in 1..N");
  if (M >= L) throw OrderingViolation("psi1: requires M < L");
  auto ops = parallel_map(std::size_t(n), st.threads, [&](std::size_t j) {
    const int row = int(j) + 1;
    if (row == M) return build_F(p, p.lambdas[j], st);
    if (row == L) return build_G2(p, p.lambdas[j], st);
    return build_B(p, p.lambdas[j], st);
  });
  return detail::contract(ops, all_down<Real>(n), all_up<Real>(n));
}

/// Numerator of the Type II function: E_L at the last row pair, F at row pair M.
template <class Real>
Complex<Real> contract_psi2(const ModelParams<Real>& p, int M, int L, const Settings& st = {}) {
  p.validate();
  const int n = p.size();
  detail::check_sites(n, st);
  if (M < 1 || M > n - 1) throw IndexOutOfRange("psi2: M must lie in 1..N-1");
  if (L < 1 || L > n) throw IndexOutOfRange("psi2: L must lie in 1..N");
  auto ops = parallel_map(std::size_t(n), st.threads, [&](std::size_t j) {
    const int row = int(j) + 1;
    if (row == n) return build_EL(p, p.lambdas[j], L, st);
    if (row == M) return build_F(p, p.lambdas[j], st);
    return build_B(p, p.lambdas[j], st);
  });
  return detail::contract(ops, all_down<Real>(n), all_up<Real>(n));
}

/// Column monodromy Tbar(nu) = L_{n,j} ... L_{1,j} over the given rapidities,
/// each one a quantum site; the column is the auxiliary space.
template <class Real>
BlockOperator<Real> build_column_monodromy(const ModelParams<Real>& p, Complex<Real> nu,
                                           const std::vector<Complex<Real>>& lambda_subset, const Settings& st = {}) {
  const int n = static_cast<int>(lambda_subset.size());
  detail::check_sites(n, st);
  auto t = BlockOperator<Real>::identity(n);
  for (int k = 1; k <= n; ++k)
    t = detail::left_apply_site(l_matrix(lambda_subset[k - 1], nu, p.eta, st), k, t, /*site_first=*/true);
  return t;
}

/// v- Bbar(nu_n) ... Bbar(nu_1) v+ with the lambdas as quantum sites.
template <class Real>
Complex<Real> contract_column_Z(const ModelParams<Real>& p, const Settings& st = {}) {
  p.validate();
  const int n = p.size();
  StateVector<Real> v = all_up<Real>(n);
  for (const auto& nu : p.nus) v = build_column_monodromy(p, nu, p.lambdas, st)(0, 1) * v;
  return dot(all_down<Real>(n), v);
}

// ---------------------------------------------------------------------------
// Action identities: direct operator products against their closed-form sums.
// ---------------------------------------------------------------------------

enum class ActionIdentity { D_action, A_action, multiB, Dbar_action };

namespace detail {

template <class Real>
StateVector<Real> b_string(const ModelParams<Real>& p, const std::vector<Complex<Real>>& lams, const Settings& st) {
  StateVector<Real> v = all_up<Real>(p.size());
  for (const auto& l : lams) v = build_B(p, l, st) * v;
  return v;
}

template <class Real>
void guard_rapidities(const std::vector<Complex<Real>>& lams, const Settings& st) {
  for (std::size_t k = 0; k < lams.size(); ++k) {
    if (static_cast<double>(std::abs(std::sinh(Real(2) * lams[k]))) <= st.genericity_tol)
      throw SingularParameters("sh(2 lambda_k) vanishes");
    for (std::size_t j = 0; j < k; ++j)
      if (static_cast<double>(std::abs(sh2(lams[k]) - sh2(lams[j]))) <= st.genericity_tol)
        throw SingularParameters("sh^2 lambda_k - sh^2 lambda_j vanishes");
  }
}

// Coefficient of the k-th term in the D (is_d) or A action on i-1 B's.
template <class Real>
Complex<Real> reflection_action_coeff(const ModelParams<Real>& p, int i, int k, bool is_d) {
  using C = Complex<Real>;
  const C eta = p.eta, h = eta / Real(2), zeta = p.zeta_plus;
  const C lk = p.lambdas[k - 1], li = p.lambdas[i - 1];
  auto nu_ratio = [&](C x) {
    C r(1);
    for (const auto& nu : p.nus) r *= std::sinh(x - nu - h) / std::sinh(x - nu + h);
    return r;
  };
  auto lam_ratio = [&](C shifted) {
    C r(1);
    for (int j = 1; j <= i; ++j)
      if (j != k) r *= (sh2(shifted) - sh2(p.lambdas[j - 1])) / (sh2(lk) - sh2(p.lambdas[j - 1]));
    return r;
  };
  C first, second;
  if (is_d) {
    first = std::sinh(lk + li) * std::sinh(lk + h - zeta) / (sh2(li) - sh2(lk + eta));
    second = std::sinh(lk - li) * std::sinh(-lk + h - zeta) / (sh2(li) - sh2(lk - eta));
  } else {
    first = std::sinh(lk + h - zeta) / std::sinh(lk + li + eta);
    second = std::sinh(-lk + h - zeta) / std::sinh(lk - li - eta);
  }
  first *= nu_ratio(lk) * lam_ratio(lk + eta);
  second *= nu_ratio(-lk) * lam_ratio(lk - eta);
  return std::sinh(eta) * std::sinh(Real(2) * lk + eta) / std::sinh(Real(2) * lk) * (first + second);
}

}  // namespace detail

/// Relative max-norm residual of one of the four action identities.
template <class Real>
double verify_action_identities(const ModelParams<Real>& p, ActionIdentity which, int i, const Settings& st = {}) {
  using C = Complex<Real>;
  p.validate();
  const int n = p.size();
  detail::check_sites(n, st);
  if (i < 1 || i > n) throw IndexOutOfRange("action identity index i outside 1..N");
  const C eta = p.eta, h = eta / Real(2), zeta = p.zeta_plus;
  std::vector<C> first_i(p.lambdas.begin(), p.lambdas.begin() + i);

  switch (which) {
    case ActionIdentity::D_action:
    case ActionIdentity::A_action: {
      detail::guard_rapidities(first_i, st);
      const bool is_d = which == ActionIdentity::D_action;
      const auto u = build_double_row_U(p, p.lambdas[i - 1], st);
      std::vector<C> before(p.lambdas.begin(), p.lambdas.begin() + (i - 1));
      const auto lhs = (is_d ? u(1, 1) : u(0, 0)) * detail::b_string(p, before, st);
      StateVector<Real> rhs(lhs.size(), C(0));
      for (int k = 1; k <= i; ++k) {
        std::vector<C> rest;
        for (int j = 1; j <= i; ++j)
          if (j != k) rest.push_back(p.lambdas[j - 1]);
        const C coeff = detail::reflection_action_coeff(p, i, k, is_d);
        const auto v = detail::b_string(p, rest, st);
        for (std::size_t s = 0; s < rhs.size(); ++s) rhs[s] += coeff * v[s];
      }
      return relative_residual(lhs, rhs);
    }
    case ActionIdentity::multiB: {
      detail::guard_rapidities(first_i, st);
      const auto lhs = detail::b_string(p, first_i, st);
      StateVector<Real> rhs(lhs.size(), C(0));
      C common(1);
      for (const auto& l : first_i) common *= std::sinh(Real(2) * l + eta) / std::sinh(Real(2) * l);
      for (std::size_t mask = 0; mask < (std::size_t(1) << i); ++mask) {
        std::vector<C> sl(i);
        std::vector<Real> sg(i);
        for (int j = 0; j < i; ++j) {
          sg[j] = (mask >> j) & 1 ? Real(-1) : Real(1);
          sl[j] = sg[j] * first_i[j];
        }
        C coeff = common;
        for (int j = 0; j < i; ++j) {
          coeff *= -sg[j] * std::sinh(-sl[j] + h - zeta);
          for (const auto& nu : p.nus) coeff *= std::sinh(-sl[j] - nu - h) / std::sinh(-sl[j] - nu + h);
          for (int k = j + 1; k < i; ++k) coeff *= std::sinh(sl[j] + sl[k] - eta) / std::sinh(sl[j] + sl[k]);
        }
        StateVector<Real> v = all_up<Real>(n);
        for (const auto& l : sl) v = build_one_row_T(p, l, st)(0, 1) * v;
        for (std::size_t s = 0; s < rhs.size(); ++s) rhs[s] += coeff * v[s];
      }
      return relative_residual(lhs, rhs);
    }
    case ActionIdentity::Dbar_action: {
      for (int k = 0; k < i; ++k)
        for (int j = 0; j < k; ++j)
          if (static_cast<double>(std::abs(std::sinh(p.nus[j] - p.nus[k]))) <= st.genericity_tol)
            throw SingularParameters("sh(nu_j - nu_k) vanishes");
      auto column_string = [&](const std::vector<C>& nus) {
        StateVector<Real> v = all_up<Real>(n);
        for (const auto& nu : nus) v = build_column_monodromy(p, nu, p.lambdas, st)(0, 1) * v;
        return v;
      };
      std::vector<C> before(p.nus.begin(), p.nus.begin() + (i - 1));
      const auto lhs = build_column_monodromy(p, p.nus[i - 1], p.lambdas, st)(1, 1) * column_string(before);
      StateVector<Real> rhs(lhs.size(), C(0));
      for (int k = 1; k <= i; ++k) {
        const C nk = p.nus[k - 1];
        C coeff = std::sinh(eta) / std::sinh(p.nus[i - 1] - nk + eta);
        std::vector<C> rest;
        for (int j = 1; j <= i; ++j) {
          if (j == k) continue;
          rest.push_back(p.nus[j - 1]);
          coeff *= std::sinh(p.nus[j - 1] - nk + eta) / std::sinh(p.nus[j - 1] - nk);
        }
        for (const auto& l : p.lambdas) coeff *= std::sinh(l - nk - h) / std::sinh(l - nk + h);
        const auto v = column_string(rest);
        for (std::size_t s = 0; s < rhs.size(); ++s) rhs[s] += coeff * v[s];
      }
      return relative_residual(lhs, rhs);
    }
  }
  return 0;
}

}  // namespace sixv
