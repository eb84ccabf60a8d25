#include <gtest/gtest.h>

#include "sixv/checks.hpp"
#include "sixv/monodromy.hpp"
#include "sixv/typeII.hpp"

using namespace sixv;

namespace {

ModelParams<double> fixed_params(int n) {
  const double lam[] = {0.21, 0.47, 0.83};
  const double nu[] = {0.34, 0.62, 0.91};
  ModelParams<double> p;
  for (int j = 0; j < n; ++j) {
    p.lambdas.emplace_back(lam[j]);
    p.nus.emplace_back(nu[j]);
  }
  return p;
}

double max_abs_diff(const Operator<double>& a, const Operator<double>& b) { return (a - b).max_abs(); }

}  // namespace

// Reference values from an independent dense-matrix implementation.
TEST(ContractZ, FrozenValues) {
  EXPECT_LT(rel_err(contract_Z(fixed_params(2)), cplx(-1329.8059163796638)), 1e-12);
  EXPECT_LT(rel_err(contract_Z(fixed_params(3)), cplx(19052.452508026494)), 1e-12);
}

TEST(ContractZ, SingleSiteIsKernelTimesNorm) {
  // N = 1: Z equals the closed form with a single chi entry.
  ModelParams<double> p;
  p.lambdas = {cplx(0.3)};
  p.nus = {cplx(0.6)};
  const cplx h = p.eta / 2.0;
  const cplx chi = -std::sinh(p.eta) * std::sinh(2.0 * p.lambdas[0] + p.eta) * std::sinh(p.nus[0] + p.zeta_plus) /
                   ((sh2(p.nus[0] + h) - sh2(p.lambdas[0])) * (sh2(p.nus[0] - h) - sh2(p.lambdas[0])));
  EXPECT_LT(rel_err(contract_Z(p), (sh2(p.nus[0] + h) - sh2(p.lambdas[0])) * chi), 1e-13);
}

TEST(ContractPsi, FrozenValues) {
  const auto p = fixed_params(3);
  const cplx z = contract_Z(p);
  EXPECT_LT(rel_err(contract_psi1(p, 1, 2) / z, cplx(0.19912482849514687)), 1e-12);
  EXPECT_LT(rel_err(contract_psi1(p, 2, 3) / z, cplx(-3.7183051188115792)), 1e-12);
  EXPECT_LT(rel_err(contract_psi2(p, 1, 3) / z, cplx(0.20090180587598205)), 1e-12);
  EXPECT_LT(rel_err(contract_psi2(p, 2, 3) / z, cplx(2.0569045113169215)), 1e-12);
  EXPECT_EQ(contract_psi2(p, 1, 1), cplx(0));
}

// Up and down projectors at the same position add back to the unpinned B.
TEST(Projectors, CompletenessAtEachPosition) {
  const auto p = fixed_params(3);
  const cplx lam(0.4);
  const auto b = build_B(p, lam);
  const double tol = 1e-14 * b.max_abs();
  for (int site = 1; site <= 3; ++site) {
    const Pin up{site, Spin::up}, down{site, Spin::down};
    const auto after = build_pinned_B<double>(p, lam, up, std::nullopt, std::nullopt) +
                       build_pinned_B<double>(p, lam, down, std::nullopt, std::nullopt);
    const auto between = build_pinned_B<double>(p, lam, std::nullopt, up, std::nullopt) +
                         build_pinned_B<double>(p, lam, std::nullopt, down, std::nullopt);
    const auto before = build_pinned_B<double>(p, lam, std::nullopt, std::nullopt, up) +
                        build_pinned_B<double>(p, lam, std::nullopt, std::nullopt, down);
    EXPECT_LT(max_abs_diff(after, b), tol);
    EXPECT_LT(max_abs_diff(between, b), tol);
    EXPECT_LT(max_abs_diff(before, b), tol);
  }
}

// F is the slice with site 1 up before the odd row and down after it.
TEST(Projectors, FIsTheDownUpSlice) {
  const auto p = fixed_params(2);
  const cplx lam(0.25);
  const auto all = build_pinned_B<double>(p, lam, std::nullopt, Pin{1, Spin::down}, std::nullopt);
  const auto other = build_pinned_B<double>(p, lam, std::nullopt, Pin{1, Spin::down}, Pin{1, Spin::down});
  EXPECT_LT(max_abs_diff(build_F(p, lam) + other, all), 1e-14 * all.max_abs());
}

TEST(BlockOperator, OneRowMonodromyAtSingleSite) {
  ModelParams<double> p;
  p.lambdas = {cplx(0.3)};
  p.nus = {cplx(0.1)};
  const auto t = build_one_row_T(p, cplx(0.3));
  const auto l = l_matrix(cplx(0.3), cplx(0.1), p.eta);
  // <x| T |y> on the single site equals the L-matrix slice.
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int s = 0; s < 2; ++s)
        for (int r = 0; r < 2; ++r) EXPECT_EQ(t(x, y)(s, r), l[2 * x + s][2 * y + r]);
}

TEST(ActionIdentities, SmallLattices) {
  ParamSampler sampler(17);
  for (int n = 2; n <= 4; ++n) {
    const auto p = sampler.draw(n);
    for (auto which : {ActionIdentity::D_action, ActionIdentity::A_action, ActionIdentity::multiB,
                       ActionIdentity::Dbar_action})
      for (int i = 1; i <= n; ++i) EXPECT_LT(verify_action_identities(p, which, i), 1e-9) << n << " " << i;
  }
}

TEST(ActionIdentities, IndexOutOfRange) {
  EXPECT_THROW(verify_action_identities(fixed_params(2), ActionIdentity::D_action, 3), IndexOutOfRange);
}

// Row-to-column change of picture: one-row B's with the nus as sites against
// column Bbar/Dbar operators with the signed lambdas as sites.
TEST(ColumnPicture, RowAndColumnContractionsAgree) {
  ParamSampler sampler(23);
  for (int n = 3; n <= 4; ++n) {
    const auto p = sampler.draw(n);
    ModelParams<double> rows;
    rows.eta = p.eta;
    rows.zeta_plus = p.zeta_plus;
    rows.nus.assign(p.nus.begin() + 1, p.nus.end());
    rows.lambdas = rows.nus;  // only the nus matter for one-row operators
    for (int alpha = 1; alpha <= n - 1; ++alpha)
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (n - 1)); ++mask) {
        const auto sigma = sigma_from_mask(mask, n - 1);
        std::vector<cplx> signed_lams;
        for (int j = 0; j < n - 1; ++j)
          if (j != alpha - 1) signed_lams.push_back(double(sigma[j]) * p.lambdas[j]);
        const int m = static_cast<int>(signed_lams.size());
        for (int L = 2; L <= n; ++L) {
          StateVector<double> v = all_up<double>(n - 1);
          for (const auto& x : signed_lams) v = build_one_row_T(rows, x)(0, 1) * v;
          const cplx row_side = dot(down_except<double>(n - 1, L - 1), v);
          StateVector<double> w = all_up<double>(m);
          for (int k = 2; k <= n; ++k) {
            const auto t = build_column_monodromy(p, p.nus[k - 1], signed_lams);
            w = (k == L ? t(1, 1) : t(0, 1)) * w;
          }
          const cplx col_side = dot(all_down<double>(m), w);
          EXPECT_LT(rel_err(row_side, col_side), 1e-12) << n << " " << alpha << " " << mask << " " << L;
        }
      }
  }
}

TEST(ContractZ, ColumnPictureMatchesIzerginAtOneSite) {
  ModelParams<double> p;
  p.lambdas = {cplx(0.4)};
  p.nus = {cplx(0.1)};
  // Bbar on one site is the c weight of L(lambda, nu).
  EXPECT_LT(rel_err(contract_column_Z(p), weights(cplx(0.4 - 0.1 - 0.25), p.eta).c), 1e-14);
}

TEST(Oracle, Guards) {
  const auto p = fixed_params(3);
  EXPECT_THROW(contract_psi1(p, 2, 2), OrderingViolation);
  EXPECT_THROW(contract_psi1(p, 3, 2), OrderingViolation);
  EXPECT_THROW(contract_psi1(p, 0, 2), IndexOutOfRange);
  EXPECT_THROW(contract_psi2(p, 3, 1), IndexOutOfRange);
  EXPECT_THROW(build_EL(p, cplx(0.1), 4), IndexOutOfRange);
  Settings st;
  st.max_oracle_sites = 2;
  EXPECT_THROW(contract_Z(p, st), ConfigError);
}

TEST(Oracle, ThreadCountDoesNotChangeBits) {
  const auto p = fixed_params(3);
  Settings one, many;
  many.threads = 4;
  EXPECT_EQ(contract_psi1(p, 1, 3, one), contract_psi1(p, 1, 3, many));
}
