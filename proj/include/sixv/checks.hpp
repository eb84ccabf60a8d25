#pragma once

// Formula-versus-oracle comparisons shared by the CLI verify mode and the
// acceptance suite, plus the random parameter sampler they draw from.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sixv/core.hpp"
#include "sixv/monodromy.hpp"
#include "sixv/partition.hpp"
#include "sixv/typeI.hpp"
#include "sixv/typeII.hpp"
#include "sixv/vertex.hpp"

namespace sixv {

/// Worst relative error over a batch of comparisons.
struct CheckOutcome {
  double worst = 0;
  std::size_t cases = 0;

  void add(double err) {
    worst = std::max(worst, err);
    ++cases;
  }
  void merge(const CheckOutcome& o) {
    worst = std::max(worst, o.worst);
    cases += o.cases;
  }
};

/// Real rapidities uniform in (lo, hi). Draws where some closed-form
/// denominator comes within min_sep of a zero are redrawn: lambda +- lambda'
/// against {0, +-eta}, nu - nu' against 0, lambda +- nu against +-eta/2.
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed, double lo = 0.1, double hi = 1.0, double min_sep = 0.01)
      : rng_(seed), dist_(lo, hi), min_sep_(min_sep) {}

  ModelParams<double> draw(int n, cplx eta = 0.5, cplx zeta_plus = 0.8) {
    for (;;) {
      ModelParams<double> p;
      p.eta = eta;
      p.zeta_plus = zeta_plus;
      for (int j = 0; j < n; ++j) p.lambdas.emplace_back(dist_(rng_));
      for (int j = 0; j < n; ++j) p.nus.emplace_back(dist_(rng_));
      if (generic(p)) return p;
    }
  }

  std::array<cplx, 2> pair() { return {cplx(dist_(rng_)), cplx(dist_(rng_))}; }

 private:
  bool near(double x) const { return std::abs(x) < min_sep_; }

  bool generic(const ModelParams<double>& p) const {
    const double eta = p.eta.real();
    const int n = p.size();
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double li = p.lambdas[i].real(), lj = p.lambdas[j].real();
        for (double m : {0.0, eta, -eta}) {
          if (near(li + lj + m)) return false;
          if (i != j && near(li - lj + m)) return false;
        }
        if (i != j && near(p.nus[i].real() - p.nus[j].real())) return false;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double l = p.lambdas[i].real(), v = p.nus[j].real();
        for (double m : {eta / 2, -eta / 2})
          if (near(l + v + m) || near(l - v + m)) return false;
      }
    return true;
  }

  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> dist_;
  double min_sep_;
};

inline CheckOutcome check_yang_baxter(ParamSampler& sampler, int count, cplx eta = 0.5) {
  CheckOutcome out;
  for (int k = 0; k < count; ++k) {
    const auto [l, m] = sampler.pair();
    out.add(yang_baxter_residual(l, m, eta));
  }
  return out;
}

/// All four action identities for i = 1..N.
inline CheckOutcome check_action_identities(const ModelParams<double>& p, const Settings& st = {}) {
  CheckOutcome out;
  for (auto which : {ActionIdentity::D_action, ActionIdentity::A_action, ActionIdentity::multiB,
                     ActionIdentity::Dbar_action})
    for (int i = 1; i <= p.size(); ++i) out.add(verify_action_identities(p, which, i, st));
  return out;
}

inline CheckOutcome check_tsuchiya(const ModelParams<double>& p, const Settings& st = {}) {
  CheckOutcome out;
  out.add(rel_err(tsuchiya_Z(p, st), contract_Z(p, st)));
  return out;
}

inline CheckOutcome check_izergin(const ModelParams<double>& p, const Settings& st = {}) {
  CheckOutcome out;
  out.add(rel_err(izergin_Z(p.lambdas, p.nus, p.eta, st), contract_column_Z(p, st)));
  return out;
}

struct Psi1Outcome {
  CheckOutcome vs_oracle;
  CheckOutcome det_form;
};

/// Every M < L: double sum against the oracle ratio, and the determinant form
/// (base rapidity 0, shifts = lambdas) against the double sum.
inline Psi1Outcome check_psi1(const ModelParams<double>& p, const Settings& st = {}) {
  Psi1Outcome out;
  const int n = p.size();
  const cplx z = contract_Z(p, st);
  ShiftedParams<double> sp{cplx(0), p.lambdas, p.nus, p.eta, p.zeta_plus};
  for (int M = 1; M <= n; ++M)
    for (int L = M + 1; L <= n; ++L) {
      const cplx f = psi1_double_sum(p, M, L, st);
      out.vs_oracle.add(rel_err(f, contract_psi1(p, M, L, st) / z));
      out.det_form.add(rel_err(psi1_det_form(sp, M, L, st), f));
    }
  return out;
}

inline CheckOutcome check_psi2(const ModelParams<double>& p, const Settings& st = {}) {
  CheckOutcome out;
  const int n = p.size();
  const cplx z = contract_Z(p, st);
  for (int M = 1; M <= n - 1; ++M)
    for (int L = 1; L <= n; ++L) out.add(rel_err(psi2(p, M, L, st), contract_psi2(p, M, L, st) / z));
  return out;
}

struct ExtrapolationOutcome {
  cplx homogeneous;
  cplx extrapolated;
  double rel_err = 0;
};

/// Richardson extrapolation of psi1 at lambda_j = lambda + j d, nu_k = nu + k d,
/// d = d0, d0/2, ..., d0/2^(levels-1), evaluated in long double.
inline ExtrapolationOutcome homogeneous_extrapolation(int n, int M, int L, cplx lambda, cplx nu, cplx eta,
                                                      cplx zeta_plus, double d0 = 1e-2, int levels = 5,
                                                      const Settings& st = {}) {
  using LD = long double;
  using CL = Complex<LD>;
  std::vector<CL> t;
  for (int k = 0; k < levels; ++k) {
    const LD d = LD(d0) / LD(1 << k);
    ModelParams<LD> q;
    q.eta = CL(eta);
    q.zeta_plus = CL(zeta_plus);
    for (int j = 1; j <= n; ++j) {
      q.lambdas.push_back(CL(lambda) + LD(j) * d);
      q.nus.push_back(CL(nu) + LD(j) * d);
    }
    t.push_back(psi1_double_sum(q, M, L, st));
  }
  for (int lev = 1; lev < levels; ++lev)
    for (int k = levels - 1; k >= lev; --k) {
      const LD f = LD(1 << lev);
      t[k] = (f * t[k] - t[k - 1]) / (f - 1);
    }
  ExtrapolationOutcome out;
  out.homogeneous = psi1_homogeneous(lambda, nu, eta, zeta_plus, n, M, L, st);
  out.extrapolated = cplx(t.back());
  out.rel_err = rel_err(out.homogeneous, out.extrapolated);
  return out;
}

}  // namespace sixv
