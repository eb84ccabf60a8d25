// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// gating criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "sixv/checks.hpp"

using namespace sixv;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string fixed12(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.12f%+.12fi", z.real(), z.imag());
  return buf;
}

// Runs guarded: a library exception counts as a failure of that criterion.
template <class F>
void criterion(int id, const std::string& name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::string capture(const std::string& cmd, int& code) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  criterion(1, "Yang-Baxter", [] {
    ParamSampler sampler(101);
    const auto o = check_yang_baxter(sampler, 100);
    report(1, "Yang-Baxter", o.worst < 1e-12, "100 points, worst residual " + sci(o.worst) + " (tol 1e-12)");
  });

  criterion(2, "action identities", [] {
    ParamSampler sampler(202);
    CheckOutcome o;
    for (int n = 2; n <= 4; ++n)
      for (int d = 0; d < 20; ++d) o.merge(check_action_identities(sampler.draw(n)));
    report(2, "action identities", o.worst < 1e-9,
           "N=2..4, 20 draws, D/A/multi-B/Dbar, " + std::to_string(o.cases) + " cases, worst " + sci(o.worst) +
               " (tol 1e-9)");
  });

  criterion(3, "partition functions", [] {
    ParamSampler sampler(303);
    CheckOutcome ts, iz;
    for (int n = 1; n <= 4; ++n)
      for (int d = 0; d < 20; ++d) ts.merge(check_tsuchiya(sampler.draw(n)));
    for (int n = 1; n <= 3; ++n)
      for (int d = 0; d < 20; ++d) iz.merge(check_izergin(sampler.draw(n)));
    report(3, "partition functions", ts.worst < 1e-9 && iz.worst < 1e-10,
           "reflecting-end N=1..4 worst " + sci(ts.worst) + " (tol 1e-9); domain-wall N=1..3 worst " + sci(iz.worst) +
               " (tol 1e-10)");
  });

  criterion(4, "Type I", [] {
    ParamSampler sampler(404);
    Psi1Outcome o;
    for (int n = 2; n <= 4; ++n)
      for (int d = 0; d < 10; ++d) {
        const auto r = check_psi1(sampler.draw(n));
        o.vs_oracle.merge(r.vs_oracle);
        o.det_form.merge(r.det_form);
      }
    report(4, "Type I", o.vs_oracle.worst < 1e-8 && o.det_form.worst < 1e-10,
           "N=2..4 all M<L, 10 draws: vs oracle worst " + sci(o.vs_oracle.worst) + " (tol 1e-8), det form worst " +
               sci(o.det_form.worst) + " (tol 1e-10)");
  });

  criterion(5, "Type I homogeneous limit", [] {
    double worst3 = 0, worst5 = 0;
    for (int n = 2; n <= 3; ++n)
      for (int M = 1; M < n; ++M)
        for (int L = M + 1; L <= n; ++L) {
          worst3 = std::max(worst3, homogeneous_extrapolation(n, M, L, 0.3, 0.7, 0.5, 0.8, 1e-2, 3).rel_err);
          worst5 = std::max(worst5, homogeneous_extrapolation(n, M, L, 0.3, 0.7, 0.5, 0.8, 1e-2, 5).rel_err);
        }
    report(5, "Type I homogeneous limit", worst5 < 1e-6,
           "N=2,3 all M<L, Richardson in delta: table {1e-2,5e-3,2.5e-3} worst " + sci(worst3) +
               "; same table continued to 6.25e-4 worst " + sci(worst5) + " (tol 1e-6)");
  });

  criterion(6, "Type II", [] {
    ParamSampler sampler(606);
    CheckOutcome o;
    for (int n = 2; n <= 4; ++n)
      for (int d = 0; d < 10; ++d) o.merge(check_psi2(sampler.draw(n)));
    report(6, "Type II", o.worst < 1e-8,
           "N=2..4 all M,L, 10 draws, " + std::to_string(o.cases) + " cases, worst " + sci(o.worst) + " (tol 1e-8)");
  });

  criterion(7, "normalization report", [] {
    // lambda_j in (0, eta/2), eta = 0.5, zeta_plus = 0.8 > eta/2.
    ParamSampler sampler(707, 0.02, 0.23);
    std::string detail;
    for (int n = 2; n <= 3; ++n) {
      auto p = sampler.draw(n);
      ParamSampler nus(708 + n, 0.1, 1.0);
      p.nus = nus.draw(n).nus;
      const cplx z = contract_Z(p);
      cplx s1(0), s2(0);
      for (int M = 1; M <= n; ++M)
        for (int L = M + 1; L <= n; ++L) s1 += contract_psi1(p, M, L) / z;
      for (int M = 1; M <= n - 1; ++M)
        for (int L = 1; L <= n; ++L) s2 += contract_psi2(p, M, L) / z;
      auto verdict = [](cplx s) { return std::abs(s - cplx(1)) <= 1e-9 ? "equals 1" : "not equal to 1"; };
      detail += "N=" + std::to_string(n) + ": sum Psi1 = " + fixed12(s1) + " (" + verdict(s1) + "), sum Psi2 = " +
                fixed12(s2) + " (" + verdict(s2) + "); ";
    }
    report(7, "normalization report", true, "non-gating; " + detail);
  });

  criterion(8, "determinism", [] {
    const std::string base = std::string(SIXV_CLI_PATH) + " --mode verify --draws 3 --seed 20240601";
    int c1 = 0, c2 = 0, c3 = 0;
    const auto a = capture(base + " --threads 1", c1);
    const auto b = capture(base + " --threads 8", c2);
    const auto c = capture(base + " --threads 1", c3);
    const bool ok = c1 == 0 && c2 == 0 && c3 == 0 && !a.empty() && a == b && a == c;
    report(8, "determinism", ok,
           "verify suite JSON, threads 1 vs 8 vs repeat: " + std::string(a == b && a == c ? "identical" : "DIFFERENT") +
               ", exit codes " + std::to_string(c1) + "/" + std::to_string(c2) + "/" + std::to_string(c3) + ", " +
               std::to_string(a.size()) + " bytes");
  });

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d failing criteria, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
