#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixv {

template <class Real>
using Complex = std::complex<Real>;

using cplx = Complex<double>;

// ---------------------------------------------------------------------------
// Errors. Every failure raised by the library derives from sixv::Error so the
// CLI can map the family onto an exit code.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input-shape problems: bad indices, wrong ordering, bad config.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be nonzero fell below its guard tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};
class IndexOutOfRange : public UsageError {
 public:
  using UsageError::UsageError;
};
class OrderingViolation : public UsageError {
 public:
  using UsageError::UsageError;
};
class OrderExceeded : public UsageError {
 public:
  using UsageError::UsageError;
};

class SingularWeight : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class SingularParameters : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class DegenerateParameters : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class DivisionBySingularSeries : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// ---------------------------------------------------------------------------
// Settings shared by every module. Passed by value/const-ref; no globals.
// ---------------------------------------------------------------------------

struct Settings {
  double weight_tol = 1e-14;      // |sh(u + eta)| guard for b, c
  double series_div_tol = 1e-14;  // constant term guard for jet division
  double genericity_tol = 1e-8;   // separation of distinct sh^2 values
  double guard_tol = 1e-12;       // explicit sh factors in closed forms
  double pivot_tol = 1e-300;      // LU pivot underflow
  int max_oracle_sites = 8;       // dense 2^N operators
  unsigned threads = 1;
};

// ---------------------------------------------------------------------------
// Small numeric helpers.
// ---------------------------------------------------------------------------

template <class T>
T sh2(const T& x) {
  using std::sinh;
  T s = sinh(x);
  return s * s;
}

template <class S>
auto magnitude(const S& x) {
  using std::abs;
  return abs(x);
}

/// |a - b| / max(|a|, |b|); zero when both vanish exactly.
template <class S>
double rel_err(const S& a, const S& b) {
  const double scale = std::max(static_cast<double>(std::abs(a)), static_cast<double>(std::abs(b)));
  const double diff = static_cast<double>(std::abs(a - b));
  if (scale == 0.0) return diff;
  return diff / scale;
}

template <class S>
void guard_nonzero(const S& x, double tol, const char* what) {
  if (static_cast<double>(std::abs(x)) <= tol) {
    throw SingularParameters(std::string("vanishing factor: ") + what);
  }
}

/// Running product kept as log-magnitude plus unit phase so long products of
/// sh factors neither overflow nor underflow before the final ratio.
template <class Real>
class ScaledProduct {
 public:
  using C = Complex<Real>;

  void mul(const C& x) {
    const Real m = std::abs(x);
    if (m == Real(0)) {
      zero_ = true;
      return;
    }
    log_mag_ += std::log(m);
    phase_ *= x / m;
  }

  void div(const C& x) {
    const Real m = std::abs(x);
    if (m == Real(0)) throw SingularParameters("division by an exactly vanishing factor");
    log_mag_ -= std::log(m);
    phase_ *= std::conj(x) / m;
  }

  void mul(const ScaledProduct& o) {
    zero_ = zero_ || o.zero_;
    log_mag_ += o.log_mag_;
    phase_ *= o.phase_;
  }

  C value() const {
    if (zero_) return C(0);
    return std::exp(log_mag_) * phase_;
  }

 private:
  Real log_mag_ = 0;
  C phase_ = C(1);
  bool zero_ = false;
};

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace sixv
