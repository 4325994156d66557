#pragma once

#include <complex>

#include "unicrit/errors.hpp"

namespace unicrit {

using Cplx = std::complex<double>;

/// Magnitudes beyond this are rejected with ErrorKind::overflow. Potential
/// computations switch to log space well before any orbit reaches it.
inline constexpr double kOverflowThreshold = 1e150;

/// The unicritical family z -> z^d + c.
struct MapParams {
  int degree = 2;
  Cplx c{0.0, 0.0};

  MapParams(int d, Cplx c_) : degree(d), c(c_) {
    if (d < 2) throw Error(ErrorKind::bad_argument, "degree must be >= 2");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw Error(ErrorKind::bad_argument, "parameter c must be finite");
  }
};

/// Value plus first derivative with respect to one designated complex
/// variable. Arithmetic follows the product/chain rules term by term; the
/// derivative of a composite computed through jets is the exact derivative of
/// the composite of the implemented formulas.
struct Jet {
  Cplx val{0.0, 0.0};
  Cplx der{0.0, 0.0};

  constexpr Jet() = default;
  constexpr Jet(Cplx v) : val(v) {}
  constexpr Jet(Cplx v, Cplx d) : val(v), der(d) {}
};

constexpr Jet operator+(const Jet& a, const Jet& b) {
  return {a.val + b.val, a.der + b.der};
}
constexpr Jet operator-(const Jet& a, const Jet& b) {
  return {a.val - b.val, a.der - b.der};
}
constexpr Jet operator-(const Jet& a) { return {-a.val, -a.der}; }
constexpr Jet operator*(const Jet& a, const Jet& b) {
  return {a.val * b.val, a.val * b.der + a.der * b.val};
}
constexpr Jet operator*(double s, const Jet& a) { return {s * a.val, s * a.der}; }
constexpr Jet operator/(const Jet& a, const Jet& b) {
  const Cplx q = a.val / b.val;
  return {q, (a.der - q * b.der) / b.val};
}

inline Jet exp(const Jet& a) {
  const Cplx e = std::exp(a.val);
  return {e, e * a.der};
}
/// Principal-branch log.
inline Jet log(const Jet& a) { return {std::log(a.val), a.der / a.val}; }

inline Jet pow_int(Jet a, int n) {
  Jet r{Cplx{1.0, 0.0}, Cplx{0.0, 0.0}};
  while (n > 0) {
    if (n & 1) r = r * a;
    a = a * a;
    n >>= 1;
  }
  return r;
}

/// Which variable jets differentiate against.
enum class Var { z, c };

/// One application of f_c on a jet; c rides along as a jet so that Var::c
/// propagation needs no special casing at the call sites.
inline Jet map_step(int degree, const Jet& c, const Jet& z) {
  return pow_int(z, degree) + c;
}

struct EscapeResult {
  enum class Status { escaped, undecided };
  Status status = Status::undecided;
  int n = 0;      // first index with |z_n| > bailout (valid when escaped)
  Cplx z{};       // z_n at escape, else the final iterate z_maxit
  int maxit = 0;
  double bailout = 0.0;

  bool escaped() const { return status == Status::escaped; }
};

/// max(2, |c|)^(1/(d-1)) + 1: beyond this radius |f_c(z)| > |z|, so escape
/// is genuine for every degree.
double default_bailout(const MapParams& p);

/// f_c^n(z0). Throws overflow once an intermediate leaves the safe range.
Cplx iterate(const MapParams& p, Cplx z0, int n);

/// prod_{k=0}^{n-1} d*z_k^{d-1} along z_0 = c; the empty product (n = 0) is 1.
/// An exact zero (orbit through the critical point) is returned as 0.
Cplx orbit_derivative(const MapParams& p, int n);

/// f_c^n on a jet in the designated variable. For Var::c the parameter slot
/// carries derivative 1, for Var::z it is constant.
Jet iterate_jet(const MapParams& p, Jet z0, int n, Var var);

/// First-exit classification: Escaped at the smallest n with |z_n| > bailout
/// (z_0 included), Undecided with the final iterate otherwise. Undecided is a
/// value, not an error.
EscapeResult escape_classify(const MapParams& p, Cplx z0, int maxit,
                             double bailout);

} // namespace unicrit
