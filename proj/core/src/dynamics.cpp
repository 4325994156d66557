#include "unicrit/dynamics.hpp"

#include <cmath>

namespace unicrit {

namespace {

bool too_big(const Cplx& z) {
  return std::abs(z.real()) > kOverflowThreshold ||
         std::abs(z.imag()) > kOverflowThreshold;
}

} // namespace

double default_bailout(const MapParams& p) {
  const double base = std::max(2.0, std::abs(p.c));
  return std::pow(base, 1.0 / (p.degree - 1)) + 1.0;
}

Cplx iterate(const MapParams& p, Cplx z0, int n) {
  if (n < 0) throw Error(ErrorKind::bad_argument, "iterate: n must be >= 0");
  Cplx z = z0;
  for (int k = 0; k < n; ++k) {
    if (too_big(z))
      throw Error(ErrorKind::overflow, "iterate: orbit left the safe range");
    z = pow_int(Jet{z}, p.degree).val + p.c;
  }
  if (too_big(z))
    throw Error(ErrorKind::overflow, "iterate: orbit left the safe range");
  return z;
}

Cplx orbit_derivative(const MapParams& p, int n) {
  if (n < 0)
    throw Error(ErrorKind::bad_argument, "orbit_derivative: n must be >= 0");
  Cplx z = p.c;
  Cplx prod{1.0, 0.0};
  const double d = p.degree;
  for (int k = 0; k < n; ++k) {
    if (too_big(z) || too_big(prod))
      throw Error(ErrorKind::overflow, "orbit_derivative: overflow");
    prod *= d * pow_int(Jet{z}, p.degree - 1).val;
    z = pow_int(Jet{z}, p.degree).val + p.c;
  }
  if (too_big(prod))
    throw Error(ErrorKind::overflow, "orbit_derivative: overflow");
  return prod;
}

Jet iterate_jet(const MapParams& p, Jet z0, int n, Var var) {
  if (n < 0) throw Error(ErrorKind::bad_argument, "iterate_jet: n must be >= 0");
  const Jet c = var == Var::c ? Jet{p.c, Cplx{1.0, 0.0}} : Jet{p.c};
  Jet z = z0;
  for (int k = 0; k < n; ++k) {
    if (too_big(z.val) || too_big(z.der))
      throw Error(ErrorKind::overflow, "iterate_jet: overflow");
    z = map_step(p.degree, c, z);
  }
  if (too_big(z.val) || too_big(z.der))
    throw Error(ErrorKind::overflow, "iterate_jet: overflow");
  return z;
}

EscapeResult escape_classify(const MapParams& p, Cplx z0, int maxit,
                             double bailout) {
  if (maxit < 0)
    throw Error(ErrorKind::bad_argument, "escape_classify: maxit must be >= 0");
  // Genuine-escape radius: |z| above it implies |f_c(z)| > |z|. The default
  // bailout adds a +1 margin on top of this.
  if (bailout < std::pow(std::max(2.0, std::abs(p.c)), 1.0 / (p.degree - 1)))
    throw Error(ErrorKind::bad_argument,
                "escape_classify: bailout below the genuine-escape radius");
  EscapeResult r;
  r.maxit = maxit;
  r.bailout = bailout;
  Cplx z = z0;
  for (int n = 0; n <= maxit; ++n) {
    if (std::abs(z) > bailout) {
      r.status = EscapeResult::Status::escaped;
      r.n = n;
      r.z = z;
      return r;
    }
    if (n == maxit) break; // final iterate checked, stop before advancing
    z = pow_int(Jet{z}, p.degree).val + p.c;
  }
  r.status = EscapeResult::Status::undecided;
  r.z = z;
  return r;
}

} // namespace unicrit
