#pragma once

// Internal engine for the conformal coordinate near infinity and its
// derivatives. Not installed; potential.cpp and rays.cpp share it.

#include <cmath>

#include "unicrit/dynamics.hpp"

namespace unicrit::detail {

/// Radius beyond which every factor 1 + c/w^d sits in the disk D(1, 1/2):
/// principal logs are safe and the tail is geometrically dominated.
inline double series_radius(int d, double ac) {
  const double bail = std::pow(std::max(2.0, ac), 1.0 / (d - 1)) + 1.0;
  return std::max(bail + 0.5, std::pow(2.0 * ac, 1.0 / d));
}

/// Conservative branch-trust radius: orbits above it stay principal-safe and
/// essentially radial. Below it, terms are still summed with principal logs;
/// potential and angle of the deeper point come out divided back down because
/// the scale factor d^-(k+1) implements exactly that.
inline double branch_radius(int d, double ac) {
  return 10.0 * std::pow(1.0 + ac, 1.0 / (d - 1));
}

/// log(phi(z)) as a jet: real part is the escape-rate potential, imaginary
/// part 2*pi times the (lifted) external angle. The parameter rides along as
/// a jet so the same code serves d/dz, d/dc and the parameter-plane map.
///
/// L = Log z + sum_k d^-(k+1) Log(1 + c / z_k^d), principal branches, summed
/// until the orbit clears trust_radius and the geometric tail bound drops
/// below tol.
///
/// Throws: not_escaping if the orbit stays below trust_radius for maxit
/// steps; branch_ambiguity if the forward orbit passes within ztol of 0
/// (the correction factors lose their argument there); overflow only for
/// pathological |c|.
inline Jet log_phi(int d, const Jet& c, const Jet& z, double tol, int maxit,
                   double trust_radius, double ztol) {
  const double ac = std::abs(c.val);
  const double log_ovf = std::log(kOverflowThreshold);
  // Tail bound: |Log(1+u)| <= 2|u| for |u| <= 1/2, and the remaining terms
  // are dominated by a geometric series with ratio 1/d.
  const double tail_const = std::log(2.0 * d / (d - 1.0));
  const double log_ac = ac > 0.0 ? std::log(ac) : -HUGE_VAL;
  const double log_d = std::log(static_cast<double>(d));
  const double log_tol = std::log(tol);

  Jet w = z;
  Jet acc = log(z);
  double scale = 1.0;
  for (int k = 0; k < maxit; ++k) {
    const double aw = std::abs(w.val);
    if (aw < ztol)
      throw Error(ErrorKind::branch_ambiguity,
                  "orbit passes within tol of 0; log branch undefined");
    const double law = std::log(aw);
    if (aw >= trust_radius &&
        tail_const + log_ac - d * law - (k + 1) * log_d < log_tol) {
      return acc;
    }
    if (d * law > log_ovf)
      throw Error(ErrorKind::overflow, "orbit power overflows");
    const Jet wd = pow_int(w, d);
    const Jet wn = wd + c;
    scale /= d;
    acc = acc + scale * log(wn / wd);
    w = wn;
  }
  throw Error(ErrorKind::not_escaping,
              "point did not reach the asymptotic regime within maxit");
}

} // namespace unicrit::detail
