#pragma once

// Test-side oracles, independent of the library paths they check.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "unicrit/dynamics.hpp"

namespace oracles {

using unicrit::Cplx;

/// Raw-limit potential log|f^n(z)| / d^n, iterated in log space once the
/// orbit is large. Independent of the series formula used by green().
inline double green_raw_limit(int d, Cplx c, Cplx z, int depth = 64) {
  int k = 0;
  while (std::abs(z) < 1e12 && k < 100000) {
    Cplx p{1.0, 0.0};
    for (int i = 0; i < d; ++i) p *= z;
    z = p + c;
    ++k;
  }
  double lz = std::log(std::abs(z));
  // A few more doublings in log space sharpen nothing further: the
  // correction log|1+c/z^d| is already below 1e-11 relative at |z|=1e12.
  (void)depth;
  return lz * std::pow(static_cast<double>(d), -k);
}

/// Conjugacy closed forms for c = -2 on the real slice |z| > 2:
/// phi(z) = (z + sqrt(z^2-4))/2 for z > 2, (z - sqrt(z^2-4))/2 for z < -2.
inline double chebyshev_phi(double z) {
  const double s = std::sqrt(z * z - 4.0);
  return z > 0 ? (z + s) / 2.0 : (z - s) / 2.0;
}
inline double chebyshev_phi_deriv(double z) {
  const double s = std::sqrt(z * z - 4.0);
  return z > 0 ? (1.0 + z / s) / 2.0 : (1.0 - z / s) / 2.0;
}
/// Inverse: point of the c = -2 map at potential t on the angle-0 (z > 2)
/// or angle-1/2 (z < -2) ray.
inline double chebyshev_point(double t, bool negative_axis) {
  const double z = 2.0 * std::cosh(t);
  return negative_axis ? -z : z;
}

/// Central finite difference of a complex-analytic function.
inline Cplx central_diff(const std::function<Cplx(Cplx)>& f, Cplx x, double h) {
  return (f(x + Cplx{h, 0.0}) - f(x - Cplx{h, 0.0})) / (2.0 * h);
}

/// Multiplier of the attracting fixed point of z^2 + c (main cardioid).
inline Cplx cardioid_multiplier(Cplx c) {
  return 1.0 - std::sqrt(Cplx{1.0, 0.0} - 4.0 * c);
}

/// Brute-force Euclidean distance transform for small grids.
inline std::vector<double> edt_brute(int nx, int ny,
                                     const std::vector<std::uint8_t>& site) {
  std::vector<double> out(static_cast<std::size_t>(nx) * ny,
                          std::numeric_limits<double>::infinity());
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (int sy = 0; sy < ny; ++sy)
        for (int sx = 0; sx < nx; ++sx)
          if (site[sy * (std::size_t)nx + sx]) {
            const double dx = x - sx, dy = y - sy;
            best = std::min(best, dx * dx + dy * dy);
          }
      out[y * (std::size_t)nx + x] = std::sqrt(best);
    }
  return out;
}


/// Real-slice quadrature oracle for geodesic tail lengths at c0 = -2.
/// Independent evaluation pipeline: bisection on the potential for the
/// curve, central differences of the potential for the speed, trapezoid in
/// log-potential plus a fitted power tail below the conditioning anchor.
struct SliceOracle {
  std::function<double(double)> potential_of; // G at offset x > 0 beyond -2

  double x_of_t(double t) const {
    double lo = 1e-18, hi = 8.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = std::sqrt(lo * hi);
      (potential_of(mid) < t ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
  }
  double speed_of_t(double t) const {
    const double x = x_of_t(t);
    const double h = 1e-4 * x;
    const double dg = (potential_of(x + h) - potential_of(x - h)) / (2.0 * h);
    return 1.0 / dg;
  }
  double tail_length(double t) const {
    const double t_anchor = 0x1p-16;
    std::vector<double> lt, li;
    for (int k = 0;; ++k) {
      const double tk = 0.25 * std::pow(2.0, -k / 8.0);
      if (tk < t_anchor * 0.999) break;
      lt.push_back(std::log(tk));
      li.push_back(std::log(speed_of_t(tk) * tk));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < lt.size(); ++i) {
      if (lt[i] > std::log(0x1p-6) + 1e-9) continue;
      sx += lt[i];
      sy += li[i];
      sxx += lt[i] * lt[i];
      sxy += lt[i] * li[i];
      ++m;
    }
    const double beta = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double level = (sy - beta * sx) / m;
    auto integrand_model = [&](double tt) {
      return std::exp(level + beta * std::log(tt));
    };
    if (t <= t_anchor * 1.0000001) return integrand_model(t) / beta;
    double acc = integrand_model(t_anchor) / beta;
    for (std::size_t i = 0; i + 1 < lt.size(); ++i) {
      const double t_hi = std::exp(lt[i]), t_lo = std::exp(lt[i + 1]);
      if (t_hi > t * 1.0000001 || t_lo < t_anchor * 0.9999999) continue;
      acc += 0.5 * (std::exp(li[i]) + std::exp(li[i + 1])) *
             (lt[i] - lt[i + 1]);
    }
    return acc;
  }
};


} // namespace oracles

