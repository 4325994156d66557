#include "unicrit/potential.hpp"

#include <cmath>

#include "phi_series.hpp"
#include "unicrit/angles.hpp"

namespace unicrit {

namespace {

// log|1+u| from u, stable for small |u|.
double log_abs_1p(Cplx u) {
  return 0.5 * std::log1p(2.0 * u.real() + std::norm(u));
}

void require_escaping(const MapParams& p, Cplx z, int maxit) {
  if (!escape_classify(p, z, maxit, default_bailout(p)).escaped())
    throw Error(ErrorKind::not_escaping,
                "orbit stayed bounded for maxit iterations");
}

// Shared wrapper: escape + critical-equipotential margin, then the series.
Jet log_phi_checked(const MapParams& p, Jet c, Jet z, double tol, int maxit) {
  require_escaping(p, z.val, maxit);
  const double g0 = critical_potential(p, tol, maxit);
  if (green(p, z.val, tol, maxit) <= g0 + 10.0 * tol)
    throw Error(ErrorKind::branch_ambiguity,
                "point inside the critical equipotential margin");
  return detail::log_phi(p.degree, c, z, tol, maxit,
                         detail::branch_radius(p.degree, std::abs(p.c)), tol);
}

} // namespace

double green(const MapParams& p, Cplx z, double tol, int maxit) {
  if (tol <= 0.0) throw Error(ErrorKind::bad_argument, "green: tol must be > 0");
  const int d = p.degree;
  const double r_anchor = detail::series_radius(d, std::abs(p.c));

  // Reach the asymptotic regime.
  Cplx w = z;
  int m = 0;
  while (std::abs(w) < r_anchor) {
    if (m >= maxit)
      throw Error(ErrorKind::not_escaping,
                  "orbit stayed bounded for maxit iterations");
    w = pow_int(Jet{w}, d).val + p.c;
    ++m;
  }

  // G = d^-m (log|z_m| + sum_k d^-(k+1) log|1 + c/z_{m+k}^d|), truncated when
  // the geometric tail bound (relative to the d^-m scaling) drops below tol.
  const double ac = std::abs(p.c);
  const double log_ac = ac > 0.0 ? std::log(ac) : -HUGE_VAL;
  const double log_d = std::log(static_cast<double>(d));
  const double tail_const = std::log(2.0 * d / (d - 1.0));
  const double log_tol_scaled = std::log(tol) + m * log_d;
  const double log_ovf = std::log(kOverflowThreshold);

  double acc = std::log(std::abs(w));
  double scale = 1.0;
  for (int k = 0;; ++k) {
    const double law = std::log(std::abs(w));
    if (tail_const + log_ac - d * law - (k + 1) * log_d < log_tol_scaled) break;
    if (d * law > log_ovf)
      throw Error(ErrorKind::overflow, "green: orbit power overflows");
    const Cplx wd = pow_int(Jet{w}, d).val;
    scale /= d;
    acc += scale * log_abs_1p(p.c / wd);
    w = wd + p.c;
  }
  return acc * std::pow(static_cast<double>(d), -m);
}

double green_of_critical_value(const MapParams& p, double tol, int maxit) {
  return green(p, p.c, tol, maxit);
}

double critical_potential(const MapParams& p, double tol, int maxit) {
  try {
    return green(p, Cplx{0.0, 0.0}, tol, maxit);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::not_escaping) return 0.0;
    throw;
  }
}

Cplx bottcher(const MapParams& p, Cplx z, double tol, int maxit) {
  const Jet L = log_phi_checked(p, Jet{p.c}, Jet{z}, tol, maxit);
  return std::exp(L.val);
}

BottcherCoord external_angle(const MapParams& p, Cplx z, double tol,
                             int maxit) {
  const Jet L = log_phi_checked(p, Jet{p.c}, Jet{z}, tol, maxit);
  return {L.val.real(), wrap_unit(L.val.imag() / (2.0 * M_PI))};
}

Jet bottcher_jet(const MapParams& p, Cplx z, Var var, double tol, int maxit) {
  const Jet L = log_bottcher_jet(p, z, var, tol, maxit);
  return exp(L);
}

Jet log_bottcher_jet(const MapParams& p, Cplx z, Var var, double tol,
                     int maxit) {
  const Jet cj = var == Var::c ? Jet{p.c, Cplx{1.0, 0.0}} : Jet{p.c};
  const Jet zj = var == Var::z ? Jet{z, Cplx{1.0, 0.0}} : Jet{z};
  return log_phi_checked(p, cj, zj, tol, maxit);
}

Jet param_bottcher(int degree, Cplx c, double tol, int maxit) {
  return exp(log_param_bottcher(degree, c, tol, maxit));
}

Jet log_param_bottcher(int degree, Cplx c, double tol, int maxit) {
  const MapParams p(degree, c);
  require_escaping(p, c, maxit);
  // G_c(c) = d * G_c(0) > G_c(0) automatically; no margin check needed.
  const Jet cj{c, Cplx{1.0, 0.0}};
  return detail::log_phi(degree, cj, cj, tol, maxit,
                         detail::branch_radius(degree, std::abs(c)), tol);
}

} // namespace unicrit
