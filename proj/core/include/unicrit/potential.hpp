#pragma once

#include "unicrit/dynamics.hpp"

namespace unicrit {

/// Log-coordinate pair of an escaping point: escape-rate potential t > 0 and
/// external angle theta in [0, 1) (in turns).
struct BottcherCoord {
  double t = 0.0;
  double theta = 0.0;
};

inline constexpr double kPotentialTolDefault = 1e-12;
inline constexpr int kPotentialMaxitDefault = 100000;

/// Escape-rate potential G_c(z): harmonic, 0 on the filled set, log|z|+o(1)
/// at infinity. Computed as d^-m (log|z_m| + tail series) once the orbit is
/// in the asymptotic regime; absolute error <= tol.
/// Throws not_escaping if the orbit stays bounded for maxit steps.
double green(const MapParams& p, Cplx z, double tol = kPotentialTolDefault,
             int maxit = kPotentialMaxitDefault);

/// Potential of the parameter plane at c: the potential of the critical
/// value under its own map. Throws not_escaping when c is (numerically)
/// inside the connectedness locus.
double green_of_critical_value(const MapParams& p,
                               double tol = kPotentialTolDefault,
                               int maxit = kPotentialMaxitDefault);

/// Potential of the critical point, G_c(0); 0 when the critical orbit is
/// bounded. Escaping points must clear this level (with margin) before the
/// conformal coordinate below is defined.
double critical_potential(const MapParams& p,
                          double tol = kPotentialTolDefault,
                          int maxit = kPotentialMaxitDefault);

/// Conformal coordinate phi_c(z) conjugating f_c to w -> w^d near infinity,
/// tangent to the identity there. Defined on the escaping region above the
/// critical equipotential. Satisfies |phi_c(z)| = exp(green(z)).
///
/// Branch handling: the correction logs are principal along the forward
/// orbit; the scheme iterates until the orbit is branch-safe and divides
/// potential and angle back down. Throws branch_ambiguity when the input is
/// inside the critical-equipotential margin (10*tol) or the orbit passes
/// within tol of 0; not_escaping as usual.
Cplx bottcher(const MapParams& p, Cplx z, double tol = kPotentialTolDefault,
              int maxit = kPotentialMaxitDefault);

/// (t, theta) of an escaping point; same domain and errors as bottcher.
BottcherCoord external_angle(const MapParams& p, Cplx z,
                             double tol = kPotentialTolDefault,
                             int maxit = kPotentialMaxitDefault);

/// phi_c(z) together with its derivative in the designated variable,
/// propagated exactly through every series factor.
Jet bottcher_jet(const MapParams& p, Cplx z, Var var,
                 double tol = kPotentialTolDefault,
                 int maxit = kPotentialMaxitDefault);

/// Parameter-plane map Phi(c) = phi_c(c) as a jet in c. The derivative is
/// total: both the point slot and the family slot move with c.
Jet param_bottcher(int degree, Cplx c, double tol = kPotentialTolDefault,
                   int maxit = kPotentialMaxitDefault);

/// log phi as a jet (real part = potential, imaginary part = 2*pi * lifted
/// angle). Lower-level entry used by the ray tracer and the probes.
Jet log_bottcher_jet(const MapParams& p, Cplx z, Var var,
                     double tol = kPotentialTolDefault,
                     int maxit = kPotentialMaxitDefault);

/// log Phi(c) as a jet in c.
Jet log_param_bottcher(int degree, Cplx c, double tol = kPotentialTolDefault,
                       int maxit = kPotentialMaxitDefault);

} // namespace unicrit
