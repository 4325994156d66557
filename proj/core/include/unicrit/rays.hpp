#pragma once

#include <vector>

#include "unicrit/angles.hpp"
#include "unicrit/dynamics.hpp"

namespace unicrit {

enum class Plane { dynamical, parameter };

struct RaySample {
  double t = 0.0;
  Cplx z{0.0, 0.0};
};

/// Ordered samples of one external ray, outermost first, with the chord-sum
/// arc length accumulated from the outermost sample. Each sample solves
/// phi(z) = exp(t + 2*pi*i*theta) to the tracer's tolerance (verifiable
/// wherever the coordinate is well-conditioned).
struct RayPolyline {
  Plane plane = Plane::dynamical;
  int degree = 2;
  Cplx c{0.0, 0.0}; // map parameter; meaningful for dynamical rays
  AngleRational angle;
  double t_start = 0.0;
  double t_min = 0.0;
  double ray_tol = 0.0;
  int steps_per_halving = 8;
  std::vector<RaySample> samples;
  std::vector<double> arc_prefix;
};

struct RayOptions {
  double ray_tol = 1e-12;
  /// Deepest potential accepted; binary64 Newton residuals hit roundoff
  /// below this for generic angles. Callers with exact rational angles and
  /// benign (real-slice) dynamics may lower it deliberately.
  double t_floor = 0x1p-40;
  /// Potentials merged into the halving schedule and hit exactly.
  std::vector<double> extra_potentials;
  int maxit = 100000;
};

class NewtonStallError : public Error {
public:
  NewtonStallError(std::string msg, RayPolyline partial_, double last_good)
      : Error(ErrorKind::newton_stall, std::move(msg)),
        partial(std::move(partial_)), last_good_t(last_good) {}
  RayPolyline partial;
  double last_good_t;
};

/// Default starting potentials: smallest power of two whose equipotential
/// lies in the asymptotic regime (and >= need, so requested potentials fit
/// under it).
double dynamical_ray_t_start(const MapParams& p, double need = 0.0);
double param_ray_t_start(int degree, double need = 0.0);

/// Traces the external ray of f_c at the given angle from t_start down to
/// t_min, sampling t_k = t_start * 2^(-k/steps_per_halving). Each sample is
/// solved by damped Newton on phi(f^n(z)) = exp(d^n (t + 2 pi i theta)) at a
/// depth n that places the target in the asymptotic regime, seeded from the
/// previous sample. Throws NewtonStallError (carrying the partial polyline)
/// when damping and substep insertion are exhausted, precision_floor when
/// t_min < t_floor.
RayPolyline trace_dynamical_ray(const MapParams& p, AngleRational angle,
                                double t_start, double t_min,
                                int steps_per_halving = 8,
                                const RayOptions& opt = {});

/// Same for the parameter plane: solves Phi(c) = exp(t + 2 pi i theta) with
/// the total c-derivative jet.
RayPolyline trace_parameter_ray(int degree, AngleRational angle,
                                double t_start, double t_min,
                                int steps_per_halving = 8,
                                const RayOptions& opt = {});

struct LandingEstimate {
  Cplx point{0.0, 0.0};
  double error_bound = 0.0;
  std::vector<double> potentials_used;
};

/// Extrapolates the landing point by fitting z(t) ~ z* + A t^beta to the
/// innermost samples (beta from a log-log regression on successive
/// differences). Samples already stagnant at floating-point resolution
/// short-circuit to the innermost sample. Throws no_convergence when the
/// successive-difference ratios neither fall in [0.05, 0.95] nor stabilize
/// below 1 (slow landing), i.e. when the data cannot support extrapolation.
LandingEstimate landing_estimate(const RayPolyline& ray, int window = 16);

/// Chord-sum arc length from the sample nearest t_from to the innermost
/// sample.
double arc_length(const RayPolyline& ray, double t_from);

/// One row of the geodesic length-ratio experiment: tail lengths of the
/// dynamical ray of f_c0 and of the parameter ray at the same angle, from
/// potential t down to the landing point, and their ratio.
struct GeodesicRatioRow {
  double t = 0.0;
  double gamma_len = 0.0; // dynamical tail length
  double Gamma_len = 0.0; // parameter tail length
  double ratio = 0.0;
};

/// Runs the ratio experiment at the given potentials. Tail lengths are
/// integrals of |dz/dt| over the potential parameter, evaluated per sample
/// from the coordinate jets and completed below a conditioning anchor by a
/// fitted power law (chord sums lose the tail in the noise long before the
/// deep potentials of interest).
std::vector<GeodesicRatioRow> geodesic_ratio_experiment(
    int degree, AngleRational angle, Cplx c0,
    const std::vector<double>& potentials, const RayOptions& opt = {});

} // namespace unicrit
