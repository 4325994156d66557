#include "unicrit/rays.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "phi_series.hpp"
#include "unicrit/potential.hpp"

namespace unicrit {

namespace {

constexpr int kNewtonMax = 60;
constexpr int kHalvingsMax = 20;
constexpr int kSubstepsMax = 8;
constexpr double kStepTol = 1e-13;
// Loose step threshold under which a residual plateau counts as converged:
// the Newton step is the remaining-error estimate, and near the fp floor the
// residual cannot decrease further.
constexpr double kFloorStepTol = 1e-9;

struct RayProblem {
  Plane plane;
  int degree;
  Cplx c; // fixed parameter (dynamical plane only)
  double tol;
  int maxit;

  double ref_abs(Cplx x) const {
    return plane == Plane::parameter ? std::abs(x) : std::abs(c);
  }

  int depth_for(double t, Cplx x) const {
    const double t_lo =
        std::log(detail::branch_radius(degree, ref_abs(x))) + 0.5;
    if (t >= t_lo) return 0;
    const int n = static_cast<int>(
        std::ceil((std::log(t_lo) - std::log(t)) / std::log((double)degree)));
    return std::max(n, 0);
  }

  Cplx target(double t, const AngleRational& angle, int n) const {
    const double pot = t * std::pow(static_cast<double>(degree), n);
    const AngleRational ang_n = angle.times_pow_mod1(degree, n);
    return std::exp(pot) * unit_from_turns(ang_n.turns());
  }

  // phi(f^n(x)) as a jet in x. Throws on branch/overflow trouble at trial
  // points; the damping loop treats that as a rejected step.
  Jet eval(Cplx x, int n) const {
    const Jet cj = plane == Plane::parameter ? Jet{x, Cplx{1.0, 0.0}}
                                             : Jet{c, Cplx{0.0, 0.0}};
    Jet w = plane == Plane::parameter ? cj : Jet{x, Cplx{1.0, 0.0}};
    for (int k = 0; k < n; ++k) {
      if (std::abs(w.val) > kOverflowThreshold)
        throw Error(ErrorKind::overflow, "ray eval overflow");
      w = map_step(degree, cj, w);
    }
    const Jet L =
        detail::log_phi(degree, cj, w, tol, maxit,
                        detail::branch_radius(degree, ref_abs(x)), tol);
    return exp(L);
  }

  // Damped Newton for phi(f^n(x)) = tau, seeded at x0. Returns the solution
  // or nullopt on stall.
  std::optional<Cplx> solve(double t, const AngleRational& angle, Cplx x0) const {
    const int n = depth_for(t, x0);
    const Cplx tau = target(t, angle, n);
    Cplx x = x0;
    Jet f;
    try {
      f = eval(x, n);
    } catch (const Error&) {
      return std::nullopt;
    }
    Cplx res = f.val - tau;
    for (int it = 0; it < kNewtonMax; ++it) {
      if (!(std::abs(res) > 4.0 * std::numeric_limits<double>::epsilon() *
                                 std::abs(tau)))
        return x; // residual at the fp floor of the target
      const Cplx full_step = res / f.der;
      if (!std::isfinite(full_step.real()) || !std::isfinite(full_step.imag()))
        return std::nullopt;
      double s = 1.0;
      bool accepted = false;
      for (int h = 0; h <= kHalvingsMax; ++h, s *= 0.5) {
        const Cplx x_try = x - s * full_step;
        Jet f_try;
        try {
          f_try = eval(x_try, n);
        } catch (const Error&) {
          continue; // left the evaluable region; damp further
        }
        const Cplx res_try = f_try.val - tau;
        if (std::abs(res_try) < std::abs(res)) {
          x = x_try;
          f = f_try;
          res = res_try;
          accepted = true;
          break;
        }
      }
      const double step_size = std::abs(full_step);
      const double scale = std::max(1.0, std::abs(x));
      if (!accepted)
        return step_size <= kFloorStepTol * scale ? std::optional<Cplx>(x)
                                                  : std::nullopt;
      if (step_size <= kStepTol * scale) return x;
    }
    return std::nullopt;
  }
};

std::vector<double> build_schedule(double t_start, double t_min,
                                   int steps_per_halving,
                                   const std::vector<double>& extra) {
  std::vector<double> ts;
  for (int k = 0;; ++k) {
    double t = t_start * std::pow(2.0, -static_cast<double>(k) /
                                            steps_per_halving);
    if (t <= t_min * (1.0 + 1e-12)) {
      ts.push_back(t_min);
      break;
    }
    ts.push_back(t);
  }
  for (double e : extra) {
    if (e > t_start * (1.0 + 1e-12) || e < t_min * (1.0 - 1e-12))
      throw Error(ErrorKind::bad_argument,
                  "extra potential outside [t_min, t_start]");
    ts.push_back(e);
  }
  std::sort(ts.begin(), ts.end(), std::greater<>());
  // Drop near-duplicates (relative 1e-12) keeping the first occurrence.
  std::vector<double> out;
  for (double t : ts)
    if (out.empty() || out.back() - t > 1e-12 * out.back()) out.push_back(t);
  return out;
}

RayPolyline trace(const RayProblem& prob, AngleRational angle, double t_start,
                  double t_min, int steps_per_halving, const RayOptions& opt) {
  if (!(t_start > t_min && t_min > 0.0))
    throw Error(ErrorKind::bad_argument, "require t_start > t_min > 0");
  if (steps_per_halving < 1)
    throw Error(ErrorKind::bad_argument, "steps_per_halving must be >= 1");
  if (t_min < opt.t_floor)
    throw Error(ErrorKind::precision_floor,
                "t_min below the configured potential floor");

  RayPolyline ray;
  ray.plane = prob.plane;
  ray.degree = prob.degree;
  ray.c = prob.c;
  ray.angle = angle;
  ray.t_start = t_start;
  ray.t_min = t_min;
  ray.ray_tol = opt.ray_tol;
  ray.steps_per_halving = steps_per_halving;

  const auto schedule =
      build_schedule(t_start, t_min, steps_per_halving, opt.extra_potentials);

  auto push_sample = [&ray](double t, Cplx z) {
    if (!ray.samples.empty()) {
      ray.arc_prefix.push_back(ray.arc_prefix.back() +
                               std::abs(z - ray.samples.back().z));
    } else {
      ray.arc_prefix.push_back(0.0);
    }
    ray.samples.push_back({t, z});
  };

  // Asymptotic seed at the outermost potential.
  Cplx x = std::exp(t_start) * unit_from_turns(angle.turns());
  double t_prev = t_start;

  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const double t_target = schedule[i];
    auto sol = prob.solve(t_target, angle, x);
    if (!sol) {
      // Substep insertion between the last good potential and the target.
      double lo = t_target;
      int budget = kSubstepsMax;
      bool ok = false;
      double hi = t_prev;
      Cplx seed = x;
      while (budget-- > 0) {
        const double mid = std::sqrt(hi * lo);
        auto mid_sol = prob.solve(mid, angle, seed);
        if (mid_sol) {
          seed = *mid_sol;
          hi = mid;
          auto retry = prob.solve(t_target, angle, seed);
          if (retry) {
            sol = retry;
            ok = true;
            break;
          }
        }
        // Either the midpoint failed (halve the interval again) or the
        // target still failed from closer in (also halve).
      }
      if (!ok)
        throw NewtonStallError("newton stalled approaching t=" +
                                   std::to_string(t_target),
                               ray, t_prev);
    }
    x = *sol;
    push_sample(t_target, x);
    t_prev = t_target;
  }
  return ray;
}

} // namespace

double dynamical_ray_t_start(const MapParams& p, double need) {
  const double t_req =
      std::max({std::log(detail::branch_radius(p.degree, std::abs(p.c))) + 0.8,
                need, 2.0});
  return std::exp2(std::ceil(std::log2(t_req)));
}

double param_ray_t_start(int degree, double need) {
  const double seed_abs = 20.0 * std::pow(2.0, 1.0 / (degree - 1));
  const double t_req = std::max({std::log(seed_abs), need, 2.0});
  return std::exp2(std::ceil(std::log2(t_req)));
}

RayPolyline trace_dynamical_ray(const MapParams& p, AngleRational angle,
                                double t_start, double t_min,
                                int steps_per_halving, const RayOptions& opt) {
  if (std::exp(t_start) <
      0.8 * detail::branch_radius(p.degree, std::abs(p.c)))
    throw Error(ErrorKind::bad_argument,
                "t_start too small: seed equipotential not asymptotic");
  RayProblem prob{Plane::dynamical, p.degree, p.c, opt.ray_tol, opt.maxit};
  return trace(prob, angle, t_start, t_min, steps_per_halving, opt);
}

RayPolyline trace_parameter_ray(int degree, AngleRational angle,
                                double t_start, double t_min,
                                int steps_per_halving, const RayOptions& opt) {
  if (degree < 2) throw Error(ErrorKind::bad_argument, "degree must be >= 2");
  if (std::exp(t_start) < 16.0 * std::pow(2.0, 1.0 / (degree - 1)))
    throw Error(ErrorKind::bad_argument,
                "t_start too small: seed equipotential not asymptotic");
  RayProblem prob{Plane::parameter, degree, Cplx{0.0, 0.0}, opt.ray_tol,
                  opt.maxit};
  return trace(prob, angle, t_start, t_min, steps_per_halving, opt);
}

LandingEstimate landing_estimate(const RayPolyline& ray, int window) {
  const auto& s = ray.samples;
  const int n = static_cast<int>(s.size());
  if (n < 8)
    throw Error(ErrorKind::bad_argument,
                "landing_estimate needs at least 8 samples");
  const int w = std::min(std::max(window, 8), n);
  const int i0 = n - w;

  LandingEstimate out;
  for (int i = i0; i < n; ++i) out.potentials_used.push_back(s[i].t);

  const double scale = std::max(1.0, std::abs(s[n - 1].z));
  const double fp_floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;

  // Stagnation: the tail already sits at floating-point resolution.
  double spread = 0.0;
  for (int i = i0; i < n; ++i)
    spread = std::max(spread, std::abs(s[i].z - s[n - 1].z));
  if (spread <= fp_floor) {
    out.point = s[n - 1].z;
    out.error_bound = spread + fp_floor / 16.0;
    return out;
  }

  std::vector<double> mags;
  for (int i = i0; i + 1 < n; ++i)
    mags.push_back(std::abs(s[i + 1].z - s[i].z));

  std::vector<double> ratios;
  for (std::size_t i = 0; i + 1 < mags.size(); ++i)
    if (mags[i] > 0.0) ratios.push_back(mags[i + 1] / mags[i]);
  if (ratios.size() < 3)
    throw Error(ErrorKind::no_convergence, "too few usable differences");
  std::sort(ratios.begin(), ratios.end());
  const double median = ratios[ratios.size() / 2];
  const double q1 = ratios[ratios.size() / 4];
  const double q3 = ratios[(3 * ratios.size()) / 4];
  const bool in_band = median >= 0.05 && median <= 0.95;
  const bool stable_slow =
      median > 0.95 && median < 1.0 - 1e-6 && (q3 - q1) <= 0.05 * median;
  if (!in_band && !stable_slow)
    throw Error(ErrorKind::no_convergence,
                "successive-difference ratios do not stabilize (median " +
                    std::to_string(median) + ")");

  // One complete power-law extrapolation on [first, last): beta from the
  // log-log slope of successive differences, then linear least squares for
  // (z*, A) in z ~ z* + A t^beta.
  struct Fit {
    Cplx z_star;
    double rms;
    double beta;
  };
  auto fit_range = [&s](int first, int last) -> Fit {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int i = first; i + 1 < last; ++i) {
      const double mag = std::abs(s[i + 1].z - s[i].z);
      if (mag <= 0.0) continue;
      const double lt = 0.5 * (std::log(s[i].t) + std::log(s[i + 1].t));
      const double lm = std::log(mag);
      sx += lt;
      sy += lm;
      sxx += lt * lt;
      sxy += lt * lm;
      ++m;
    }
    if (m < 3)
      throw Error(ErrorKind::no_convergence, "too few usable differences");
    const double beta = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    if (!(beta > 1e-4 && beta < 60.0))
      throw Error(ErrorKind::no_convergence,
                  "fitted decay exponent out of range (beta=" +
                      std::to_string(beta) + ")");
    double np = 0, s1 = 0, s2 = 0;
    Cplx y0{0.0, 0.0}, y1{0.0, 0.0};
    for (int i = first; i < last; ++i) {
      const double b = std::pow(s[i].t, beta);
      np += 1.0;
      s1 += b;
      s2 += b * b;
      y0 += s[i].z;
      y1 += s[i].z * b;
    }
    const double det = np * s2 - s1 * s1;
    const Cplx z_star = (y0 * s2 - y1 * s1) / det;
    const Cplx amp = (y1 * np - y0 * s1) / det;
    double rss = 0.0;
    for (int i = first; i < last; ++i) {
      const Cplx r = s[i].z - z_star - amp * std::pow(s[i].t, beta);
      rss += std::norm(r);
    }
    return {z_star, std::sqrt(rss / np), beta};
  };

  const Fit full = fit_range(i0, n);
  out.point = full.z_star;
  // The error bar combines the fit residual with the two extrapolation
  // sensitivities that dominate in practice: dropping the innermost sample
  // and re-estimating on the inner half window (fresh decay exponent).
  double sensitivity = fp_floor / 16.0;
  try {
    sensitivity = std::max(sensitivity,
                           std::abs(full.z_star - fit_range(i0, n - 1).z_star));
    const int half_lo = n - std::max(6, (n - i0) / 2);
    sensitivity = std::max(
        sensitivity, std::abs(full.z_star - fit_range(half_lo, n).z_star));
  } catch (const Error&) {
    // A sub-window too noisy to fit is itself a sensitivity signal.
    sensitivity = std::max(sensitivity, full.rms * 4.0);
  }
  out.error_bound = std::max(full.rms, sensitivity);
  return out;
}

double arc_length(const RayPolyline& ray, double t_from) {
  if (ray.samples.empty())
    throw Error(ErrorKind::bad_argument, "arc_length on empty polyline");
  if (t_from > ray.t_start * (1.0 + 1e-9) || t_from < ray.t_min * (1.0 - 1e-9))
    throw Error(ErrorKind::bad_argument,
                "t_from outside the ray's potential range");
  std::size_t best = 0;
  double best_d = HUGE_VAL;
  for (std::size_t i = 0; i < ray.samples.size(); ++i) {
    const double dist = std::fabs(ray.samples[i].t - t_from);
    if (dist < best_d) {
      best_d = dist;
      best = i;
    }
  }
  return ray.arc_prefix.back() - ray.arc_prefix[best];
}

namespace {

// Per-sample |dz/dt| from the coordinate jets: dz/dt = 1 / d(log phi)/dz.
double ray_speed(const RayPolyline& ray, const RaySample& s, double tol) {
  Jet L;
  if (ray.plane == Plane::dynamical) {
    L = log_bottcher_jet(MapParams(ray.degree, ray.c), s.z, Var::z, tol);
  } else {
    L = log_param_bottcher(ray.degree, s.z, tol);
  }
  return 1.0 / std::abs(L.der);
}

struct TailModel {
  double beta = 0.0;
  double log_level = 0.0; // fitted ln I at ln t = 0
  double t_anchor = 0.0;

  double integrand(double t) const {
    return std::exp(log_level + beta * std::log(t));
  }
  /// Integral of |dz/dt| from 0 to t under the power model (integrand in
  /// the log-potential variable is I(t) = |dz/dt| * t ~ e^level t^beta).
  double tail(double t) const { return integrand(t) / beta; }
};

} // namespace

std::vector<GeodesicRatioRow> geodesic_ratio_experiment(
    int degree, AngleRational angle, Cplx c0,
    const std::vector<double>& potentials, const RayOptions& opt) {
  if (potentials.empty())
    throw Error(ErrorKind::bad_argument, "empty potential list");
  std::vector<double> pots = potentials;
  std::sort(pots.begin(), pots.end(), std::greater<>());

  // Conditioning anchor: below it, sample geometry is fp-noise relative to
  // the tail length, so the tail is completed by the fitted power law. The
  // fit window sits just above the anchor.
  const double t_anchor = 0x1p-16;
  const double t_fit_hi = 0x1p-6;

  const MapParams p(degree, c0);
  RayOptions ropt = opt;
  ropt.extra_potentials.clear();
  for (double t : pots)
    if (t >= t_anchor) ropt.extra_potentials.push_back(t);

  const double hi_need = std::max(pots.front(), t_fit_hi) * 1.0001;
  const double t_trace_min = std::min(t_anchor, pots.front());

  const RayPolyline dyn =
      trace_dynamical_ray(p, angle, dynamical_ray_t_start(p, hi_need),
                          t_trace_min, 8, ropt);
  const RayPolyline par =
      trace_parameter_ray(degree, angle, param_ray_t_start(degree, hi_need),
                          t_trace_min, 8, ropt);

  const double tol = 1e-12;
  auto build = [&](const RayPolyline& ray) {
    struct Built {
      std::vector<double> log_t, log_I;
      TailModel model;
      const RayPolyline* ray;
    } b;
    b.ray = &ray;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int nfit = 0;
    b.log_t.reserve(ray.samples.size());
    b.log_I.reserve(ray.samples.size());
    for (const auto& s : ray.samples) {
      const double li = std::log(ray_speed(ray, s, tol) * s.t);
      const double lt = std::log(s.t);
      b.log_t.push_back(lt);
      b.log_I.push_back(li);
      if (s.t >= t_anchor * 0.999 && s.t <= t_fit_hi * 1.001) {
        sx += lt;
        sy += li;
        sxx += lt * lt;
        sxy += lt * li;
        ++nfit;
      }
    }
    if (nfit < 8)
      throw Error(ErrorKind::bad_argument,
                  "not enough samples in the tail-fit window");
    const double det = nfit * sxx - sx * sx;
    b.model.beta = (nfit * sxy - sx * sy) / det;
    b.model.log_level = (sy - b.model.beta * sx) / nfit;
    b.model.t_anchor = t_anchor;
    if (!(b.model.beta > 1e-3))
      throw Error(ErrorKind::no_convergence,
                  "tail integrand does not decay along the ray");
    return b;
  };

  auto built_dyn = build(dyn);
  auto built_par = build(par);

  auto tail_length = [&](const decltype(built_dyn)& b, double t) {
    if (t <= b.model.t_anchor * 1.0000001) return b.model.tail(t);
    // Trapezoid in log t over the samples between t and the anchor, plus the
    // model tail below the anchor.
    double acc = b.model.tail(b.model.t_anchor);
    const auto& samples = b.ray->samples;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      const double t_hi = samples[i].t, t_lo = samples[i + 1].t;
      if (t_hi > t * 1.0000001 || t_lo < b.model.t_anchor * 0.9999999) continue;
      const double du = b.log_t[i] - b.log_t[i + 1];
      acc += 0.5 * (std::exp(b.log_I[i]) + std::exp(b.log_I[i + 1])) * du;
    }
    return acc;
  };

  std::vector<GeodesicRatioRow> rows;
  rows.reserve(pots.size());
  for (double t : pots) {
    GeodesicRatioRow row;
    row.t = t;
    row.gamma_len = tail_length(built_dyn, t);
    row.Gamma_len = tail_length(built_par, t);
    row.ratio = row.gamma_len / row.Gamma_len;
    rows.push_back(row);
  }
  return rows;
}

} // namespace unicrit
