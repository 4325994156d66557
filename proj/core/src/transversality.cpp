#include "unicrit/transversality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "unicrit/potential.hpp"
#include "unicrit/rays.hpp"

namespace unicrit {

namespace {

constexpr int kRatioWindow = 50;
constexpr double kStallRatio = 0.999;

// Least-squares slope of log-magnitudes over the trailing window; the
// geometric ratio estimate is exp(slope).
double fitted_ratio(const std::deque<double>& log_mags) {
  const int n = static_cast<int>(log_mags.size());
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += i;
    sy += log_mags[i];
    sxx += static_cast<double>(i) * i;
    sxy += i * log_mags[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  const double slope = (n * sxy - sx * sy) / denom;
  return std::exp(slope);
}

} // namespace

TransversalitySum transversality_sum(const MapParams& p, double tol,
                                     int max_terms,
                                     const std::vector<double>& betas) {
  if (tol <= 0.0)
    throw Error(ErrorKind::bad_argument, "transversality_sum: tol must be > 0");
  TransversalitySum out;
  for (double b : betas) out.beta_sums[b] = 0.0;

  const int d = p.degree;
  const double log_ovf = std::log(kOverflowThreshold);
  Cplx z = p.c;
  Cplx deriv{1.0, 0.0}; // D f^n at the critical value, n = out.n_terms
  std::deque<double> window;

  for (int n = 0; n < max_terms; ++n) {
    const Cplx term = Cplx{1.0, 0.0} / deriv;
    const double mag = std::abs(term);
    out.value += term;
    out.n_terms = n + 1;
    out.last_term_mag = mag;
    for (auto& [b, s] : out.beta_sums) s += std::pow(mag, b);

    window.push_back(std::log(mag));
    if (static_cast<int>(window.size()) > kRatioWindow) window.pop_front();
    out.decay_ratio = fitted_ratio(window);
    out.short_window = static_cast<int>(window.size()) < kRatioWindow;

    if (out.decay_ratio > 0.0 && out.decay_ratio < 1.0) {
      out.tail_bound = out.decay_ratio * mag / (1.0 - out.decay_ratio);
      if (n >= 4 && out.tail_bound < tol) return out;
    } else {
      out.tail_bound = HUGE_VAL;
    }
    if (!out.short_window && out.decay_ratio >= kStallRatio)
      throw NonConvergentError(
          "term magnitudes show no decay (interior or parabolic parameter?)",
          out);

    // Next factor d * z^(d-1); the series is undefined through a zero.
    const double az = std::abs(z);
    if (az == 0.0)
      throw NonConvergentError("orbit derivative factor vanished (orbit hit 0)",
                               out);
    // Superexponential growth: once the log of the next term drops far below
    // tol the remaining tail is negligible even without the ratio fit.
    const double log_next_deriv =
        std::log(std::abs(deriv)) + std::log(static_cast<double>(d)) +
        (d - 1) * std::log(az);
    if (log_next_deriv > -std::log(tol) + 40.0) {
      out.tail_bound = std::min(out.tail_bound, 2.0 * std::exp(-log_next_deriv));
      return out;
    }
    if (log_next_deriv > log_ovf)
      throw Error(ErrorKind::overflow, "transversality_sum: derivative overflow");
    deriv *= static_cast<double>(d) * pow_int(Jet{z}, d - 1).val;
    if (d * std::log(std::max(az, 1e-300)) > log_ovf)
      throw Error(ErrorKind::overflow, "transversality_sum: orbit overflow");
    z = pow_int(Jet{z}, d).val + p.c;
  }
  return out;
}

double summability(const MapParams& p, double beta, double tol,
                   int max_terms) {
  if (!(beta > 0.0 && beta <= 1.0))
    throw Error(ErrorKind::bad_argument, "summability: beta must be in (0,1]");
  // The beta-sum tail decays like the beta-th power of the main tail, so the
  // driving sum must run until mag^beta is below tol.
  const double tol_main = std::max(0.5 * std::pow(tol, 1.0 / beta), 1e-100);
  const auto sum = transversality_sum(p, tol_main, max_terms, {beta});
  return sum.beta_sums.at(beta);
}

IdentityReport verify_derivative_identity(const MapParams& p, double tol) {
  IdentityReport rep;
  const Jet num = param_bottcher(p.degree, p.c, tol);
  const Jet den = bottcher_jet(p, p.c, Var::z, tol);
  rep.lhs = num.der / den.der;
  rep.rhs = transversality_sum(p, tol).value;
  rep.rel_err = std::abs(rep.lhs - rep.rhs) / std::abs(rep.rhs);
  return rep;
}

std::vector<RayLimitRow> ray_limit_transversality(
    int degree, AngleRational angle, const std::vector<double>& potentials,
    double tol) {
  if (potentials.empty())
    throw Error(ErrorKind::bad_argument, "ray_limit: empty potential list");
  std::vector<double> pots = potentials;
  std::sort(pots.begin(), pots.end(), std::greater<>());

  std::vector<RayLimitRow> rows;
  rows.reserve(pots.size());

  RayOptions opt;
  opt.extra_potentials = pots;
  RayPolyline ray;
  std::string stall_note;
  try {
    ray = trace_parameter_ray(degree, angle,
                              param_ray_t_start(degree, pots.front() * 1.0001),
                              pots.back(), 8, opt);
  } catch (const NewtonStallError& e) {
    ray = e.partial;
    stall_note = "ray stalled at t=" + std::to_string(e.last_good_t);
  }

  for (double t : pots) {
    RayLimitRow row;
    row.t = t;
    // Locate the traced sample for this potential (the tracer was told to
    // hit it exactly).
    const RaySample* hit = nullptr;
    for (const auto& s : ray.samples)
      if (std::abs(s.t - t) <= 2e-12 * t) { hit = &s; break; }
    if (!hit) {
      row.note = stall_note.empty() ? "potential not reached" : stall_note;
      rows.push_back(row);
      continue;
    }
    row.c = hit->z;
    try {
      const auto sum = transversality_sum(MapParams(degree, hit->z), tol);
      row.T = sum.value;
      row.n_terms = sum.n_terms;
      row.tail_bound = sum.tail_bound;
      row.decay_ratio = sum.decay_ratio;
      row.ok = true;
    } catch (const NonConvergentError& e) {
      row.T = e.partial.value;
      row.n_terms = e.partial.n_terms;
      row.tail_bound = e.partial.tail_bound;
      row.decay_ratio = e.partial.decay_ratio;
      row.note = std::string("NonConvergent: ") + e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

} // namespace unicrit
