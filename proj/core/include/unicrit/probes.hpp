#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unicrit/angles.hpp"
#include "unicrit/dynamics.hpp"
#include "unicrit/rays.hpp"

namespace unicrit {

enum class CellClass : std::uint8_t { inside = 0, undecided = 1, outside = 2 };

struct RegionRect {
  Cplx center{0.0, 0.0};
  double half_re = 1.0;
  double half_im = 1.0;
};

/// Grid classification of a rectangle. Escape-time classification can prove
/// Outside but never Inside, so escape-generated rasters contain only
/// Outside/Undecided; synthetic fixtures may carry Inside cells. The
/// classification is a pure function of (bounds, resolution, params).
struct Raster {
  Plane plane = Plane::parameter;
  int degree = 2;
  Cplx c{0.0, 0.0}; // map parameter (dynamical rasters)
  RegionRect bounds;
  int nx = 0, ny = 0;
  int maxit = 0;
  double bailout = 0.0;
  std::vector<CellClass> cells;       // row-major, iy * nx + ix
  std::vector<std::int32_t> escape_n; // escape index, -1 if not escaped

  double cell_w() const { return 2.0 * bounds.half_re / nx; }
  double cell_h() const { return 2.0 * bounds.half_im / ny; }
  Cplx cell_center(int ix, int iy) const {
    return {bounds.center.real() - bounds.half_re + (ix + 0.5) * cell_w(),
            bounds.center.imag() - bounds.half_im + (iy + 0.5) * cell_h()};
  }
  CellClass at(int ix, int iy) const { return cells[iy * (std::size_t)nx + ix]; }
  bool in_set(int ix, int iy) const { return at(ix, iy) != CellClass::outside; }
};

/// Classifies each cell center by escape: parameter plane follows the
/// critical orbit of f_c with c the cell, dynamical plane follows the cell
/// point under the fixed map. bailout <= 0 selects the default. Cells are
/// written to disjoint slots, so any thread count gives identical rasters.
Raster membership_grid(Plane plane, int degree, Cplx c, RegionRect region,
                       int nx, int ny, int maxit, double bailout = 0.0,
                       int threads = 0);

struct HarmonicSample {
  double angle = 0.0; // turns, drawn uniformly
  LandingEstimate landing;
  double t_min_reached = 0.0;
  bool ok = false;
  std::string note;
};

/// n uniform external angles from the counter-based generator (53-bit
/// dyadics, so the multiplier map on them is exact), each traced down the
/// parameter ray to t_min with a landing estimate. Per-sample failures are
/// recorded, not fatal. Reproducible: the angle list is a pure function of
/// the seed.
std::vector<HarmonicSample> sample_harmonic_measure(int degree, int n,
                                                    std::uint64_t seed,
                                                    double t_min,
                                                    int threads = 0);

/// (1/n) sum log|d z_k^(d-1)| along the critical value orbit, i.e.
/// (1/n) log|D f^n(c)|. Once the orbit escapes the safe range the recursion
/// continues on log-magnitudes, so no intermediate overflows; escaping
/// parameters diverge to +inf honestly. Throws zero_derivative if the orbit
/// passes within 1e-300 of 0.
double lyapunov(const MapParams& p, long n);

struct AreaScanRow {
  double r = 0.0;
  double area_lo = 0.0;   // Undecided counted as Outside
  double area_hi = 0.0;   // Undecided counted as Inside
  double density_hi = 0.0; // area_hi / r^2
};

struct AreaScan {
  std::vector<AreaScanRow> rows;
  double slope = 0.0; // log-log fit of density_hi against r (valid rows only)
};

/// Two-sided area bracket of the connectedness locus in disks D(c0, r).
/// Throws resolution_insufficient when a radius spans fewer than 32 cells.
AreaScan area_scaling_scan(int degree, Cplx c0,
                           const std::vector<double>& radii,
                           int resolution_per_radius, int maxit,
                           int threads = 0);

struct PorosityRow {
  double r = 0.0;
  double beta = 0.0;
};

/// Largest in-complement disk (relative radius) inside D(center, r), per
/// scale, via an exact Euclidean distance transform of the in-set. Ties are
/// resolved toward the smallest cell index by the fixed scan order.
std::vector<PorosityRow> porosity_scan(const Raster& raster, Cplx center,
                                       const std::vector<double>& scales);

struct IlaRow {
  double t = 0.0;
  double dist_lo = 0.0;    // two-sided distance bracket, upper/lower <= 4
  double dist_hi = 0.0;
  double diam_tail = 0.0;  // diameter of the traced tail polyline
  double arclen_tail = 0.0;
  double functional = 0.0; // (dist_lo / diam_tail) * log^[m](1 / diam_tail)
};

/// Accessibility functional along a parameter ray: the distance bracket
/// comes from |Phi|, |Phi'| via the quarter-theorem bounds, the tail is
/// measured both as diameter and arc length. Throws log_domain when the
/// iterated log is undefined for some row (start deeper).
std::vector<IlaRow> iterated_log_access(int degree, AngleRational angle,
                                        const std::vector<double>& potentials,
                                        int m);

struct HedgehogReport {
  Cplx center{0.0, 0.0};
  double r_in = 0.0, r_out = 0.0;
  double modulus = 0.0; // log(r_out/r_in) / 2 pi
  int components = 0;           // in-set components meeting the annulus
  int crossing_components = 0;  // also touching both boundary circles
  double eps_star = 0.0; // max over annulus cells of (distance to nearest
                         // crossing component) / (2 r_out)
  bool verdict = false;
};

/// Detects a layer of disjoint in-set continua crossing the round annulus
/// {r_in <= |z - center| <= r_out} and forming a relative net of it.
/// In-set components use 8-connectivity. Throws resolution_insufficient when
/// the annulus is thinner than 16 cells.
HedgehogReport hedgehog_detect(const Raster& raster, Cplx center, double r_in,
                               double r_out, double m_req, double eps_req);

/// Exact Euclidean distance transform (two-pass parabolic envelope): for
/// every cell, the distance in cell units to the nearest site. Non-sites
/// with no site anywhere get +inf.
std::vector<double> exact_edt(int nx, int ny,
                              const std::vector<std::uint8_t>& site);

/// Synthetic fixtures for the detector tests: n radial spikes crossing the
/// annulus (plus an Inside seed at the center), and the same geometry with
/// an empty annulus.
Raster make_spike_annulus_raster(int n_spikes, int res, double r_in,
                                 double r_out);
Raster make_empty_annulus_raster(int res, double r_in, double r_out);

/// 90-degree rotation of the raster (exact on the grid).
Raster rotate90(const Raster& r);

} // namespace unicrit
