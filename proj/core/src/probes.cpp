#include "unicrit/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unicrit/parallel.hpp"
#include "unicrit/potential.hpp"
#include "unicrit/rng.hpp"

namespace unicrit {

Raster membership_grid(Plane plane, int degree, Cplx c, RegionRect region,
                       int nx, int ny, int maxit, double bailout,
                       int threads) {
  if (nx < 2 || ny < 2)
    throw Error(ErrorKind::bad_argument, "membership_grid: nx, ny >= 2");
  Raster r;
  r.plane = plane;
  r.degree = degree;
  r.c = c;
  r.bounds = region;
  r.nx = nx;
  r.ny = ny;
  r.maxit = maxit;
  r.cells.assign(static_cast<std::size_t>(nx) * ny, CellClass::undecided);
  r.escape_n.assign(static_cast<std::size_t>(nx) * ny, -1);

  parallel_for(static_cast<long>(nx) * ny, threads, [&](long idx) {
    const int ix = static_cast<int>(idx % nx);
    const int iy = static_cast<int>(idx / nx);
    const Cplx w = r.cell_center(ix, iy);
    const MapParams p(degree, plane == Plane::parameter ? w : c);
    const double bail = bailout > 0.0 ? bailout : default_bailout(p);
    const Cplx z0 = plane == Plane::parameter ? Cplx{0.0, 0.0} : w;
    const EscapeResult e = escape_classify(p, z0, maxit, bail);
    if (e.escaped()) {
      r.cells[idx] = CellClass::outside;
      r.escape_n[idx] = e.n;
    }
  });
  r.bailout = bailout; // 0 records the per-cell default policy
  return r;
}

std::vector<HarmonicSample> sample_harmonic_measure(int degree, int n,
                                                    std::uint64_t seed,
                                                    double t_min,
                                                    int threads) {
  if (n < 0) throw Error(ErrorKind::bad_argument, "sample count must be >= 0");
  if (t_min < RayOptions{}.t_floor)
    throw Error(ErrorKind::precision_floor,
                "t_min below the configured potential floor");
  std::vector<HarmonicSample> out(n);
  parallel_for(n, threads, [&](long i) {
    // 53-bit dyadic angle: uniform and exactly representable as a rational,
    // so the multiplier map along the ray stays exact.
    const std::uint64_t bits = splitmix64_at(seed, i) >> 11;
    const AngleRational angle(bits, std::uint64_t{1} << 53);
    HarmonicSample& hs = out[i];
    hs.angle = angle.turns();
    try {
      RayPolyline ray = trace_parameter_ray(
          degree, angle, param_ray_t_start(degree), t_min, 8);
      hs.t_min_reached = ray.samples.back().t;
      hs.landing = landing_estimate(ray);
      hs.ok = true;
    } catch (const NewtonStallError& e) {
      hs.t_min_reached =
          e.partial.samples.empty() ? 0.0 : e.partial.samples.back().t;
      hs.note = e.what();
      try {
        hs.landing = landing_estimate(e.partial);
      } catch (const Error&) {
        hs.landing.error_bound = HUGE_VAL;
        if (!e.partial.samples.empty())
          hs.landing.point = e.partial.samples.back().z;
      }
    } catch (const Error& e) {
      hs.note = e.what();
      hs.landing.error_bound = HUGE_VAL;
    }
  });
  return out;
}

double lyapunov(const MapParams& p, long n) {
  if (n <= 0) throw Error(ErrorKind::bad_argument, "lyapunov: n must be > 0");
  const int d = p.degree;
  const double log_d = std::log(static_cast<double>(d));
  // Value-space orbit until the safe range ends, then log-space recursion
  // log|z_{k+1}| = d log|z_k| + log|1 + c/z_k^d| with the correction dropped
  // once it is below machine resolution.
  double acc = 0.0;
  Cplx z = p.c;
  long k = 0;
  for (; k < n; ++k) {
    const double az = std::abs(z);
    if (az < 1e-300)
      throw Error(ErrorKind::zero_derivative,
                  "orbit passed within 1e-300 of the critical point");
    acc += log_d + (d - 1) * std::log(az);
    if (az > 1e100) break;
    z = pow_int(Jet{z}, d).val + p.c;
  }
  if (k < n) {
    double lz = std::log(std::abs(z));
    for (++k; k < n; ++k) {
      lz = d * lz; // correction |c|/|z|^d is far below 1 ulp out here
      acc += log_d + (d - 1) * lz;
    }
  }
  return acc / static_cast<double>(n);
}

AreaScan area_scaling_scan(int degree, Cplx c0,
                           const std::vector<double>& radii,
                           int resolution_per_radius, int maxit,
                           int threads) {
  if (radii.size() < 3)
    throw Error(ErrorKind::bad_argument, "need at least 3 radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1]))
      throw Error(ErrorKind::bad_argument, "radii must be decreasing");
  if (resolution_per_radius / 2 < 32)
    throw Error(ErrorKind::resolution_insufficient,
                "each radius must span at least 32 cells");

  AreaScan scan;
  for (double r : radii) {
    const int res = resolution_per_radius;
    const Raster grid =
        membership_grid(Plane::parameter, degree, Cplx{0, 0},
                        RegionRect{c0, r, r}, res, res, maxit, 0.0, threads);
    const double cell_area = grid.cell_w() * grid.cell_h();
    double lo = 0.0, hi = 0.0;
    for (int iy = 0; iy < res; ++iy)
      for (int ix = 0; ix < res; ++ix) {
        if (std::abs(grid.cell_center(ix, iy) - c0) > r) continue;
        const CellClass cc = grid.at(ix, iy);
        if (cc == CellClass::inside) {
          lo += cell_area;
          hi += cell_area;
        } else if (cc == CellClass::undecided) {
          hi += cell_area;
        }
      }
    scan.rows.push_back({r, lo, hi, hi / (r * r)});
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& row : scan.rows) {
    if (row.density_hi <= 0.0) continue;
    const double x = std::log(row.r), y = std::log(row.density_hi);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  scan.slope = m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx)
                      : std::numeric_limits<double>::quiet_NaN();
  return scan;
}

std::vector<double> exact_edt(int nx, int ny,
                              const std::vector<std::uint8_t>& site) {
  // Felzenszwalb-Huttenlocher on squared distances, columns then rows. A
  // finite sentinel above any reachable squared distance stands in for
  // "no site"; the parabolic envelope stays exact for reachable cells.
  const double big = 4.0 * (static_cast<double>(nx) * nx +
                            static_cast<double>(ny) * ny) +
                     16.0;
  const double kInf = std::numeric_limits<double>::infinity();

  auto dt1d = [](const std::vector<double>& f, std::vector<double>& out,
                 double inf_hint) {
    const int n = static_cast<int>(f.size());
    std::vector<int> v(n);
    std::vector<double> zb(n + 1);
    int k = 0;
    v[0] = 0;
    zb[0] = -inf_hint;
    zb[1] = inf_hint;
    for (int q = 1; q < n; ++q) {
      double s = 0.0;
      while (true) {
        const int p = v[k];
        s = ((f[q] + static_cast<double>(q) * q) -
             (f[p] + static_cast<double>(p) * p)) /
            (2.0 * q - 2.0 * p);
        if (s <= zb[k] && k > 0) {
          --k;
        } else {
          break;
        }
      }
      ++k;
      v[k] = q;
      zb[k] = s;
      zb[k + 1] = inf_hint;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
      while (zb[k + 1] < q) ++k;
      const int p = v[k];
      out[q] = (static_cast<double>(q) - p) * (q - p) + f[p];
    }
  };

  std::vector<double> g(static_cast<std::size_t>(nx) * ny);
  {
    std::vector<double> f(ny), o(ny);
    for (int x = 0; x < nx; ++x) {
      for (int y = 0; y < ny; ++y)
        f[y] = site[y * (std::size_t)nx + x] ? 0.0 : big;
      dt1d(f, o, 1e300);
      for (int y = 0; y < ny; ++y) g[y * (std::size_t)nx + x] = o[y];
    }
  }
  {
    std::vector<double> f(nx), o(nx);
    for (int y = 0; y < ny; ++y) {
      for (int x = 0; x < nx; ++x) f[x] = g[y * (std::size_t)nx + x];
      dt1d(f, o, 1e300);
      for (int x = 0; x < nx; ++x) {
        const double d2 = o[x];
        g[y * (std::size_t)nx + x] = d2 >= big ? kInf : std::sqrt(d2);
      }
    }
  }
  return g;
}

std::vector<PorosityRow> porosity_scan(const Raster& raster, Cplx center,
                                       const std::vector<double>& scales) {
  const int nx = raster.nx, ny = raster.ny;
  const double cw = raster.cell_w(), ch = raster.cell_h();
  const double cell = std::max(cw, ch);

  std::vector<std::uint8_t> in_set(raster.cells.size());
  for (std::size_t i = 0; i < raster.cells.size(); ++i)
    in_set[i] = raster.cells[i] != CellClass::outside;
  const std::vector<double> dist = exact_edt(nx, ny, in_set);

  std::vector<PorosityRow> rows;
  for (double r : scales) {
    if (r / cell < 32.0)
      throw Error(ErrorKind::resolution_insufficient,
                  "scale spans fewer than 32 cells");
    // Largest empty disk D(z, beta*r) with z in D(center, r) and the disk
    // kept inside the window, scanned in fixed row-major order so ties
    // resolve to the smallest cell index.
    double best = 0.0;
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        const Cplx zc = raster.cell_center(ix, iy);
        const double dc = std::abs(zc - center);
        if (dc > r) continue;
        const double d_here = dist[iy * (std::size_t)nx + ix] * cell;
        const double beta_here = std::min(d_here, r - dc) / r;
        if (beta_here > best) best = beta_here;
      }
    rows.push_back({r, std::min(best, 1.0)});
  }
  return rows;
}

namespace {

double iterated_log(double x, int m) {
  for (int i = 0; i < m; ++i) {
    if (!(x > 0.0))
      throw Error(ErrorKind::log_domain, "iterated log undefined");
    x = std::log(x);
  }
  return x;
}

} // namespace

std::vector<IlaRow> iterated_log_access(int degree, AngleRational angle,
                                        const std::vector<double>& potentials,
                                        int m) {
  if (m < 1) throw Error(ErrorKind::bad_argument, "m must be >= 1");
  if (potentials.empty())
    throw Error(ErrorKind::bad_argument, "empty potential list");
  std::vector<double> pots = potentials;
  std::sort(pots.begin(), pots.end(), std::greater<>());

  // Trace two halvings beyond the deepest requested row so every tail is a
  // real polyline.
  RayOptions opt;
  opt.extra_potentials = pots;
  const double t_trace_min = pots.back() * 0.25;
  const RayPolyline ray = trace_parameter_ray(
      degree, angle, param_ray_t_start(degree, pots.front() * 1.0001),
      t_trace_min, 8, opt);

  std::vector<IlaRow> rows;
  for (double t : pots) {
    std::size_t idx = 0;
    double best = HUGE_VAL;
    for (std::size_t i = 0; i < ray.samples.size(); ++i) {
      const double d = std::fabs(ray.samples[i].t - t);
      if (d < best) {
        best = d;
        idx = i;
      }
    }
    IlaRow row;
    row.t = ray.samples[idx].t;

    const Jet lphi = log_param_bottcher(degree, ray.samples[idx].z);
    const double g = lphi.val.real();
    const double B = std::exp(g);
    const double D = std::abs(lphi.der) * B; // |Phi'| from the log-jet
    row.dist_lo = B * g / (4.0 * D);
    row.dist_hi = B * g / D;

    double diam = 0.0;
    for (std::size_t i = idx; i < ray.samples.size(); ++i)
      for (std::size_t j = i + 1; j < ray.samples.size(); ++j)
        diam = std::max(diam,
                        std::abs(ray.samples[i].z - ray.samples[j].z));
    row.diam_tail = diam;
    row.arclen_tail = ray.arc_prefix.back() - ray.arc_prefix[idx];
    if (diam >= 1.0)
      throw Error(ErrorKind::log_domain,
                  "diam_tail >= 1: iterated log undefined; start deeper");
    row.functional = row.dist_lo / diam * iterated_log(1.0 / diam, m);
    rows.push_back(row);
  }
  return rows;
}

namespace {

// 8-connected component labelling of the in-set.
std::vector<std::int32_t> label_components(const Raster& r, int* n_labels) {
  const int nx = r.nx, ny = r.ny;
  std::vector<std::int32_t> label(r.cells.size(), -1);
  std::int32_t next = 0;
  std::vector<std::pair<int, int>> stack;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t idx = iy * (std::size_t)nx + ix;
      if (!r.in_set(ix, iy) || label[idx] >= 0) continue;
      stack.push_back({ix, iy});
      label[idx] = next;
      while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int x2 = x + dx, y2 = y + dy;
            if (x2 < 0 || y2 < 0 || x2 >= nx || y2 >= ny) continue;
            const std::size_t i2 = y2 * (std::size_t)nx + x2;
            if (!r.in_set(x2, y2) || label[i2] >= 0) continue;
            label[i2] = next;
            stack.push_back({x2, y2});
          }
      }
      ++next;
    }
  *n_labels = next;
  return label;
}

} // namespace

HedgehogReport hedgehog_detect(const Raster& raster, Cplx center, double r_in,
                               double r_out, double m_req, double eps_req) {
  if (!(r_out > r_in && r_in > 0.0))
    throw Error(ErrorKind::bad_argument, "require r_out > r_in > 0");
  const double cell = std::max(raster.cell_w(), raster.cell_h());
  if ((r_out - r_in) / cell < 16.0)
    throw Error(ErrorKind::resolution_insufficient,
                "annulus thinner than 16 cells");
  // D(center, r_out) within bounds.
  if (std::abs(center.real() - raster.bounds.center.real()) + r_out >
          raster.bounds.half_re ||
      std::abs(center.imag() - raster.bounds.center.imag()) + r_out >
          raster.bounds.half_im)
    throw Error(ErrorKind::bad_argument, "annulus leaves the raster bounds");

  HedgehogReport rep;
  rep.center = center;
  rep.r_in = r_in;
  rep.r_out = r_out;
  rep.modulus = std::log(r_out / r_in) / (2.0 * M_PI);

  const int nx = raster.nx, ny = raster.ny;
  int n_labels = 0;
  const auto label = label_components(raster, &n_labels);

  std::vector<std::uint8_t> meets_annulus(n_labels, 0), meets_inner(n_labels, 0),
      meets_outer(n_labels, 0);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const std::int32_t lb = label[iy * (std::size_t)nx + ix];
      if (lb < 0) continue;
      const double d = std::abs(raster.cell_center(ix, iy) - center);
      if (d >= r_in && d <= r_out) meets_annulus[lb] = 1;
      if (d <= r_in) meets_inner[lb] = 1;
      if (d >= r_out) meets_outer[lb] = 1;
    }
  std::vector<std::uint8_t> crossing(n_labels, 0);
  for (int l = 0; l < n_labels; ++l) {
    if (meets_annulus[l]) ++rep.components;
    if (meets_annulus[l] && meets_inner[l] && meets_outer[l]) {
      crossing[l] = 1;
      ++rep.crossing_components;
    }
  }

  if (rep.crossing_components > 0) {
    std::vector<std::uint8_t> sites(raster.cells.size(), 0);
    for (std::size_t i = 0; i < raster.cells.size(); ++i)
      sites[i] = label[i] >= 0 && crossing[label[i]];
    const auto dist = exact_edt(nx, ny, sites);
    double worst = 0.0;
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        const double d = std::abs(raster.cell_center(ix, iy) - center);
        if (d < r_in || d > r_out) continue;
        worst = std::max(worst, dist[iy * (std::size_t)nx + ix] * cell);
      }
    rep.eps_star = worst / (2.0 * r_out);
  } else {
    rep.eps_star = std::numeric_limits<double>::infinity();
  }

  // Center condition: the center cell belongs to the set; an Undecided
  // region through the center must stay inside the outer circle.
  bool center_ok = false;
  {
    const int ix = std::clamp(
        static_cast<int>((center.real() - raster.bounds.center.real() +
                          raster.bounds.half_re) /
                         raster.cell_w()),
        0, nx - 1);
    const int iy = std::clamp(
        static_cast<int>((center.imag() - raster.bounds.center.imag() +
                          raster.bounds.half_im) /
                         raster.cell_h()),
        0, ny - 1);
    const CellClass cc = raster.at(ix, iy);
    if (cc == CellClass::inside) {
      center_ok = true;
    } else if (cc == CellClass::undecided) {
      const std::int32_t lb = label[iy * (std::size_t)nx + ix];
      center_ok = true;
      for (int y = 0; y < ny && center_ok; ++y)
        for (int x = 0; x < nx; ++x)
          if (label[y * (std::size_t)nx + x] == lb &&
              std::abs(raster.cell_center(x, y) - center) >= r_out) {
            center_ok = false;
            break;
          }
    }
  }

  rep.verdict = rep.modulus >= m_req && rep.eps_star <= eps_req && center_ok;
  return rep;
}

Raster make_spike_annulus_raster(int n_spikes, int res, double r_in,
                                 double r_out) {
  Raster r;
  r.plane = Plane::parameter;
  r.degree = 2;
  r.bounds = RegionRect{Cplx{0, 0}, 1.0, 1.0};
  r.nx = res;
  r.ny = res;
  r.cells.assign(static_cast<std::size_t>(res) * res, CellClass::outside);
  r.escape_n.assign(r.cells.size(), -1);

  const double cell = r.cell_w();
  const double half_width = 0.75 * cell;
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      const Cplx z = r.cell_center(ix, iy);
      const double rho = std::abs(z);
      if (rho < 0.8 * r_in || rho > std::min(1.05 * r_out, 0.999)) continue;
      // Distance from the cell center to the nearest spike ray.
      const double ang = wrap_unit(std::arg(z) / (2.0 * M_PI));
      const double frac = ang * n_spikes;
      const double off = std::fabs(frac - std::round(frac)) / n_spikes;
      const double arc_dist = off * 2.0 * M_PI * rho;
      if (arc_dist <= half_width)
        r.cells[iy * (std::size_t)res + ix] = CellClass::inside;
    }
  // Seed the center.
  r.cells[(res / 2) * (std::size_t)res + res / 2] = CellClass::inside;
  return r;
}

Raster make_empty_annulus_raster(int res, double r_in, double r_out) {
  Raster r = make_spike_annulus_raster(1, res, r_in, r_out);
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      const double rho = std::abs(r.cell_center(ix, iy));
      if (rho >= 0.8 * r_in)
        r.cells[iy * (std::size_t)res + ix] = CellClass::outside;
    }
  r.cells[(res / 2) * (std::size_t)res + res / 2] = CellClass::inside;
  return r;
}

Raster rotate90(const Raster& src) {
  Raster r = src;
  r.nx = src.ny;
  r.ny = src.nx;
  r.bounds.half_re = src.bounds.half_im;
  r.bounds.half_im = src.bounds.half_re;
  r.cells.assign(src.cells.size(), CellClass::outside);
  r.escape_n.assign(src.cells.size(), -1);
  for (int iy = 0; iy < src.ny; ++iy)
    for (int ix = 0; ix < src.nx; ++ix) {
      // (x, y) -> (-y, x): new ix = src.ny - 1 - iy, new iy = ix.
      const int nix = src.ny - 1 - iy;
      const int niy = ix;
      r.cells[niy * (std::size_t)r.nx + nix] =
          src.cells[iy * (std::size_t)src.nx + ix];
      r.escape_n[niy * (std::size_t)r.nx + nix] =
          src.escape_n[iy * (std::size_t)src.nx + ix];
    }
  return r;
}

} // namespace unicrit
