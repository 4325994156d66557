// unicrit: command-line toolkit for the dynamics of z^d + c.

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "cache.hpp"
#include "manifest.hpp"
#include "unicrit/io.hpp"
#include "unicrit/potential.hpp"
#include "unicrit/probes.hpp"
#include "unicrit/rays.hpp"
#include "unicrit/transversality.hpp"
#include "unicrit/version.hpp"

using namespace unicrit;
using nlohmann::ordered_json;

namespace {

// Exit codes (also listed in the README): 0 ok, 1 flag/argument errors,
// 2 NotEscaping, 3 BranchAmbiguity, 4 NewtonStall, 5 ResolutionInsufficient,
// 6 NonConvergent/NoConvergence, 7 verify mismatch, 8 other numeric errors.
int exit_code_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::bad_argument: return 1;
    case ErrorKind::not_escaping: return 2;
    case ErrorKind::branch_ambiguity: return 3;
    case ErrorKind::newton_stall: return 4;
    case ErrorKind::resolution_insufficient: return 5;
    case ErrorKind::non_convergent:
    case ErrorKind::no_convergence: return 6;
    default: return 8;
  }
}

Cplx parse_complex(std::string text) {
  if (!text.empty() && text.front() == '(' && text.back() == ')')
    text = text.substr(1, text.size() - 2);
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)),
            std::stod(text.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::bad_argument, "cannot parse complex '" + text + "'");
  }
}

// Potential literals: "2^-k" or a plain decimal.
double parse_potential(const std::string& text) {
  try {
    if (text.rfind("2^", 0) == 0) return std::exp2(std::stod(text.substr(2)));
    return std::stod(text);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::bad_argument,
                "cannot parse potential '" + text + "'");
  }
}

// "2^-a..2^-b" expands to the halving schedule 2^-a, 2^-(a+1), ..., 2^-b;
// otherwise a comma-separated list of potential literals.
std::vector<double> parse_potentials(const std::string& text) {
  std::vector<double> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const double hi = parse_potential(text.substr(0, dots));
    const double lo = parse_potential(text.substr(dots + 2));
    if (!(hi > lo && lo > 0.0))
      throw Error(ErrorKind::bad_argument, "range must run high..low");
    for (double t = hi; t > lo * (1.0 + 1e-12); t *= 0.5) out.push_back(t);
    out.push_back(lo);
    return out;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(parse_potential(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (out.empty()) throw Error(ErrorKind::bad_argument, "empty potential list");
  return out;
}

ordered_json cjson(Cplx z) { return ordered_json::array({z.real(), z.imag()}); }

void print_json(const ordered_json& j) {
  std::fputs((j.dump(2) + "\n").c_str(), stdout);
}

std::string csv_of_rows(const std::string& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::string out = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

struct CommonArgs {
  int degree = 2;
  std::string c_text = "0";
  double tol = 1e-12;
  int maxit = 100000;
  Cplx c() const { return parse_complex(c_text); }
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_c = true,
                bool with_tol = true, bool with_maxit = true) {
  cmd->add_option("--d", args.degree, "degree of z^d + c (>= 2)");
  if (with_c) cmd->add_option("--c", args.c_text, "parameter c as re[,im]");
  if (with_tol) cmd->add_option("--tol", args.tol, "series tolerance");
  if (with_maxit) cmd->add_option("--maxit", args.maxit, "escape iteration cap");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"unicrit: potentials, external rays, transversality and "
               "geometry probes for z^d + c"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // --- scalar commands -----------------------------------------------------
  CommonArgs ga;
  std::string ga_z = "4", ga_manifest;
  auto* green_cmd = app.add_subcommand("green", "escape-rate potential G_c(z)");
  add_common(green_cmd, ga);
  green_cmd->add_option("--z", ga_z, "evaluation point");
  green_cmd->add_option("--manifest", ga_manifest, "write a manifest here");

  CommonArgs ba;
  std::string ba_z = "4", ba_var = "z", ba_manifest;
  bool ba_jet = false;
  auto* bot_cmd =
      app.add_subcommand("bottcher", "conformal coordinate phi_c(z)");
  add_common(bot_cmd, ba);
  bot_cmd->add_option("--z", ba_z, "evaluation point");
  bot_cmd->add_flag("--jet", ba_jet, "include the derivative");
  bot_cmd->add_option("--var", ba_var, "jet variable: z or c");
  bot_cmd->add_option("--manifest", ba_manifest, "write a manifest here");

  CommonArgs aa;
  std::string aa_z = "4", aa_manifest;
  auto* ang_cmd =
      app.add_subcommand("angle", "potential and external angle of z");
  add_common(ang_cmd, aa);
  ang_cmd->add_option("--z", aa_z, "evaluation point");
  ang_cmd->add_option("--manifest", aa_manifest, "write a manifest here");

  // --- ray -------------------------------------------------------------
  CommonArgs ra;
  std::string ra_plane = "param", ra_angle = "0/1", ra_out = "ray.csv";
  std::string ra_manifest;
  std::string ra_tstart = "0", ra_tmin = "2^-12", ra_floor = "2^-40";
  double ra_raytol = 1e-12;
  int ra_steps = 8;
  bool ra_nocache = false;
  auto* ray_cmd = app.add_subcommand("ray", "trace an external ray");
  add_common(ray_cmd, ra);
  ray_cmd->add_option("--plane", ra_plane, "param or dyn");
  ray_cmd->add_option("--angle", ra_angle, "external angle p/q");
  ray_cmd->add_option("--tstart", ra_tstart,
                      "starting potential, 2^-k accepted (0 = auto)");
  ray_cmd->add_option("--tmin", ra_tmin, "deepest potential, 2^-k accepted");
  ray_cmd->add_option("--steps", ra_steps, "samples per potential halving");
  ray_cmd->add_option("--raytol", ra_raytol, "ray targeting tolerance");
  ray_cmd->add_option("--floor", ra_floor, "potential floor");
  ray_cmd->add_option("--out", ra_out, "polyline CSV path");
  ray_cmd->add_option("--manifest", ra_manifest, "manifest path");
  ray_cmd->add_flag("--no-cache", ra_nocache, "bypass the ray cache");

  // --- transversality --------------------------------------------------
  CommonArgs ta;
  int ta_max_terms = 20000;
  std::string ta_betas;
  auto* trans_cmd =
      app.add_subcommand("transversality", "series sum T(c) with diagnostics");
  add_common(trans_cmd, ta);
  trans_cmd->add_option("--max-terms", ta_max_terms, "term cap");
  trans_cmd->add_option("--beta", ta_betas,
                        "comma list of summability exponents");

  CommonArgs va;
  double va_vtol = 1e-6;
  auto* verify_cmd = app.add_subcommand(
      "verify",
      "cross-check D_c Phi / D_z phi = T(c); nonzero exit on mismatch");
  add_common(verify_cmd, va, true, false);
  verify_cmd->add_option("--tol", va_vtol, "acceptance threshold on rel_err");

  CommonArgs la;
  std::string la_angle = "1/2", la_pots = "2^-4..2^-30",
              la_out = "raylimit.csv", la_manifest;
  auto* rl_cmd = app.add_subcommand(
      "raylimit", "T along a parameter ray at the given potentials");
  add_common(rl_cmd, la, false);
  rl_cmd->add_option("--angle", la_angle, "external angle p/q");
  rl_cmd->add_option("--pots", la_pots, "potential list or range 2^-a..2^-b");
  rl_cmd->add_option("--out", la_out, "CSV path");
  rl_cmd->add_option("--manifest", la_manifest, "manifest path");

  // --- probes ------------------------------------------------------------
  CommonArgs sa;
  int sa_n = 100, sa_threads = 0;
  std::uint64_t sa_seed = 1;
  std::string sa_tmin = "2^-12";
  std::string sa_out = "samples.csv", sa_manifest;
  auto* sample_cmd = app.add_subcommand(
      "sample", "harmonic-measure sampling via random external rays");
  add_common(sample_cmd, sa, false);
  sample_cmd->add_option("--n", sa_n, "sample count");
  sample_cmd->add_option("--seed", sa_seed, "generator seed");
  sample_cmd->add_option("--tmin", sa_tmin, "ray depth per sample (2^-k accepted)");
  sample_cmd->add_option("--threads", sa_threads, "worker threads (0 = auto)");
  sample_cmd->add_option("--out", sa_out, "CSV path");
  sample_cmd->add_option("--manifest", sa_manifest, "manifest path");

  CommonArgs da;
  std::string da_c0 = "-2", da_radii = "2^-4..2^-9", da_out = "deepscan.csv",
              da_manifest;
  int da_res = 512, da_maxit = 4096, da_threads = 0;
  auto* deep_cmd = app.add_subcommand(
      "deepscan", "area bracket of the locus in shrinking disks");
  add_common(deep_cmd, da, false, true, false);
  deep_cmd->add_option("--c0", da_c0, "disk center");
  deep_cmd->add_option("--radii", da_radii, "radius list or range");
  deep_cmd->add_option("--res", da_res, "cells per radius (grid is res x res)");
  deep_cmd->add_option("--maxit", da_maxit, "escape iteration cap");
  deep_cmd->add_option("--threads", da_threads, "worker threads");
  deep_cmd->add_option("--out", da_out, "CSV path");
  deep_cmd->add_option("--manifest", da_manifest, "manifest path");

  CommonArgs pa;
  std::string pa_plane = "param", pa_center = "0,0", pa_scales = "0.25",
              pa_out = "porosity.csv", pa_manifest;
  double pa_halfwidth = 2.0;
  int pa_res = 1024, pa_maxit = 1024, pa_threads = 0;
  auto* poro_cmd =
      app.add_subcommand("porosity", "largest-empty-disk scan of a raster");
  add_common(poro_cmd, pa, true, true, false);
  poro_cmd->add_option("--plane", pa_plane, "param or dyn");
  poro_cmd->add_option("--center", pa_center, "window center");
  poro_cmd->add_option("--halfwidth", pa_halfwidth, "window half-width");
  poro_cmd->add_option("--res", pa_res, "raster resolution");
  poro_cmd->add_option("--maxit", pa_maxit, "escape iteration cap");
  poro_cmd->add_option("--scales", pa_scales, "scale list");
  poro_cmd->add_option("--threads", pa_threads, "worker threads");
  poro_cmd->add_option("--out", pa_out, "CSV path");
  poro_cmd->add_option("--manifest", pa_manifest, "manifest path");

  CommonArgs ha;
  std::string ha_synthetic, ha_plane = "dyn", ha_center = "0,0", ha_out,
              ha_manifest;
  double ha_halfwidth = 1.0, ha_rin = 0.4, ha_rout = 0.8;
  double ha_m = std::log(2.0) / (2.0 * M_PI), ha_eps = 0.05;
  int ha_res = 512, ha_maxit = 1024, ha_threads = 0;
  auto* hh_cmd =
      app.add_subcommand("hedgehog", "crossing-continua layer detector");
  add_common(hh_cmd, ha, true, true, false);
  hh_cmd->add_option("--synthetic", ha_synthetic,
                     "fixture instead of a rendered raster: spikes:N or empty");
  hh_cmd->add_option("--plane", ha_plane, "param or dyn");
  hh_cmd->add_option("--center", ha_center, "annulus center");
  hh_cmd->add_option("--halfwidth", ha_halfwidth, "raster half-width");
  hh_cmd->add_option("--res", ha_res, "raster resolution");
  hh_cmd->add_option("--maxit", ha_maxit, "escape iteration cap");
  hh_cmd->add_option("--rin", ha_rin, "inner radius");
  hh_cmd->add_option("--rout", ha_rout, "outer radius");
  hh_cmd->add_option("--m", ha_m, "required modulus");
  hh_cmd->add_option("--eps", ha_eps, "required relative net fineness");
  hh_cmd->add_option("--threads", ha_threads, "worker threads");
  hh_cmd->add_option("--out", ha_out, "also write the report JSON here");
  hh_cmd->add_option("--manifest", ha_manifest, "manifest path");

  CommonArgs rea;
  std::string rea_plane = "param", rea_center = "-0.5,0",
              rea_out = "render.pgm", rea_manifest;
  double rea_halfwidth = 1.6;
  int rea_res = 1024, rea_maxit = 512, rea_threads = 0;
  auto* render_cmd =
      app.add_subcommand("render", "escape-time membership raster as PGM");
  add_common(render_cmd, rea, true, true, false);
  render_cmd->add_option("--plane", rea_plane, "param or dyn");
  render_cmd->add_option("--center", rea_center, "window center");
  render_cmd->add_option("--halfwidth", rea_halfwidth, "window half-width");
  render_cmd->add_option("--res", rea_res, "raster resolution");
  render_cmd->add_option("--maxit", rea_maxit, "escape iteration cap");
  render_cmd->add_option("--threads", rea_threads, "worker threads");
  render_cmd->add_option("--out", rea_out, "PGM path");
  render_cmd->add_option("--manifest", rea_manifest, "manifest path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*green_cmd) {
      const double g = green(MapParams(ga.degree, ga.c()), parse_complex(ga_z),
                             ga.tol, ga.maxit);
      ordered_json j{{"d", ga.degree},
                     {"c", cjson(ga.c())},
                     {"z", cjson(parse_complex(ga_z))},
                     {"tol", ga.tol},
                     {"t", g}};
      print_json(j);
      if (!ga_manifest.empty()) {
        cli::RunManifest man(argc, argv, "green");
        man.set_config(j);
        man.write(ga_manifest);
      }
      return 0;
    }

    if (*bot_cmd) {
      const MapParams p(ba.degree, ba.c());
      const Cplx z = parse_complex(ba_z);
      ordered_json j{{"d", ba.degree},
                     {"c", cjson(p.c)},
                     {"z", cjson(z)},
                     {"tol", ba.tol}};
      if (ba_jet) {
        const Var var = ba_var == "c" ? Var::c : Var::z;
        const Jet phi = bottcher_jet(p, z, var, ba.tol, ba.maxit);
        j["phi"] = cjson(phi.val);
        j[ba_var == "c" ? "dphi_dc" : "dphi_dz"] = cjson(phi.der);
      } else {
        j["phi"] = cjson(bottcher(p, z, ba.tol, ba.maxit));
      }
      print_json(j);
      if (!ba_manifest.empty()) {
        cli::RunManifest man(argc, argv, "bottcher");
        man.set_config(j);
        man.write(ba_manifest);
      }
      return 0;
    }

    if (*ang_cmd) {
      const BottcherCoord bc = external_angle(
          MapParams(aa.degree, aa.c()), parse_complex(aa_z), aa.tol, aa.maxit);
      ordered_json j{{"d", aa.degree},
                     {"c", cjson(aa.c())},
                     {"z", cjson(parse_complex(aa_z))},
                     {"tol", aa.tol},
                     {"t", bc.t},
                     {"theta", bc.theta}};
      print_json(j);
      if (!aa_manifest.empty()) {
        cli::RunManifest man(argc, argv, "angle");
        man.set_config(j);
        man.write(aa_manifest);
      }
      return 0;
    }

    if (*ray_cmd) {
      cli::RunManifest man(argc, argv, "ray");
      const bool param = ra_plane == "param";
      const AngleRational angle = AngleRational::parse(ra_angle);
      const Cplx c = ra.c();
      const MapParams p(ra.degree, c);
      const double tstart_arg = parse_potential(ra_tstart);
      const double t_min = parse_potential(ra_tmin);
      const double t_start = tstart_arg > 0.0 ? tstart_arg
                             : param ? param_ray_t_start(ra.degree)
                                     : dynamical_ray_t_start(p);
      RayOptions opt;
      opt.ray_tol = ra_raytol;
      opt.t_floor = parse_potential(ra_floor);
      opt.maxit = ra.maxit;

      man.set_config(ordered_json{{"plane", ra_plane},
                                  {"d", ra.degree},
                                  {"c", cjson(c)},
                                  {"angle", angle.str()},
                                  {"t_start", t_start},
                                  {"t_min", t_min},
                                  {"steps", ra_steps},
                                  {"ray_tol", ra_raytol},
                                  {"floor", opt.t_floor}});

      const cli::RayCache cache;
      const std::string key =
          cli::RayCache::key_of(param ? Plane::parameter : Plane::dynamical,
                                ra.degree, param ? Cplx{0, 0} : c, angle,
                                t_start, t_min, ra_steps, ra_raytol);
      RayPolyline ray;
      bool stalled = false;
      std::optional<RayPolyline> hit =
          ra_nocache ? std::nullopt : cache.lookup(key);
      if (hit) {
        ray = *hit;
        man.add_note("cache hit");
      } else {
        try {
          ray = param ? trace_parameter_ray(ra.degree, angle, t_start, t_min,
                                            ra_steps, opt)
                      : trace_dynamical_ray(p, angle, t_start, t_min,
                                            ra_steps, opt);
          if (!ra_nocache) cache.store(key, ray);
        } catch (const NewtonStallError& e) {
          ray = e.partial;
          stalled = true;
          man.add_note(std::string("newton_stall: ") + e.what());
        }
      }

      man.emit_output(ra_out, ray_csv(ray));
      ordered_json landing_json{{"stalled", stalled}};
      try {
        const LandingEstimate land = landing_estimate(ray);
        landing_json["point"] = cjson(land.point);
        landing_json["error_bound"] = land.error_bound;
        landing_json["potentials_used"] = land.potentials_used;
      } catch (const Error& e) {
        landing_json["error"] = e.what();
      }
      man.emit_output(ra_out + ".landing.json", landing_json.dump(2) + "\n");
      man.write(ra_manifest.empty() ? ra_out + ".manifest.json" : ra_manifest);
      return stalled ? 4 : 0;
    }

    if (*trans_cmd) {
      std::vector<double> betas;
      if (!ta_betas.empty()) betas = parse_potentials(ta_betas);
      const auto sum = transversality_sum(MapParams(ta.degree, ta.c()), ta.tol,
                                          ta_max_terms, betas);
      ordered_json j{{"d", ta.degree},
                     {"c", cjson(ta.c())},
                     {"value", cjson(sum.value)},
                     {"n_terms", sum.n_terms},
                     {"last_term_mag", sum.last_term_mag},
                     {"tail_bound", sum.tail_bound},
                     {"decay_ratio", sum.decay_ratio}};
      if (!sum.beta_sums.empty()) {
        ordered_json bs;
        for (const auto& [b, s] : sum.beta_sums) bs[format_g17(b)] = s;
        j["beta_sums"] = bs;
      }
      print_json(j);
      return 0;
    }

    if (*verify_cmd) {
      const auto rep = verify_derivative_identity(MapParams(va.degree, va.c()),
                                                  std::min(va.tol, 1e-12));
      print_json(ordered_json{{"d", va.degree},
                              {"c", cjson(va.c())},
                              {"lhs", cjson(rep.lhs)},
                              {"rhs", cjson(rep.rhs)},
                              {"rel_err", rep.rel_err}});
      return rep.rel_err > va_vtol ? 7 : 0;
    }

    if (*rl_cmd) {
      cli::RunManifest man(argc, argv, "raylimit");
      const AngleRational angle = AngleRational::parse(la_angle);
      const auto pots = parse_potentials(la_pots);
      man.set_config(ordered_json{{"d", la.degree},
                                  {"angle", angle.str()},
                                  {"pots", la_pots},
                                  {"tol", la.tol}});
      const auto rows = ray_limit_transversality(la.degree, angle, pots, la.tol);
      std::vector<std::vector<std::string>> csv;
      for (const auto& r : rows)
        csv.push_back({format_g17(r.t), format_g17(r.c.real()),
                       format_g17(r.c.imag()), format_g17(r.T.real()),
                       format_g17(r.T.imag()), std::to_string(r.n_terms),
                       format_g17(r.tail_bound), format_g17(r.decay_ratio),
                       r.ok ? "ok" : r.note});
      man.emit_output(
          la_out,
          csv_of_rows(
              "t,re_c,im_c,re_T,im_T,n_terms,tail_bound,decay_ratio,status",
              csv));
      man.write(la_manifest.empty() ? la_out + ".manifest.json" : la_manifest);
      return 0;
    }

    if (*sample_cmd) {
      cli::RunManifest man(argc, argv, "sample");
      man.set_seed(sa_seed);
      man.set_config(ordered_json{{"d", sa.degree},
                                  {"n", sa_n},
                                  {"seed", sa_seed},
                                  {"t_min", parse_potential(sa_tmin)},
                                  {"threads", sa_threads}});
      const auto samples = sample_harmonic_measure(
          sa.degree, sa_n, sa_seed, parse_potential(sa_tmin), sa_threads);
      std::vector<std::vector<std::string>> csv;
      for (const auto& hs : samples)
        csv.push_back({format_g17(hs.angle),
                       format_g17(hs.landing.point.real()),
                       format_g17(hs.landing.point.imag()),
                       format_g17(hs.landing.error_bound),
                       format_g17(hs.t_min_reached), hs.ok ? "ok" : hs.note});
      man.emit_output(
          sa_out,
          csv_of_rows("angle,re,im,error_bound,t_min_reached,status", csv));
      man.write(sa_manifest.empty() ? sa_out + ".manifest.json" : sa_manifest);
      return 0;
    }

    if (*deep_cmd) {
      cli::RunManifest man(argc, argv, "deepscan");
      const Cplx c0 = parse_complex(da_c0);
      const auto radii = parse_potentials(da_radii);
      man.set_config(ordered_json{{"d", da.degree},
                                  {"c0", cjson(c0)},
                                  {"radii", da_radii},
                                  {"res", da_res},
                                  {"maxit", da_maxit}});
      const auto scan =
          area_scaling_scan(da.degree, c0, radii, da_res, da_maxit, da_threads);
      std::vector<std::vector<std::string>> csv;
      for (const auto& r : scan.rows)
        csv.push_back({format_g17(r.r), format_g17(r.area_lo),
                       format_g17(r.area_hi), format_g17(r.density_hi)});
      man.emit_output(da_out, csv_of_rows("r,area_lo,area_hi,density_hi", csv));
      man.write(da_manifest.empty() ? da_out + ".manifest.json" : da_manifest);
      print_json(ordered_json{{"slope", scan.slope}});
      return 0;
    }

    if (*poro_cmd) {
      cli::RunManifest man(argc, argv, "porosity");
      const Cplx center = parse_complex(pa_center);
      const auto scales = parse_potentials(pa_scales);
      const Raster raster = membership_grid(
          pa_plane == "param" ? Plane::parameter : Plane::dynamical, pa.degree,
          pa.c(), RegionRect{center, pa_halfwidth, pa_halfwidth}, pa_res,
          pa_res, pa_maxit, 0.0, pa_threads);
      man.set_config(ordered_json{{"plane", pa_plane},
                                  {"d", pa.degree},
                                  {"c", cjson(pa.c())},
                                  {"center", cjson(center)},
                                  {"halfwidth", pa_halfwidth},
                                  {"res", pa_res},
                                  {"maxit", pa_maxit},
                                  {"scales", pa_scales}});
      const auto rows = porosity_scan(raster, center, scales);
      std::vector<std::vector<std::string>> csv;
      for (const auto& r : rows)
        csv.push_back({format_g17(r.r), format_g17(r.beta)});
      man.emit_output(pa_out, csv_of_rows("r,beta", csv));
      man.write(pa_manifest.empty() ? pa_out + ".manifest.json" : pa_manifest);
      return 0;
    }

    if (*hh_cmd) {
      cli::RunManifest man(argc, argv, "hedgehog");
      const Cplx center = parse_complex(ha_center);
      Raster raster;
      if (!ha_synthetic.empty()) {
        if (ha_synthetic.rfind("spikes:", 0) == 0) {
          raster = make_spike_annulus_raster(std::stoi(ha_synthetic.substr(7)),
                                             ha_res, ha_rin, ha_rout);
        } else if (ha_synthetic == "empty") {
          raster = make_empty_annulus_raster(ha_res, ha_rin, ha_rout);
        } else {
          throw Error(ErrorKind::bad_argument,
                      "unknown synthetic fixture '" + ha_synthetic + "'");
        }
      } else {
        raster = membership_grid(
            ha_plane == "param" ? Plane::parameter : Plane::dynamical,
            ha.degree, ha.c(), RegionRect{center, ha_halfwidth, ha_halfwidth},
            ha_res, ha_res, ha_maxit, 0.0, ha_threads);
      }
      const auto rep =
          hedgehog_detect(raster, center, ha_rin, ha_rout, ha_m, ha_eps);
      ordered_json j{{"center", cjson(rep.center)},
                     {"r_in", rep.r_in},
                     {"r_out", rep.r_out},
                     {"modulus", rep.modulus},
                     {"components", rep.components},
                     {"crossing_components", rep.crossing_components},
                     {"eps_star", rep.eps_star},
                     {"verdict", rep.verdict}};
      print_json(j);
      man.set_config(ordered_json{{"synthetic", ha_synthetic},
                                  {"res", ha_res},
                                  {"r_in", ha_rin},
                                  {"r_out", ha_rout},
                                  {"m_req", ha_m},
                                  {"eps_req", ha_eps}});
      if (!ha_out.empty()) {
        man.emit_output(ha_out, j.dump(2) + "\n");
        man.write(ha_manifest.empty() ? ha_out + ".manifest.json"
                                      : ha_manifest);
      } else if (!ha_manifest.empty()) {
        man.write(ha_manifest);
      }
      return 0;
    }

    if (*render_cmd) {
      cli::RunManifest man(argc, argv, "render");
      const Cplx center = parse_complex(rea_center);
      const Raster raster = membership_grid(
          rea_plane == "param" ? Plane::parameter : Plane::dynamical,
          rea.degree, rea.c(), RegionRect{center, rea_halfwidth, rea_halfwidth},
          rea_res, rea_res, rea_maxit, 0.0, rea_threads);
      man.set_config(ordered_json{{"plane", rea_plane},
                                  {"d", rea.degree},
                                  {"c", cjson(rea.c())},
                                  {"center", cjson(center)},
                                  {"halfwidth", rea_halfwidth},
                                  {"res", rea_res},
                                  {"maxit", rea_maxit}});
      man.emit_output(rea_out, raster_pgm(raster));
      man.emit_output(rea_out + ".json", raster_sidecar_json(raster));
      man.write(rea_manifest.empty() ? rea_out + ".manifest.json"
                                     : rea_manifest);
      return 0;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "unicrit: %s: %s\n", error_kind_name(e.kind()),
                 e.what());
    return exit_code_of(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unicrit: %s\n", e.what());
    return 8;
  }
  return 0;
}
