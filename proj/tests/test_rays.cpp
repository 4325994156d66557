#include <doctest.h>

#include <functional>

#include "support/oracles.hpp"
#include "unicrit/potential.hpp"
#include "unicrit/rays.hpp"
#include "unicrit/rng.hpp"

using namespace unicrit;

TEST_CASE("dynamical ray: radial at c = 0") {
  const MapParams p(2, {0, 0});
  const RayPolyline ray =
      trace_dynamical_ray(p, AngleRational(1, 4), 4.0, 0x1p-10, 8);
  REQUIRE(ray.samples.size() > 8);
  for (const auto& s : ray.samples) {
    // phi is the identity: the ray is {e^t * i}.
    const Cplx want = std::exp(s.t) * Cplx{0, 1};
    CHECK(std::abs(s.z - want) < 1e-11 * std::max(1.0, std::abs(want)));
  }
  // Potentials strictly decreasing; arc_prefix nondecreasing.
  for (std::size_t i = 1; i < ray.samples.size(); ++i) {
    CHECK(ray.samples[i].t < ray.samples[i - 1].t);
    CHECK(ray.arc_prefix[i] >= ray.arc_prefix[i - 1]);
  }
}

TEST_CASE("dynamical ray: Chebyshev real segments at c = -2") {
  const MapParams p(2, {-2, 0});
  const RayPolyline half =
      trace_dynamical_ray(p, AngleRational(1, 2), 8.0, 0x1p-12, 8);
  for (const auto& s : half.samples) {
    CHECK(std::abs(s.z.imag()) < 2e-15 * (1.0 + std::abs(s.z)));
    CHECK(s.z.real() < -2.0);
    CHECK(std::abs(s.z.real() - oracles::chebyshev_point(s.t, true)) <
          1e-10 * std::max(1.0, std::abs(s.z)));
  }
  const RayPolyline zero =
      trace_dynamical_ray(p, AngleRational(0, 1), 8.0, 0x1p-12, 8);
  for (const auto& s : zero.samples) {
    CHECK(std::abs(s.z.imag()) < 2e-15 * (1.0 + std::abs(s.z)));
    CHECK(s.z.real() > 2.0);
    CHECK(std::abs(s.z.real() - oracles::chebyshev_point(s.t, false)) <
          1e-10 * std::max(1.0, std::abs(s.z)));
  }
}

TEST_CASE("parameter ray: samples satisfy the defining relation") {
  // c on the ray of angle theta at potential t iff the dynamical data of f_c
  // at z = c reproduce (t, theta).
  const RayPolyline ray =
      trace_parameter_ray(2, AngleRational(1, 3), 4.0, 0x1p-12, 8);
  int checked = 0;
  for (const auto& s : ray.samples) {
    if (s.t > 0x1p-12 * 0.99 && s.t < 0.26) {
      const MapParams p(2, s.z);
      CHECK(std::abs(green(p, s.z) - s.t) < 1e-9);
      const BottcherCoord bc = external_angle(p, s.z);
      CHECK(wrap_dist(bc.theta, 1.0 / 3.0) < 1e-9);
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("parameter ray: real slices") {
  // theta = 1/2 runs along c < -2; theta = 0 along c > 1/4.
  const RayPolyline half =
      trace_parameter_ray(2, AngleRational(1, 2), 4.0, 0x1p-16, 8);
  for (const auto& s : half.samples) {
    CHECK(std::abs(s.z.imag()) < 1e-14);
    CHECK(s.z.real() < -2.0);
  }
  CHECK(half.samples.back().z.real() == doctest::Approx(-2.0).epsilon(1e-6));

  const RayPolyline zero =
      trace_parameter_ray(2, AngleRational(0, 1), 4.0, 0x1p-16, 8);
  double prev = HUGE_VAL;
  for (const auto& s : zero.samples) {
    CHECK(std::abs(s.z.imag()) < 1e-14);
    CHECK(s.z.real() > 0.25);
    CHECK(s.z.real() < prev);
    prev = s.z.real();
  }
}

TEST_CASE("parameter ray: degree 3 asymptotics") {
  const RayPolyline ray =
      trace_parameter_ray(3, AngleRational(1, 2), 8.0, 4.0, 8);
  const auto& s0 = ray.samples.front();
  CHECK(std::abs(s0.z - std::exp(s0.t) * Cplx{-1, 0}) <
        2e-3 * std::exp(s0.t));
}

TEST_CASE("rays: refinement stability and conjugation symmetry") {
  const MapParams p(2, {-2, 0});
  const RayPolyline coarse =
      trace_dynamical_ray(p, AngleRational(1, 4), 8.0, 0x1p-8, 8);
  const RayPolyline fine =
      trace_dynamical_ray(p, AngleRational(1, 4), 8.0, 0x1p-8, 16);
  // Common potentials: every second fine sample.
  for (std::size_t i = 0; i < coarse.samples.size(); ++i) {
    const double t = coarse.samples[i].t;
    bool found = false;
    for (const auto& f : fine.samples)
      if (std::abs(f.t - t) < 1e-12 * t) {
        CHECK(std::abs(f.z - coarse.samples[i].z) < 1e-11);
        found = true;
        break;
      }
    CHECK(found);
  }
  // Conjugate angles trace conjugate rays for real c.
  const RayPolyline up =
      trace_dynamical_ray(p, AngleRational(1, 3), 8.0, 0x1p-8, 8);
  const RayPolyline dn =
      trace_dynamical_ray(p, AngleRational(2, 3), 8.0, 0x1p-8, 8);
  REQUIRE(up.samples.size() == dn.samples.size());
  for (std::size_t i = 0; i < up.samples.size(); ++i)
    CHECK(std::abs(up.samples[i].z - std::conj(dn.samples[i].z)) < 1e-10);
}

TEST_CASE("landing_estimate: frozen landings") {
  // J(z^2) is the unit circle: angle 1/4 lands at i.
  const MapParams p0(2, {0, 0});
  const auto ray_i =
      trace_dynamical_ray(p0, AngleRational(1, 4), 4.0, 0x1p-20, 8);
  const auto land_i = landing_estimate(ray_i);
  CHECK(std::abs(land_i.point - Cplx{0, 1}) < 1e-9);
  CHECK(land_i.error_bound < 1e-6);

  // Tip of the degree-2 locus at angle 1/2.
  const auto ray_tip =
      trace_parameter_ray(2, AngleRational(1, 2), 4.0, 0x1p-16, 8);
  const auto land_tip = landing_estimate(ray_tip);
  CHECK(std::abs(land_tip.point - Cplx{-2, 0}) < 1e-6);

  // Dynamical ray of the c = -2 map at angle 1/2 lands at -2 as well.
  const auto ray_dyn =
      trace_dynamical_ray(MapParams(2, {-2, 0}), AngleRational(1, 2), 8.0,
                          0x1p-16, 8);
  CHECK(std::abs(landing_estimate(ray_dyn).point - Cplx{-2, 0}) < 1e-6);
}

TEST_CASE("landing_estimate: window consistency") {
  const auto ray =
      trace_parameter_ray(2, AngleRational(1, 2), 4.0, 0x1p-14, 8);
  const auto e8 = landing_estimate(ray, 8);
  const auto e16 = landing_estimate(ray, 16);
  CHECK(std::abs(e8.point - e16.point) <=
        std::max(e8.error_bound, e16.error_bound) * (1.0 + 1e-9) + 1e-14);
  // And on an angle without a real-slice shortcut.
  const auto ray7 =
      trace_parameter_ray(2, AngleRational(2, 7), 4.0, 0x1p-12, 8);
  const auto f8 = landing_estimate(ray7, 8);
  const auto f16 = landing_estimate(ray7, 16);
  CHECK(std::abs(f8.point - f16.point) <=
        std::max(f8.error_bound, f16.error_bound) * (1.0 + 1e-9) + 1e-14);
}

TEST_CASE("landing_estimate: stagnation short-circuit") {
  // Deep trace of the tip ray: the innermost samples sit at fp resolution
  // around -2; the estimator must not fit noise ratios.
  const auto ray =
      trace_parameter_ray(2, AngleRational(1, 2), 4.0, 0x1p-30, 8);
  const auto land = landing_estimate(ray);
  CHECK(std::abs(land.point - Cplx{-2, 0}) < 1e-8);
}

TEST_CASE("arc_length: radial closed form and refinement invariance") {
  const MapParams p(2, {0, 0});
  const RayPolyline ray =
      trace_dynamical_ray(p, AngleRational(0, 1), 4.0, 0x1p-10, 8);
  // arc_length measures from the sample nearest the requested potential.
  double t_near = ray.samples.front().t;
  for (const auto& s : ray.samples)
    if (std::fabs(s.t - std::log(2.0)) < std::fabs(t_near - std::log(2.0)))
      t_near = s.t;
  const double len = arc_length(ray, std::log(2.0));
  const double want = std::exp(t_near) - std::exp(0x1p-10);
  CHECK(len == doctest::Approx(want).epsilon(1e-5));

  const RayPolyline fine =
      trace_dynamical_ray(p, AngleRational(0, 1), 4.0, 0x1p-10, 16);
  const double len_fine = arc_length(fine, std::log(2.0));
  CHECK(std::abs(len_fine - len) / len < 1e-3);
}

TEST_CASE("arc_length: Chebyshev segment") {
  const MapParams p(2, {-2, 0});
  const RayPolyline ray =
      trace_dynamical_ray(p, AngleRational(1, 2), 8.0, 0x1p-14, 8);
  // From the sample nearest z = -3 (t = arccosh(3/2)) to the innermost;
  // the ray is a straight real segment, so length = difference of points.
  const double t3 = std::acosh(1.5);
  double t_near = ray.samples.front().t;
  for (const auto& s : ray.samples)
    if (std::fabs(s.t - t3) < std::fabs(t_near - t3)) t_near = s.t;
  const double want = 2.0 * std::cosh(t_near) - 2.0 * std::cosh(0x1p-14);
  CHECK(arc_length(ray, t3) == doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("precision floor and schedule validation") {
  const MapParams p(2, {0, 0});
  CHECK_THROWS_AS(
      trace_dynamical_ray(p, AngleRational(1, 4), 4.0, 0x1p-50, 8), Error);
  try {
    trace_dynamical_ray(p, AngleRational(1, 4), 4.0, 0x1p-50, 8);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::precision_floor);
  }
  CHECK_THROWS_AS(
      trace_dynamical_ray(p, AngleRational(1, 4), 0.5, 1.0, 8), Error);
}

TEST_CASE("geodesic ratio experiment: c0 = -2 against the slice oracle") {
  std::vector<double> pots;
  for (int k = 4; k <= 30; ++k) pots.push_back(std::pow(2.0, -k));
  const auto rows =
      geodesic_ratio_experiment(2, AngleRational(1, 2), {-2, 0}, pots);
  REQUIRE(rows.size() == pots.size());

  // The ratio tends to |T(-2)| = 2/3.
  CHECK(std::abs(rows.back().ratio - 2.0 / 3.0) < 0.05 * (2.0 / 3.0));

  // Oracle pipelines for both slices.
  oracles::SliceOracle dyn{[&](double x) {
    return green(MapParams(2, {-2, 0}), {-2.0 - x, 0}, 1e-13);
  }};
  oracles::SliceOracle par{[&](double x) {
    return green_of_critical_value(MapParams(2, {-2.0 - x, 0}), 1e-13);
  }};

  for (const auto& row : rows) {
    if (row.t > 0.26) continue; // oracle grid starts at 1/4
    const double g_o = dyn.tail_length(row.t);
    const double G_o = par.tail_length(row.t);
    CHECK(std::abs(row.gamma_len - g_o) <= 1e-6 * std::max(1.0, g_o));
    CHECK(std::abs(row.Gamma_len - G_o) <= 1e-6 * std::max(1.0, G_o));
  }

  // Degenerate single-potential call yields a single row.
  const auto single =
      geodesic_ratio_experiment(2, AngleRational(1, 2), {-2, 0}, {0x1p-8});
  CHECK(single.size() == 1);
}

TEST_CASE("geodesic ratio experiment: spiraling landing at c0 = i") {
  // The angle-1/6 parameter ray lands at i; the length ratio approaches
  // |T(i)| = |4/5 - 2i/5| even though both rays spiral.
  const auto land = landing_estimate(
      trace_parameter_ray(2, AngleRational(1, 6), 4.0, 0x1p-20, 8));
  CHECK(std::abs(land.point - Cplx{0, 1}) < 1e-6);

  const auto rows = geodesic_ratio_experiment(2, AngleRational(1, 6), {0, 1},
                                              {0x1p-12, 0x1p-14});
  const double want = std::abs(Cplx{0.8, -0.4});
  for (const auto& row : rows)
    CHECK(std::abs(row.ratio - want) < 1e-3);
}
