#include <doctest.h>

#include "support/oracles.hpp"
#include "unicrit/angles.hpp"
#include "unicrit/potential.hpp"
#include "unicrit/rng.hpp"

using namespace unicrit;

namespace {

double rel_err(Cplx got, Cplx want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

// Escaping sample above the critical equipotential for the given map,
// rejection-sampled on an annulus.
Cplx escaping_point(const MapParams& p, SplitMix64& rng, double g_margin) {
  const double g0 = critical_potential(p);
  for (;;) {
    const double r = rng.next_in(0.3, 4.0);
    const Cplx z = r * std::exp(Cplx{0, 2 * M_PI * rng.next_unit()});
    try {
      if (green(p, z) > g0 + g_margin) return z;
    } catch (const Error&) {
    }
  }
}

} // namespace

TEST_CASE("green: closed forms for c = 0") {
  const MapParams p(2, {0, 0});
  CHECK(green(p, {std::exp(1.0), 0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(green(p, {4, 0}) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(green(p, {0, 2}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("green: agrees with the raw limit at c = -2") {
  const MapParams p(2, {-2, 0});
  const double g = green(p, {3, 0}, 1e-13);
  CHECK(g > std::log(2.0));
  CHECK(g < std::log(3.0));
  CHECK(g == doctest::Approx(oracles::green_raw_limit(2, {-2, 0}, {3, 0}))
                 .epsilon(1e-10));
  // Chebyshev: G(z) = log|phi(z)| = log((z+sqrt(z^2-4))/2)
  CHECK(g == doctest::Approx(std::log(oracles::chebyshev_phi(3.0)))
                 .epsilon(1e-12));
}

TEST_CASE("green: NotEscaping inside the filled set") {
  const MapParams p(2, {-0.1, 0});
  // |multiplier| < 1: the fixed point attracts z = 0.1
  CHECK(std::abs(oracles::cardioid_multiplier({-0.1, 0})) < 1.0);
  CHECK_THROWS_AS(green(p, {0.1, 0}, 1e-12, 20000), Error);
}

TEST_CASE("green_of_critical_value: definitional identity") {
  CHECK(green_of_critical_value(MapParams(2, {3, 0})) ==
        green(MapParams(2, {3, 0}), {3, 0}));
  CHECK(green_of_critical_value(MapParams(2, {-3, 0})) > 0.0);
  // Near-cusp parameter escapes slowly but escapes.
  CHECK(green_of_critical_value(MapParams(2, {0.2501, 0}), 1e-12, 1000000) >
        0.0);
  CHECK_THROWS_AS(green_of_critical_value(MapParams(2, {0.2499, 0}), 1e-12,
                                          200000),
                  Error);
}

TEST_CASE("green: functional equation G(f(z)) = d G(z)") {
  SplitMix64 rng(21);
  for (const Cplx c : {Cplx{-2, 0}, Cplx{0.3, 0.4}, Cplx{-0.7, 0.3}}) {
    const MapParams p(2, c);
    for (int i = 0; i < 100; ++i) {
      const Cplx z = escaping_point(p, rng, 1e-6);
      const double lhs = green(p, iterate(p, z, 1));
      const double rhs = 2.0 * green(p, z);
      CHECK(std::abs(lhs - rhs) < 1e-11);
    }
  }
}

TEST_CASE("bottcher: identity at c = 0") {
  const MapParams p(2, {0, 0});
  CHECK(std::abs(bottcher(p, {1, 1}) - Cplx{1, 1}) < 1e-15);
}

TEST_CASE("bottcher: asymptotic tangency") {
  const MapParams p(2, {3, 0});
  const Cplx phi = bottcher(p, {1e6, 0});
  CHECK(std::abs(phi / Cplx{1e6, 0} - 1.0) < 2e-12);
}

TEST_CASE("bottcher: Chebyshev closed form at c = -2") {
  const MapParams p(2, {-2, 0});
  const Cplx phi = bottcher(p, {3, 0});
  CHECK(rel_err(phi, {oracles::chebyshev_phi(3.0), 0}) < 1e-12);
  CHECK(std::abs(phi.real() - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-12);
  // |phi| = exp(G)
  CHECK(std::abs(std::abs(phi) - std::exp(green(p, {3, 0}))) < 1e-11);
}

TEST_CASE("bottcher: rejects points inside the critical equipotential") {
  const MapParams p(2, {3, 0}); // G(0) > 0 for escaping c
  const double g0 = critical_potential(p);
  CHECK(g0 > 0.0);
  // The critical point itself sits exactly on the critical equipotential,
  // inside the rejection margin.
  try {
    bottcher(p, {1e-9, 0});
    FAIL("expected BranchAmbiguity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::branch_ambiguity);
  }
}

TEST_CASE("external_angle: frozen values") {
  const MapParams p(2, {0, 0});
  const BottcherCoord a = external_angle(p, {0, 2});
  CHECK(a.t == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(a.theta == doctest::Approx(0.25).epsilon(1e-12));

  const BottcherCoord b = external_angle(p, {-4, 0});
  CHECK(b.t == doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(b.theta == doctest::Approx(0.5).epsilon(1e-12));

  const BottcherCoord ch = external_angle(MapParams(2, {-2, 0}), {-3, 0});
  CHECK(ch.theta == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bottcher equivariance and angle multiplication") {
  SplitMix64 rng(5);
  for (const Cplx c : {Cplx{-2, 0}, Cplx{0.25, 0.55}, Cplx{-1.2, 0.4}}) {
    const MapParams p(2, c);
    int done = 0;
    while (done < 60) {
      const Cplx z = escaping_point(p, rng, 1e-3);
      Cplx phi_z, phi_fz;
      BottcherCoord ang_z, ang_fz;
      try {
        phi_z = bottcher(p, z);
        phi_fz = bottcher(p, iterate(p, z, 1));
        ang_z = external_angle(p, z);
        ang_fz = external_angle(p, iterate(p, z, 1));
      } catch (const Error&) {
        continue; // f(z) may sit below the critical level margin
      }
      CHECK(std::abs(phi_fz - phi_z * phi_z) <=
            1e-11 * std::max(1.0, std::norm(phi_z)));
      CHECK(wrap_dist(ang_fz.theta, 2.0 * ang_z.theta) < 1e-9);
      ++done;
    }
  }
}

TEST_CASE("bottcher_jet: identity map jet at c = 0") {
  const Jet j = bottcher_jet(MapParams(2, {0, 0}), {5, 0}, Var::z);
  CHECK(std::abs(j.val - Cplx{5, 0}) < 1e-14);
  CHECK(std::abs(j.der - Cplx{1, 0}) < 1e-14);
}

TEST_CASE("bottcher_jet: closed-form derivative at c = -2") {
  const MapParams p(2, {-2, 0});
  const Jet j = bottcher_jet(p, {3, 0}, Var::z);
  CHECK(rel_err(j.der, {oracles::chebyshev_phi_deriv(3.0), 0}) < 1e-11);
  CHECK(std::abs(j.der.real() - 1.17082039324993690) < 1e-10);
}

TEST_CASE("bottcher_jet vs finite differences") {
  SplitMix64 rng(17);
  const MapParams p(2, {0.3, 0.5});
  int done = 0;
  while (done < 40) {
    const Cplx z = escaping_point(p, rng, 1e-2);
    Jet jz, jc;
    Cplx fd_z, fd_c;
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    try {
      jz = bottcher_jet(p, z, Var::z);
      jc = bottcher_jet(p, z, Var::c);
      fd_z = oracles::central_diff(
          [&](Cplx zz) { return bottcher(p, zz); }, z, h);
      fd_c = oracles::central_diff(
          [&](Cplx cc) { return bottcher(MapParams(2, cc), z); }, p.c, h);
    } catch (const Error&) {
      continue;
    }
    CHECK(rel_err(fd_z, jz.der) < 1e-5);
    if (std::abs(jc.der) > 1e-9) CHECK(rel_err(fd_c, jc.der) < 1e-4);
    ++done;
  }
  // Far-field c-derivative is tiny and matches differences.
  const MapParams pf(2, {3, 0});
  const Jet far = bottcher_jet(pf, {1e6, 0}, Var::c);
  CHECK(std::abs(far.der) < 1e-5);
  const Cplx fd = oracles::central_diff(
      [&](Cplx cc) { return bottcher(MapParams(2, cc), {1e6, 0}); },
      {3, 0}, 1e-4);
  CHECK(std::abs(far.der - fd) < 1e-5); // fd is cancellation-limited out here
}

TEST_CASE("param_bottcher: modulus identity and symmetry") {
  // |Phi(c)| = exp(G_M(c))
  for (const Cplx c : {Cplx{3, 0}, Cplx{-3, 0}, Cplx{0.4, 0.9}}) {
    const Jet phi = param_bottcher(2, c);
    CHECK(std::abs(std::abs(phi.val) -
                   std::exp(green_of_critical_value(MapParams(2, c)))) <
          1e-10);
  }
  // Real-axis symmetry: c = -3 has external angle exactly 1/2.
  const Jet phi = param_bottcher(2, {-3, 0});
  CHECK(std::abs(phi.val.imag()) < 1e-14 * std::abs(phi.val));
  CHECK(phi.val.real() < 0.0);
  // Tangent to the identity at infinity.
  const Jet far = param_bottcher(2, {1e6, 0});
  CHECK(std::abs(far.val / Cplx{1e6, 0} - 1.0) < 1e-5);
  CHECK(std::abs(far.der - 1.0) < 1e-4);
}

TEST_CASE("param_bottcher: 100-sample modulus property") {
  SplitMix64 rng(33);
  int done = 0;
  while (done < 100) {
    const Cplx c{rng.next_in(-3, 3), rng.next_in(-3, 3)};
    Jet phi;
    double g;
    try {
      phi = param_bottcher(2, c);
      g = green_of_critical_value(MapParams(2, c));
    } catch (const Error&) {
      continue;
    }
    CHECK(std::abs(std::abs(phi.val) - std::exp(g)) < 1e-11 * std::exp(g) + 1e-11);
    ++done;
  }
}

TEST_CASE("angles: exact doubling and quarter-turn units") {
  const AngleRational half(1, 2);
  CHECK(half.times_mod1(2) == AngleRational(0, 1));
  const AngleRational th(3, 7);
  CHECK(th.times_mod1(2) == AngleRational(6, 7));
  CHECK(th.times_pow_mod1(2, 3) == AngleRational(3, 7)); // period 3 under doubling
  CHECK(unit_from_turns(0.5) == Cplx{-1, 0});
  CHECK(unit_from_turns(0.25) == Cplx{0, 1});
  CHECK(unit_from_turns(0.75) == Cplx{0, -1});
  CHECK(unit_from_turns(0.0) == Cplx{1, 0});
  CHECK(wrap_dist(0.98, 0.01) == doctest::Approx(0.03));
}
