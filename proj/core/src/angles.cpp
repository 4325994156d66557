#include "unicrit/angles.hpp"

#include <cmath>
#include <numeric>

#include "unicrit/errors.hpp"

namespace unicrit {

AngleRational::AngleRational(std::uint64_t p, std::uint64_t q) {
  if (q == 0) throw Error(ErrorKind::bad_argument, "angle denominator is zero");
  p %= q;
  const std::uint64_t g = std::gcd(p, q);
  num = p / g;
  den = q / g;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

AngleRational AngleRational::times_mod1(unsigned d) const {
  return AngleRational(mulmod_u64(num, d, den), den);
}

AngleRational AngleRational::times_pow_mod1(unsigned d, unsigned n) const {
  AngleRational a = *this;
  // den only shrinks under reduction, so the loop is exact throughout.
  for (unsigned k = 0; k < n; ++k) a = a.times_mod1(d);
  return a;
}

double AngleRational::turns() const {
  return static_cast<double>(num) / static_cast<double>(den);
}

AngleRational AngleRational::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return AngleRational(std::stoull(text), 1);
    }
    const std::uint64_t p = std::stoull(text.substr(0, slash));
    const std::uint64_t q = std::stoull(text.substr(slash + 1));
    return AngleRational(p, q);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::bad_argument, "cannot parse angle '" + text + "'");
  }
}

std::string AngleRational::str() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

double wrap_unit(double turns) {
  double f = turns - std::floor(turns);
  if (f >= 1.0) f -= 1.0; // floor rounding at negative epsilons
  return f;
}

double wrap_dist(double a, double b) {
  const double d = std::fabs(wrap_unit(a) - wrap_unit(b));
  return std::min(d, 1.0 - d);
}

std::complex<double> unit_from_turns(double turns) {
  double f = wrap_unit(turns);
  // Reduce to [0, 1/4] tracking the quadrant symmetry; quarter turns are
  // exact and e.g. angle 1/2 yields exactly (-1, 0).
  int quadrant = static_cast<int>(std::floor(f * 4.0));
  if (quadrant > 3) quadrant = 3;
  const double r = f - 0.25 * quadrant; // in [0, 1/4)
  const double a = 2.0 * M_PI * r;
  const double c = std::cos(a);
  const double s = std::sin(a);
  switch (quadrant) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

} // namespace unicrit
