#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace unicrit {

/// External angle as an exact reduced fraction of a full turn. The multiplier
/// map theta -> d*theta (mod 1) is evaluated in integer arithmetic, so angle
/// orbits under iteration carry no rounding error at any depth. Numerator and
/// denominator are 64-bit; products are formed in 128-bit, which covers every
/// angle this toolkit works with (dyadics up to 2^53 from the sampler, small
/// user fractions from the CLI).
struct AngleRational {
  std::uint64_t num = 0; // < den after reduction
  std::uint64_t den = 1;

  AngleRational() = default;
  /// Reduces p/q and folds p into [0, q). Throws BadArgument on q == 0.
  AngleRational(std::uint64_t p, std::uint64_t q);

  /// One step of the multiplier map: d * theta mod 1, exactly.
  AngleRational times_mod1(unsigned d) const;

  /// n steps of the multiplier map, exactly.
  AngleRational times_pow_mod1(unsigned d, unsigned n) const;

  double turns() const; // value in [0, 1)

  bool operator==(const AngleRational&) const = default;

  /// Parses "p/q" or "p" (integer turns reduce to 0).
  static AngleRational parse(const std::string& text);
  std::string str() const;
};

/// a*b mod m without overflow.
std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);

/// Folds a real angle (in turns) into [0, 1).
double wrap_unit(double turns);

/// Distance between two angles on the circle, in turns (wrap-aware).
double wrap_dist(double a, double b);

/// exp(2*pi*i*turns) with exact values at quarter turns and reflection-based
/// argument reduction elsewhere. Keeps real-axis rays exactly real.
std::complex<double> unit_from_turns(double turns);

} // namespace unicrit
