#pragma once

#include <optional>
#include <string>

#include "unicrit/rays.hpp"

namespace unicrit::cli {

/// Content-addressed polyline cache. The key string canonically encodes
/// (plane, degree, c, reduced angle, t_start, t_min, steps_per_halving,
/// ray_tol, tool version); records live under RAYCACHE_DIR (default
/// ./.raycache) named by the key's digest. Hits return bit-identical
/// polylines.
class RayCache {
public:
  RayCache(); // resolves the directory from the environment

  const std::string& dir() const { return dir_; }

  static std::string key_of(Plane plane, int degree, Cplx c,
                            const AngleRational& angle, double t_start,
                            double t_min, int steps_per_halving,
                            double ray_tol);

  std::optional<RayPolyline> lookup(const std::string& key) const;
  /// Stores the polyline; returns the record path.
  std::string store(const std::string& key, const RayPolyline& ray) const;

private:
  std::string dir_;
};

} // namespace unicrit::cli
