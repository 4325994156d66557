#include "cache.hpp"

#include <cstdlib>
#include <filesystem>

#include "unicrit/io.hpp"
#include "unicrit/version.hpp"

namespace unicrit::cli {

RayCache::RayCache() {
  const char* env = std::getenv("RAYCACHE_DIR");
  dir_ = env && *env ? env : "./.raycache";
}

std::string RayCache::key_of(Plane plane, int degree, Cplx c,
                             const AngleRational& angle, double t_start,
                             double t_min, int steps_per_halving,
                             double ray_tol) {
  std::string key = plane == Plane::parameter ? "param" : "dyn";
  key += "|d=" + std::to_string(degree);
  key += "|c=" + format_g17(c.real()) + "," + format_g17(c.imag());
  key += "|angle=" + angle.str();
  key += "|tstart=" + format_g17(t_start);
  key += "|tmin=" + format_g17(t_min);
  key += "|steps=" + std::to_string(steps_per_halving);
  key += "|raytol=" + format_g17(ray_tol);
  key += "|v=" + std::string(kVersion);
  return key;
}

std::optional<RayPolyline> RayCache::lookup(const std::string& key) const {
  const std::string path = dir_ + "/" + sha256_hex(key) + ".raybin";
  if (!std::filesystem::exists(path)) return std::nullopt;
  try {
    return ray_cache_parse(read_file(path));
  } catch (const Error&) {
    return std::nullopt; // treat corrupt records as misses
  }
}

std::string RayCache::store(const std::string& key,
                            const RayPolyline& ray) const {
  std::filesystem::create_directories(dir_);
  const std::string path = dir_ + "/" + sha256_hex(key) + ".raybin";
  write_file(path, ray_cache_bytes(ray));
  return path;
}

} // namespace unicrit::cli
