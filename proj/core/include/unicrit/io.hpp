#pragma once

#include <string>
#include <string_view>

#include "unicrit/probes.hpp"
#include "unicrit/rays.hpp"

namespace unicrit {

/// Full-precision decimal rendering (%.17g); round-trips binary64 exactly,
/// which keeps CSV diffs byte-stable.
std::string format_g17(double x);

/// Writes bytes as-is (LF line endings are the callers' responsibility).
void write_file(const std::string& path, std::string_view bytes);
std::string read_file(const std::string& path);

/// Ray polyline as CSV with header t,re,im,arc_prefix.
std::string ray_csv(const RayPolyline& ray);

/// Compact binary record of a polyline; read returns bit-identical samples.
std::string ray_cache_bytes(const RayPolyline& ray);
RayPolyline ray_cache_parse(std::string_view bytes);

/// P5 PGM, maxval 255: Inside = 0, Undecided = 128, Outside = 255.
std::string raster_pgm(const Raster& raster);
/// JSON sidecar with the parameters that produced the raster.
std::string raster_sidecar_json(const Raster& raster);

/// SHA-256 digest, lowercase hex.
std::string sha256_hex(std::string_view bytes);

} // namespace unicrit
