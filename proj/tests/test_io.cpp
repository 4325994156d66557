#include <doctest.h>

#include "unicrit/io.hpp"
#include "unicrit/rays.hpp"

using namespace unicrit;

TEST_CASE("sha256: FIPS known-answer vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("format_g17 round-trips binary64") {
  for (double x : {1.0 / 3.0, 0x1p-40, -2.0000000000000004, 1e300, 0.1}) {
    CHECK(std::stod(format_g17(x)) == x);
  }
}

TEST_CASE("ray cache record round-trips bit-identically") {
  const RayPolyline ray =
      trace_dynamical_ray(MapParams(2, {-2, 0}), AngleRational(1, 3), 8.0,
                          0x1p-6, 8);
  const std::string bytes = ray_cache_bytes(ray);
  const RayPolyline back = ray_cache_parse(bytes);
  REQUIRE(back.samples.size() == ray.samples.size());
  CHECK(back.plane == ray.plane);
  CHECK(back.degree == ray.degree);
  CHECK(back.angle == ray.angle);
  CHECK(back.t_start == ray.t_start);
  CHECK(back.t_min == ray.t_min);
  for (std::size_t i = 0; i < ray.samples.size(); ++i) {
    CHECK(back.samples[i].t == ray.samples[i].t);
    CHECK(back.samples[i].z == ray.samples[i].z);
    CHECK(back.arc_prefix[i] == ray.arc_prefix[i]);
  }
  // Serialization is deterministic.
  CHECK(sha256_hex(ray_cache_bytes(back)) == sha256_hex(bytes));
  CHECK_THROWS_AS(ray_cache_parse("bogus"), Error);
}

TEST_CASE("ray csv shape") {
  const RayPolyline ray =
      trace_dynamical_ray(MapParams(2, {0, 0}), AngleRational(1, 4), 4.0,
                          1.0, 8);
  const std::string csv = ray_csv(ray);
  CHECK(csv.rfind("t,re,im,arc_prefix\n", 0) == 0);
  std::size_t rows = 0;
  for (char ch : csv)
    if (ch == '\n') ++rows;
  CHECK(rows == ray.samples.size() + 1);
}

TEST_CASE("pgm encoding of rasters") {
  const Raster r = membership_grid(Plane::parameter, 2, {0, 0},
                                   RegionRect{{5, 0}, 0.1, 0.1}, 8, 8, 32);
  const std::string pgm = raster_pgm(r);
  const std::string header = "P5\n8 8\n255\n";
  CHECK(pgm.rfind(header, 0) == 0);
  REQUIRE(pgm.size() == header.size() + 64);
  for (std::size_t i = header.size(); i < pgm.size(); ++i)
    CHECK(static_cast<unsigned char>(pgm[i]) == 255); // all outside

  const std::string sidecar = raster_sidecar_json(r);
  CHECK(sidecar.find("\"plane\": \"parameter\"") != std::string::npos);
  CHECK(sidecar.find("\"nx\": 8") != std::string::npos);
}
