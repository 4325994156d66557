#include "unicrit/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace unicrit {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::bad_argument, "cannot open " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::bad_argument, "write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::bad_argument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string ray_csv(const RayPolyline& ray) {
  std::string out = "t,re,im,arc_prefix\n";
  for (std::size_t i = 0; i < ray.samples.size(); ++i) {
    out += format_g17(ray.samples[i].t);
    out += ',';
    out += format_g17(ray.samples[i].z.real());
    out += ',';
    out += format_g17(ray.samples[i].z.imag());
    out += ',';
    out += format_g17(ray.arc_prefix[i]);
    out += '\n';
  }
  return out;
}

namespace {

void put_u64(std::string& s, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_f64(std::string& s, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, 8);
  put_u64(s, v);
}
std::uint64_t get_u64(std::string_view s, std::size_t off) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[off + i]))
         << (8 * i);
  return v;
}
double get_f64(std::string_view s, std::size_t off) {
  const std::uint64_t v = get_u64(s, off);
  double d;
  std::memcpy(&d, &v, 8);
  return d;
}

constexpr char kRayMagic[4] = {'U', 'R', 'A', 'Y'};

} // namespace

std::string ray_cache_bytes(const RayPolyline& ray) {
  std::string s;
  s.append(kRayMagic, 4);
  put_u64(s, 1); // format version
  put_u64(s, ray.plane == Plane::parameter ? 1 : 0);
  put_u64(s, static_cast<std::uint64_t>(ray.degree));
  put_f64(s, ray.c.real());
  put_f64(s, ray.c.imag());
  put_u64(s, ray.angle.num);
  put_u64(s, ray.angle.den);
  put_f64(s, ray.t_start);
  put_f64(s, ray.t_min);
  put_f64(s, ray.ray_tol);
  put_u64(s, static_cast<std::uint64_t>(ray.steps_per_halving));
  put_u64(s, ray.samples.size());
  for (std::size_t i = 0; i < ray.samples.size(); ++i) {
    put_f64(s, ray.samples[i].t);
    put_f64(s, ray.samples[i].z.real());
    put_f64(s, ray.samples[i].z.imag());
    put_f64(s, ray.arc_prefix[i]);
  }
  return s;
}

RayPolyline ray_cache_parse(std::string_view b) {
  if (b.size() < 4 + 8 * 12 || std::memcmp(b.data(), kRayMagic, 4) != 0)
    throw Error(ErrorKind::bad_argument, "not a ray cache record");
  std::size_t o = 4;
  auto u = [&] { const auto v = get_u64(b, o); o += 8; return v; };
  auto f = [&] { const auto v = get_f64(b, o); o += 8; return v; };
  if (u() != 1)
    throw Error(ErrorKind::bad_argument, "unknown ray cache version");
  RayPolyline ray;
  ray.plane = u() ? Plane::parameter : Plane::dynamical;
  ray.degree = static_cast<int>(u());
  const double cre = f(), cim = f();
  ray.c = {cre, cim};
  const std::uint64_t num = u(), den = u();
  ray.angle = AngleRational(num, den);
  ray.t_start = f();
  ray.t_min = f();
  ray.ray_tol = f();
  ray.steps_per_halving = static_cast<int>(u());
  const std::uint64_t n = u();
  if (b.size() < o + n * 32)
    throw Error(ErrorKind::bad_argument, "truncated ray cache record");
  ray.samples.reserve(n);
  ray.arc_prefix.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double t = f(), re = f(), im = f(), arc = f();
    ray.samples.push_back({t, Cplx{re, im}});
    ray.arc_prefix.push_back(arc);
  }
  return ray;
}

std::string raster_pgm(const Raster& raster) {
  std::string s = "P5\n" + std::to_string(raster.nx) + " " +
                  std::to_string(raster.ny) + "\n255\n";
  s.reserve(s.size() + raster.cells.size());
  for (const CellClass c : raster.cells) {
    switch (c) {
      case CellClass::inside: s.push_back(static_cast<char>(0)); break;
      case CellClass::undecided: s.push_back(static_cast<char>(128)); break;
      case CellClass::outside: s.push_back(static_cast<char>(255)); break;
    }
  }
  return s;
}

std::string raster_sidecar_json(const Raster& raster) {
  nlohmann::ordered_json j;
  j["plane"] = raster.plane == Plane::parameter ? "parameter" : "dynamical";
  j["degree"] = raster.degree;
  j["c"] = {raster.c.real(), raster.c.imag()};
  j["center"] = {raster.bounds.center.real(), raster.bounds.center.imag()};
  j["half_re"] = raster.bounds.half_re;
  j["half_im"] = raster.bounds.half_im;
  j["nx"] = raster.nx;
  j["ny"] = raster.ny;
  j["maxit"] = raster.maxit;
  j["bailout"] = raster.bailout;
  j["encoding"] = {{"inside", 0}, {"undecided", 128}, {"outside", 255}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// SHA-256 (FIPS 180-4). Round constants are generated from the fractional
// parts of cube/square roots of the first primes; known-answer tests pin the
// result.

namespace {

struct Sha256Tables {
  std::array<std::uint32_t, 64> K{};
  std::array<std::uint32_t, 8> H0{};
  Sha256Tables() {
    int primes[64];
    int count = 0;
    for (int n = 2; count < 64; ++n) {
      bool is_prime = true;
      for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) {
          is_prime = false;
          break;
        }
      if (is_prime) primes[count++] = n;
    }
    for (int i = 0; i < 64; ++i) {
      const long double r = cbrtl(static_cast<long double>(primes[i]));
      K[i] = static_cast<std::uint32_t>(
          std::fmod(r, 1.0L) * 4294967296.0L);
    }
    for (int i = 0; i < 8; ++i) {
      const long double r = sqrtl(static_cast<long double>(primes[i]));
      H0[i] = static_cast<std::uint32_t>(
          std::fmod(r, 1.0L) * 4294967296.0L);
    }
  }
};

const Sha256Tables& sha_tables() {
  static const Sha256Tables t;
  return t;
}

inline std::uint32_t rotr(std::uint32_t x, int n) {
  return (x >> n) | (x << (32 - n));
}

} // namespace

std::string sha256_hex(std::string_view bytes) {
  const auto& tab = sha_tables();
  std::array<std::uint32_t, 8> h = tab.H0;

  const std::uint64_t bitlen = static_cast<std::uint64_t>(bytes.size()) * 8;
  std::string padded(bytes);
  padded.push_back(static_cast<char>(0x80));
  while (padded.size() % 64 != 56) padded.push_back('\0');
  for (int i = 7; i >= 0; --i)
    padded.push_back(static_cast<char>((bitlen >> (8 * i)) & 0xff));

  std::uint32_t w[64];
  for (std::size_t blk = 0; blk < padded.size(); blk += 64) {
    for (int i = 0; i < 16; ++i) {
      w[i] = 0;
      for (int b = 0; b < 4; ++b)
        w[i] = (w[i] << 8) |
               static_cast<unsigned char>(padded[blk + 4 * i + b]);
    }
    for (int i = 16; i < 64; ++i) {
      const std::uint32_t s0 =
          rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      const std::uint32_t s1 =
          rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    std::uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4], f = h[5],
                  g = h[6], hh = h[7];
    for (int i = 0; i < 64; ++i) {
      const std::uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t t1 = hh + S1 + ch + tab.K[i] + w[i];
      const std::uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = S0 + maj;
      hh = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
    h[5] += f;
    h[6] += g;
    h[7] += hh;
  }

  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (std::uint32_t v : h)
    for (int i = 7; i >= 0; --i) out.push_back(hex[(v >> (4 * i)) & 0xf]);
  return out;
}

} // namespace unicrit
