#include "snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "common.hpp"

namespace ch6 {

namespace {

constexpr char kMagic[4] = {'C', 'H', '6', 'F'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_snapshot(const RealField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(f.grid->dim()));
  put_u32(os, static_cast<std::uint32_t>(f.grid->n()));
  put_f64(os, f.grid->length());
  os.write(reinterpret_cast<const char*>(f.v.data()),
           static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  if (!os) throw IoError("short write to '" + path + "'");
}

RealField read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  char magic[4] = {0, 0, 0, 0};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw ConfigError("'" + path + "' is not a field snapshot (bad magic)");
  const std::uint32_t version = get_u32(is);
  if (version != kVersion)
    throw ConfigError("'" + path + "' has snapshot version " + std::to_string(version) +
                      ", expected " + std::to_string(kVersion));
  const std::uint32_t dim = get_u32(is);
  const std::uint32_t n = get_u32(is);
  const double length = get_f64(is);
  if (!is) throw ConfigError("'" + path + "': truncated snapshot header");
  GridPtr g = Grid::create(static_cast<int>(dim), static_cast<int>(n), length);
  RealField f = RealField::zeros(g);
  is.read(reinterpret_cast<char*>(f.v.data()),
          static_cast<std::streamsize>(f.v.size() * sizeof(double)));
  if (is.gcount() != static_cast<std::streamsize>(f.v.size() * sizeof(double)))
    throw ConfigError("'" + path + "': truncated snapshot payload");
  return f;
}

}  // namespace ch6
