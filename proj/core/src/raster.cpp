#include "spatk/raster.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "spatk/errors.hpp"
#include "spatk/version.hpp"

static_assert(std::endian::native == std::endian::little,
              "CSRM i/o assumes a little-endian host");

namespace spatk {

namespace {

constexpr char kMagic[4] = {'C', 'S', 'R', 'M'};

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

RasterMap::RasterMap(std::uint32_t height, std::uint32_t width, std::uint32_t channels,
                     Dtype dtype)
    : height_(height), width_(width), channels_(channels), dtype_(dtype) {
  if (height == 0 || width == 0 || channels == 0) {
    throw InvalidArgument("raster dimensions must be positive");
  }
  const std::size_t n = value_count();
  if (dtype == Dtype::kU8) {
    data_ = std::vector<std::uint8_t>(n, 0);
  } else {
    data_ = std::vector<float>(n, 0.0f);
  }
}

void save_raster(const RasterMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InvalidArgument("cannot open '" + path.string() + "' for writing");
  }
  out.write(kMagic, 4);
  const std::uint8_t version = static_cast<std::uint8_t>(kFormatVersion);
  const std::uint8_t dtype = static_cast<std::uint8_t>(map.dtype());
  out.write(reinterpret_cast<const char*>(&version), 1);
  out.write(reinterpret_cast<const char*>(&dtype), 1);
  write_u32(out, map.height());
  write_u32(out, map.width());
  write_u32(out, map.channels());
  if (map.dtype() == Dtype::kU8) {
    const auto values = map.u8_values();
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size()));
  } else {
    const auto values = map.f32_values();
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(float)));
  }
  if (!out) {
    throw InvalidArgument("write failed for '" + path.string() + "'");
  }
}

RasterMap load_raster(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open raster file '" + path.string() + "'");
  }
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError("'" + path.string() + "' is not a CSRM raster file");
  }
  std::uint8_t version = 0;
  std::uint8_t dtype_code = 0;
  in.read(reinterpret_cast<char*>(&version), 1);
  in.read(reinterpret_cast<char*>(&dtype_code), 1);
  if (version != kFormatVersion) {
    throw VersionError("unsupported CSRM version " + std::to_string(version) +
                       " in '" + path.string() + "'");
  }
  if (dtype_code > 1) {
    throw ParseError("unknown CSRM dtype code " + std::to_string(dtype_code));
  }
  const std::uint32_t height = read_u32(in);
  const std::uint32_t width = read_u32(in);
  const std::uint32_t channels = read_u32(in);
  if (!in) {
    throw ParseError("truncated CSRM header in '" + path.string() + "'");
  }
  RasterMap map(height, width, channels, static_cast<Dtype>(dtype_code));
  if (map.dtype() == Dtype::kU8) {
    auto values = map.u8_values();
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size()));
  } else {
    auto values = map.f32_values();
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(float)));
  }
  if (!in) {
    throw ParseError("truncated CSRM payload in '" + path.string() + "'");
  }
  return map;
}

}  // namespace spatk
