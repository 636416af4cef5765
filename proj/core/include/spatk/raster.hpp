#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace spatk {

enum class Dtype : std::uint8_t { kU8 = 0, kF32 = 1 };

/// Dense H x W x C array, row-major with channels last. Backs masks,
/// likelihood maps and K-vector maps.
///
/// On disk (format "CSRM", version 1, all integers little-endian):
///   magic 'C','S','R','M' | u8 version | u8 dtype (0=u8, 1=f32)
///   | u32 height | u32 width | u32 channels | payload
class RasterMap {
 public:
  RasterMap() = default;
  RasterMap(std::uint32_t height, std::uint32_t width, std::uint32_t channels, Dtype dtype);

  std::uint32_t height() const { return height_; }
  std::uint32_t width() const { return width_; }
  std::uint32_t channels() const { return channels_; }
  Dtype dtype() const { return dtype_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(height_) * width_;
  }
  std::size_t value_count() const { return pixel_count() * channels_; }

  bool same_shape(const RasterMap& other) const {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  std::size_t offset(std::uint32_t y, std::uint32_t x, std::uint32_t c = 0) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  std::uint8_t& u8(std::uint32_t y, std::uint32_t x, std::uint32_t c = 0) {
    return std::get<std::vector<std::uint8_t>>(data_)[offset(y, x, c)];
  }
  std::uint8_t u8(std::uint32_t y, std::uint32_t x, std::uint32_t c = 0) const {
    return std::get<std::vector<std::uint8_t>>(data_)[offset(y, x, c)];
  }
  float& f32(std::uint32_t y, std::uint32_t x, std::uint32_t c = 0) {
    return std::get<std::vector<float>>(data_)[offset(y, x, c)];
  }
  float f32(std::uint32_t y, std::uint32_t x, std::uint32_t c = 0) const {
    return std::get<std::vector<float>>(data_)[offset(y, x, c)];
  }

  std::span<const std::uint8_t> u8_values() const {
    return std::get<std::vector<std::uint8_t>>(data_);
  }
  std::span<std::uint8_t> u8_values() {
    return std::get<std::vector<std::uint8_t>>(data_);
  }
  std::span<const float> f32_values() const { return std::get<std::vector<float>>(data_); }
  std::span<float> f32_values() { return std::get<std::vector<float>>(data_); }

  /// Value at (y, x, c) as a double, whatever the dtype.
  double value(std::uint32_t y, std::uint32_t x, std::uint32_t c = 0) const {
    return dtype_ == Dtype::kU8 ? static_cast<double>(u8(y, x, c))
                                : static_cast<double>(f32(y, x, c));
  }

  bool operator==(const RasterMap& other) const = default;

 private:
  std::uint32_t height_ = 0;
  std::uint32_t width_ = 0;
  std::uint32_t channels_ = 0;
  Dtype dtype_ = Dtype::kU8;
  std::variant<std::vector<std::uint8_t>, std::vector<float>> data_;
};

void save_raster(const RasterMap& map, const std::filesystem::path& path);
RasterMap load_raster(const std::filesystem::path& path);

}  // namespace spatk
