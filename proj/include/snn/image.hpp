#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace snn {

using Rgb = std::array<std::uint8_t, 3>;

/// Row-major RGB image, 8 bits per channel.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  Image() = default;
  Image(int w, int h, Rgb fill = {0, 0, 0});

  Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }
  const Rgb& at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }
  bool empty() const noexcept { return pixels.empty(); }
  bool operator==(const Image&) const = default;
};

/// Binary P6 with maxval 255 only. Throws ParseError on anything else or a
/// truncated payload.
Image load_ppm(const std::filesystem::path& path);
Image decode_ppm(const std::string& bytes);
void save_ppm(const Image& img, const std::filesystem::path& path);
std::string encode_ppm(const Image& img);

enum class NoiseKind { salt_and_pepper, gaussian };

NoiseKind noise_kind_from_string(const std::string& s);

/// salt_and_pepper: each channel independently becomes 0 or 255 (equal odds)
/// with probability `param` (the density). gaussian: each channel gets
/// N(0, param^2) added, rounded and clamped to [0, 255]. Deterministic per
/// seed across platforms.
Image add_noise(const Image& img, NoiseKind kind, double param, std::uint64_t seed);

/// FNV-1a 64 over width, height and the pixel bytes.
std::uint64_t image_checksum(const Image& img);

}  // namespace snn
