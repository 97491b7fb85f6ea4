#include "snn/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "snn/error.hpp"

namespace snn {

Image::Image(int w, int h, Rgb fill) : width(w), height(h) {
  if (w < 0 || h < 0) throw std::invalid_argument("image: negative size");
  pixels.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string next_token(const std::string& s, std::size_t& pos) {
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    } else if (s[pos] == '#') {
      while (pos < s.size() && s[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '#') ++pos;
  if (start == pos) throw ParseError("ppm: truncated header");
  return s.substr(start, pos - start);
}

int parse_int(const std::string& tok) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ParseError("ppm: malformed header field '" + tok + "'");
  }
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw ParseError("ppm: header value out of range");
  }
}

}  // namespace

Image decode_ppm(const std::string& bytes) {
  std::size_t pos = 0;
  if (next_token(bytes, pos) != "P6") throw ParseError("ppm: not a binary P6 file");
  const int w = parse_int(next_token(bytes, pos));
  const int h = parse_int(next_token(bytes, pos));
  const int maxval = parse_int(next_token(bytes, pos));
  if (maxval != 255) throw ParseError("ppm: only maxval 255 is supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) throw ParseError("ppm: truncated header");
  ++pos;  // single whitespace before the raster
  const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3;
  if (bytes.size() - pos < need) throw ParseError("ppm: truncated pixel data");
  Image img(w, h);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    for (std::size_t c = 0; c < 3; ++c) img.pixels[i][c] = static_cast<std::uint8_t>(bytes[pos + i * 3 + c]);
  }
  return img;
}

Image load_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_ppm(bytes);
}

std::string encode_ppm(const Image& img) {
  std::ostringstream out;
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  std::string s = out.str();
  s.reserve(s.size() + img.pixels.size() * 3);
  for (const auto& p : img.pixels)
    for (auto c : p) s.push_back(static_cast<char>(c));
  return s;
}

void save_ppm(const Image& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const std::string s = encode_ppm(img);
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "salt-and-pepper" || s == "salt_and_pepper" || s == "sp") return NoiseKind::salt_and_pepper;
  if (s == "gaussian") return NoiseKind::gaussian;
  throw std::invalid_argument("unknown noise kind '" + s + "'");
}

Image add_noise(const Image& img, NoiseKind kind, double param, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Image out = img;
  switch (kind) {
    case NoiseKind::salt_and_pepper: {
      if (param < 0.0 || param > 1.0) throw std::invalid_argument("salt-and-pepper density must be in [0, 1]");
      for (auto& p : out.pixels) {
        for (auto& c : p) {
          const double u = uniform();
          if (u < param / 2.0) c = 0;
          else if (u < param) c = 255;
        }
      }
      break;
    }
    case NoiseKind::gaussian: {
      if (param < 0.0) throw std::invalid_argument("gaussian sigma must be nonnegative");
      for (auto& p : out.pixels) {
        for (auto& c : p) {
          // Box-Muller over raw engine output.
          const double u1 = 1.0 - uniform(), u2 = uniform();
          const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
          c = static_cast<std::uint8_t>(std::clamp(std::round(c + param * z), 0.0, 255.0));
        }
      }
      break;
    }
  }
  return out;
}

std::uint64_t image_checksum(const Image& img) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  for (int shift = 0; shift < 32; shift += 8) {
    feed(static_cast<std::uint8_t>(static_cast<std::uint32_t>(img.width) >> shift));
    feed(static_cast<std::uint8_t>(static_cast<std::uint32_t>(img.height) >> shift));
  }
  for (const auto& p : img.pixels)
    for (auto c : p) feed(c);
  return h;
}

}  // namespace snn
