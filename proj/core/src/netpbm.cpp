#include "loom/netpbm.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

namespace loom {
namespace {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class HeaderReader {
 public:
  HeaderReader(const std::vector<std::uint8_t>& bytes, const fs::path& path) : b_(bytes), path_(path) {}

  std::string magic() {
    if (b_.size() < 2) fail("truncated header");
    pos_ = 2;
    return {static_cast<char>(b_[0]), static_cast<char>(b_[1])};
  }

  int integer() {
    skip_space_and_comments();
    if (pos_ >= b_.size() || !std::isdigit(b_[pos_])) fail("expected integer in header");
    long v = 0;
    while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
      v = v * 10 + (b_[pos_++] - '0');
      if (v > 1'000'000) fail("header value too large");
    }
    return static_cast<int>(v);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= b_.size() || !std::isspace(b_[pos_])) fail("missing separator before raster");
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw FormatError(path_.string() + ": " + what);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (std::isspace(b_[pos_])) {
        ++pos_;
      } else if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& b_;
  fs::path path_;
  std::size_t pos_ = 0;
};

struct Raster {
  int width;
  int height;
  std::size_t offset;
};

Raster parse_header(const std::vector<std::uint8_t>& bytes, const fs::path& path, const char* expected_magic,
                    int channels) {
  HeaderReader h(bytes, path);
  if (h.magic() != expected_magic) h.fail(std::string("not a binary ") + expected_magic + " file");
  const int w = h.integer();
  const int ht = h.integer();
  const int maxval = h.integer();
  if (w <= 0 || ht <= 0) h.fail("non-positive dimensions");
  if (maxval != 255) h.fail("unsupported maxval " + std::to_string(maxval) + " (only 255)");
  const std::size_t start = h.raster_start();
  const std::size_t need = static_cast<std::size_t>(w) * ht * channels;
  if (bytes.size() < start + need) h.fail("truncated raster");
  return {w, ht, start};
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

// Trailing digits of a filename stem, or -1.
long frame_number(const fs::path& p) {
  const std::string stem = p.stem().string();
  std::size_t i = stem.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(stem[i - 1]))) --i;
  if (i == stem.size()) return -1;
  return std::stol(stem.substr(i));
}

}  // namespace

void RgbImage::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  if (!contains(x, y)) return;
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  data[i] = r;
  data[i + 1] = g;
  data[i + 2] = b;
}

std::array<std::uint8_t, 3> RgbImage::get(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 3;
  return {data[i], data[i + 1], data[i + 2]};
}

Field read_pgm(const fs::path& path) {
  const auto bytes = read_all(path);
  const Raster r = parse_header(bytes, path, "P5", 1);
  Field f(r.width, r.height);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = bytes[r.offset + i];
  return f;
}

void write_pgm(const fs::path& path, const Field& raw) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P5\n" << raw.width() << ' ' << raw.height() << "\n255\n";
  std::vector<char> buf(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) buf[i] = static_cast<char>(to_byte(raw[i]));
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_ppm(const fs::path& path, const RgbImage& image, const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P6\n";
  for (const auto& c : comments) out << "# " << c << '\n';
  out << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data.data()), static_cast<std::streamsize>(image.data.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

RgbImage read_ppm(const fs::path& path) {
  const auto bytes = read_all(path);
  const Raster r = parse_header(bytes, path, "P6", 3);
  RgbImage img(r.width, r.height);
  std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(r.offset), img.data.size(), img.data.begin());
  return img;
}

FrameDirectory::FrameDirectory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FormatError("not a directory: " + dir.string());
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files_.push_back(entry.path());
  }
  std::sort(files_.begin(), files_.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  if (files_.empty()) throw FormatError("no .pgm frames in " + dir.string());

  long expected = frame_number(files_.front());
  if (expected < 0) throw FormatError("frame name lacks a number: " + files_.front().string());
  for (const auto& f : files_) {
    const long n = frame_number(f);
    if (n != expected) {
      throw FormatError("frame numbering gap: expected " + std::to_string(expected) + ", found " +
                        f.filename().string());
    }
    ++expected;
  }
}

std::optional<Field> FrameDirectory::next_raw() {
  if (cursor_ >= files_.size()) return std::nullopt;
  Field f = read_pgm(files_[cursor_]);
  if (cursor_ == 0) {
    width_ = f.width();
    height_ = f.height();
  } else if (f.width() != width_ || f.height() != height_) {
    throw FormatError("inconsistent frame size in " + files_[cursor_].string());
  }
  ++cursor_;
  return f;
}

std::optional<Field> FrameDirectory::next() {
  auto raw = next_raw();
  if (raw) {
    for (double& v : raw->values()) v /= 255.0;
  }
  return raw;
}

std::vector<fs::path> write_frames(const fs::path& dir, const std::vector<Field>& raw_frames) {
  fs::create_directories(dir);
  const int digits = std::max<int>(4, static_cast<int>(std::to_string(raw_frames.size()).size()));
  std::vector<fs::path> paths;
  paths.reserve(raw_frames.size());
  for (std::size_t i = 0; i < raw_frames.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "frame_%0*zu.pgm", digits, i + 1);
    paths.push_back(dir / name);
    write_pgm(paths.back(), raw_frames[i]);
  }
  return paths;
}

}  // namespace loom
