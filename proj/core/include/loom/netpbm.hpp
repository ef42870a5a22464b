#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loom/field.hpp"

namespace loom {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a binary P5 image with maxval 255 as raw gray values.
Field read_pgm(const std::filesystem::path& path);

/// Writes a binary P5 image; values are rounded and clamped to [0, 255].
void write_pgm(const std::filesystem::path& path, const Field& raw);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // interleaved RGB, row-major

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
  std::array<std::uint8_t, 3> get(int x, int y) const;

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Binary P6 with optional header comment lines (written after the magic number).
void write_ppm(const std::filesystem::path& path, const RgbImage& image,
               const std::vector<std::string>& comments = {});
RgbImage read_ppm(const std::filesystem::path& path);

/// Numbered frames on disk, e.g. frame_0001.pgm .. frame_0130.pgm.
/// Files are taken in lexicographic order; the trailing digits of each name
/// must form a gapless sequence and all frames must share one size.
class FrameDirectory {
 public:
  /// Throws FormatError on a numbering gap or when no .pgm files exist.
  explicit FrameDirectory(const std::filesystem::path& dir);

  std::size_t size() const { return files_.size(); }
  const std::vector<std::filesystem::path>& files() const { return files_; }

  /// Next frame normalized to [0, 1], or nullopt at the end. Throws FormatError
  /// on malformed files or inconsistent dimensions.
  std::optional<Field> next();
  /// Next frame as raw gray values.
  std::optional<Field> next_raw();

 private:
  std::vector<std::filesystem::path> files_;
  std::size_t cursor_ = 0;
  int width_ = 0;
  int height_ = 0;
};

inline FrameDirectory ingest(const std::filesystem::path& dir) { return FrameDirectory(dir); }

/// Writes raw frames as frame_0001.pgm, ...; returns the paths in order.
std::vector<std::filesystem::path> write_frames(const std::filesystem::path& dir,
                                                const std::vector<Field>& raw_frames);

}  // namespace loom
