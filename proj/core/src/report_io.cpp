#include "loom/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <cstring>
#include <numbers>

#include <json.hpp>

namespace loom {
namespace {

namespace fs = std::filesystem;

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void draw_line(RgbImage& img, int x0, int y0, int x1, int y1, std::array<std::uint8_t, 3> c) {
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    img.set(x0, y0, c[0], c[1], c[2]);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

Field scaled_for_display(const Field& f) {
  const auto [lo, hi] = std::minmax_element(f.values().begin(), f.values().end());
  Field out(f.width(), f.height());
  const double span = *hi - *lo;
  if (span <= 0.0) return out;
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = 255.0 * (f[i] - *lo) / span;
  return out;
}

Field mask_for_display(const Field& m) {
  Field out = m;
  for (double& v : out.values()) v = v != 0.0 ? 255.0 : 0.0;
  return out;
}

}  // namespace

std::string format_sig9(double v) {
  if (v == 0.0 || !std::isfinite(v)) {
    if (v == 0.0) return "0";
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  }
  // The exponent after rounding to 9 significant digits decides the decimals.
  char sci[64];
  std::snprintf(sci, sizeof sci, "%.8e", v);
  const int exp10 = std::atoi(std::strchr(sci, 'e') + 1);
  const int decimals = std::max(0, 8 - exp10);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

void write_timeseries(std::ostream& out, std::span<const FrameReport> reports) {
  out << "t,u,out,spike,collision,n_targets\n";
  for (const auto& r : reports) {
    out << r.t << ',' << format_sig9(r.u) << ',' << format_sig9(r.out) << ',' << r.spike << ','
        << (r.collision ? "true" : "false") << ',' << r.targets.size() << '\n';
  }
}

void emit_timeseries(const fs::path& path, std::span<const FrameReport> reports) {
  auto out = open_for_write(path);
  write_timeseries(out, reports);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_targets(std::ostream& out, std::span<const FrameReport> reports) {
  for (const auto& r : reports) {
    for (const auto& t : r.targets) {
      nlohmann::ordered_json j;
      j["t"] = r.t;
      j["X"] = t.x;
      j["Y"] = t.y;
      j["phi"] = t.phi;
      j["energy"] = t.energy;
      j["n_points"] = t.member_count;
      out << j.dump() << '\n';
    }
  }
}

void emit_targets(const fs::path& path, std::span<const FrameReport> reports) {
  auto out = open_for_write(path);
  write_targets(out, reports);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Pixel arrow_tip(const TargetEstimate& t, double arrow_scale, double max_length) {
  double len = arrow_scale * t.energy;
  if (max_length > 0.0) len = std::min(len, max_length);
  return {static_cast<int>(std::lround(t.x + len * std::cos(t.phi))),
          static_cast<int>(std::lround(t.y + len * std::sin(t.phi)))};
}

RgbImage render_overlay(const Field& raw, const FrameReport& report, double arrow_scale) {
  RgbImage img(raw.width(), raw.height());
  for (int y = 0; y < raw.height(); ++y) {
    for (int x = 0; x < raw.width(); ++x) {
      const auto g = static_cast<std::uint8_t>(std::clamp(std::round(raw(x, y)), 0.0, 255.0));
      img.set(x, y, g, g, g);
    }
  }
  constexpr std::array<std::uint8_t, 3> kBox{255, 0, 0};
  constexpr std::array<std::uint8_t, 3> kArrow{0, 0, 255};
  for (const auto& t : report.targets) {
    draw_line(img, t.min_x, t.min_y, t.max_x, t.min_y, kBox);
    draw_line(img, t.max_x, t.min_y, t.max_x, t.max_y, kBox);
    draw_line(img, t.max_x, t.max_y, t.min_x, t.max_y, kBox);
    draw_line(img, t.min_x, t.max_y, t.min_x, t.min_y, kBox);

    const int cx = static_cast<int>(std::lround(t.x));
    const int cy = static_cast<int>(std::lround(t.y));
    const Pixel tip = arrow_tip(t, arrow_scale, std::hypot(raw.width(), raw.height()));
    draw_line(img, cx, cy, tip.x, tip.y, kArrow);
    const double len = std::hypot(tip.x - cx, tip.y - cy);
    if (len >= 4.0) {
      const double head = std::max(2.0, 0.25 * len);
      for (double side : {-1.0, 1.0}) {
        const double a = t.phi + std::numbers::pi + side * std::numbers::pi / 6.0;
        draw_line(img, tip.x, tip.y, static_cast<int>(std::lround(tip.x + head * std::cos(a))),
                  static_cast<int>(std::lround(tip.y + head * std::sin(a))), kArrow);
      }
    }
  }
  return img;
}

void dump_debug_maps(const fs::path& dir, const FrameReport& report) {
  if (!report.maps) throw std::logic_error("dump_debug_maps: report carries no maps");
  fs::create_directories(dir);
  const FrameMaps& m = *report.maps;
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "_%04d.pgm", report.t);
  write_pgm(dir / ("g" + std::string(suffix)), scaled_for_display(m.g));
  write_pgm(dir / ("g_sigma" + std::string(suffix)), scaled_for_display(m.approach.g_sigma));
  write_pgm(dir / ("m_a" + std::string(suffix)), mask_for_display(m.approach.mask));
  write_pgm(dir / ("m_d" + std::string(suffix)), mask_for_display(m.directional.mask));
  write_pgm(dir / ("v" + std::string(suffix)), scaled_for_display(m.direction.v));
  write_pgm(dir / ("v_prime" + std::string(suffix)), scaled_for_display(m.directional.v_prime));
}

}  // namespace loom
