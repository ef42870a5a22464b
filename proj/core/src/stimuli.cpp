#include "loom/stimuli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <variant>

namespace loom {
namespace {

int completed_steps(int t, int start, int end) {
  return std::clamp(t - start, 0, end - start + 1);
}

double approach_rate(const Scenario& s, int step) { return s.stimulus_k * std::exp(0.001 * step); }

std::string_view trim(std::string_view v) {
  const auto a = v.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  return v.substr(a, v.find_last_not_of(" \t\r") - a + 1);
}

using Member = std::variant<int Scenario::*, double Scenario::*, bool Scenario::*>;
struct ScenarioField {
  std::string_view key;
  Member member;
};

constexpr ScenarioField kScenarioFields[] = {
    {"width", &Scenario::width},
    {"height", &Scenario::height},
    {"steps", &Scenario::steps},
    {"foreground_gray", &Scenario::foreground_gray},
    {"background_gray", &Scenario::background_gray},
    {"inverted", &Scenario::inverted},
    {"approach_start", &Scenario::approach_start},
    {"approach_end", &Scenario::approach_end},
    {"recede_start", &Scenario::recede_start},
    {"recede_end", &Scenario::recede_end},
    {"stimulus_k", &Scenario::stimulus_k},
    {"initial_radius", &Scenario::initial_radius},
    {"center_x", &Scenario::center_x},
    {"center_y", &Scenario::center_y},
    {"bar_speed", &Scenario::bar_speed},
    {"bar_thickness", &Scenario::bar_thickness},
    {"bar_length", &Scenario::bar_length},
    {"bar_start", &Scenario::bar_start},
    {"stripe_width", &Scenario::stripe_width},
    {"stripe_spacing", &Scenario::stripe_spacing},
    {"stripe_speed", &Scenario::stripe_speed},
};

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kLoomingDisk: return "looming_disk";
    case ScenarioKind::kTranslatingBar: return "translating_bar";
    case ScenarioKind::kLoomingOverStripes: return "looming_over_stripes";
  }
  return "unknown";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
  for (auto k : {ScenarioKind::kLoomingDisk, ScenarioKind::kTranslatingBar, ScenarioKind::kLoomingOverStripes}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown scenario kind: " + std::string(name));
}

std::string_view to_string(Heading h) {
  switch (h) {
    case Heading::kRight: return "right";
    case Heading::kLeft: return "left";
    case Heading::kUp: return "up";
    case Heading::kDown: return "down";
  }
  return "unknown";
}

Heading parse_heading(std::string_view name) {
  for (auto h : {Heading::kRight, Heading::kLeft, Heading::kUp, Heading::kDown}) {
    if (to_string(h) == name) return h;
  }
  throw std::invalid_argument("unknown heading: " + std::string(name));
}

void validate(const Scenario& s) {
  std::string problems;
  auto require = [&](bool ok, const char* msg) {
    if (!ok) problems += std::string("\n  - ") + msg;
  };
  require(s.width > 0 && s.height > 0, "frame size must be positive");
  require(s.steps >= 2, "steps must be >= 2");
  require(s.foreground_gray >= 0 && s.foreground_gray <= 255 && s.background_gray >= 0 &&
              s.background_gray <= 255,
          "gray levels must lie in [0, 255]");
  // Windows may run past `steps`; the sequence is then cut short.
  require(s.approach_start >= 1 && s.approach_start <= s.approach_end,
          "approach window must start at frame >= 1 and end at or after its start");
  require(s.recede_start >= 1 && s.recede_start <= s.recede_end,
          "recede window must start at frame >= 1 and end at or after its start");
  require(s.approach_end < s.recede_start || s.recede_end < s.approach_start,
          "approach and recede windows must be disjoint");
  require(s.stimulus_k >= 0.0 && s.initial_radius >= 0.0, "disk rate and radius must be non-negative");
  require(s.bar_speed >= 0 && s.bar_thickness > 0 && s.bar_length > 0, "bar geometry must be positive");
  require(s.stripe_width > 0 && s.stripe_spacing >= 0 && s.stripe_speed >= 0, "stripe geometry must be positive");
  if (!problems.empty()) throw std::invalid_argument("invalid scenario:" + problems);
}

double disk_radius(const Scenario& s, int t) {
  double r = s.initial_radius;
  const int grown = completed_steps(t, s.approach_start, s.approach_end);
  for (int i = 0; i < grown; ++i) r += approach_rate(s, s.approach_start + i);
  // Recession replays the approach schedule backwards.
  const int shrunk = completed_steps(t, s.recede_start, s.recede_end);
  for (int i = 0; i < shrunk; ++i) r -= approach_rate(s, s.approach_end - i);
  return std::max(r, 0.0);
}

int bar_offset(const Scenario& s, int t) {
  return s.bar_speed * (completed_steps(t, s.approach_start, s.approach_end) -
                        completed_steps(t, s.recede_start, s.recede_end));
}

Rect bar_rect(const Scenario& s, int t) {
  const int off = bar_offset(s, t);
  Rect r;
  const bool horizontal_motion = s.bar_heading == Heading::kRight || s.bar_heading == Heading::kLeft;
  if (horizontal_motion) {
    r.y0 = s.height / 2 - s.bar_length / 2;
    r.y1 = r.y0 + s.bar_length;
    if (s.bar_heading == Heading::kRight) {
      r.x0 = s.bar_start + off;
      r.x1 = r.x0 + s.bar_thickness;
    } else {
      r.x1 = s.width - s.bar_start - off;
      r.x0 = r.x1 - s.bar_thickness;
    }
  } else {
    r.x0 = s.width / 2 - s.bar_length / 2;
    r.x1 = r.x0 + s.bar_length;
    if (s.bar_heading == Heading::kDown) {
      r.y0 = s.bar_start + off;
      r.y1 = r.y0 + s.bar_thickness;
    } else {
      r.y1 = s.height - s.bar_start - off;
      r.y0 = r.y1 - s.bar_thickness;
    }
  }
  return r;
}

FrameSequence generate(const Scenario& s) {
  validate(s);
  FrameSequence seq;
  seq.frames.reserve(static_cast<std::size_t>(s.steps));

  const double max_radius = std::min({s.center_x, s.center_y, s.width - 1 - s.center_x, s.height - 1 - s.center_y});
  const int period = s.stripe_width + s.stripe_spacing;
  const double fg = s.foreground_gray;
  const double bg = s.background_gray;

  for (int t = 1; t <= s.steps; ++t) {
    Field f(s.width, s.height, bg);

    if (s.kind == ScenarioKind::kLoomingOverStripes) {
      const int shift = s.stripe_speed * (t - 1);
      for (int x = 0; x < s.width; ++x) {
        const int phase = ((x - shift) % period + period) % period;
        if (phase >= s.stripe_width) continue;
        for (int y = 0; y < s.height; ++y) f(x, y) = fg;
      }
    }

    if (s.kind == ScenarioKind::kTranslatingBar) {
      const Rect r = bar_rect(s, t);
      if (r.x0 < 0 || r.y0 < 0 || r.x1 > s.width || r.y1 > s.height) seq.clamped = true;
      for (int y = std::max(r.y0, 0); y < std::min(r.y1, s.height); ++y) {
        for (int x = std::max(r.x0, 0); x < std::min(r.x1, s.width); ++x) f(x, y) = fg;
      }
    } else {
      double radius = disk_radius(s, t);
      if (radius > max_radius) {
        radius = std::max(max_radius, 0.0);
        seq.clamped = true;
      }
      // Coverage approximated from the pixel-center distance to the rim.
      const int x0 = std::max(0, static_cast<int>(std::floor(s.center_x - radius - 1)));
      const int x1 = std::min(s.width - 1, static_cast<int>(std::ceil(s.center_x + radius + 1)));
      const int y0 = std::max(0, static_cast<int>(std::floor(s.center_y - radius - 1)));
      const int y1 = std::min(s.height - 1, static_cast<int>(std::ceil(s.center_y + radius + 1)));
      for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
          const double d = std::hypot(x - s.center_x, y - s.center_y);
          const double cover = std::clamp(radius - d + 0.5, 0.0, 1.0);
          if (cover > 0.0) f(x, y) = f(x, y) + (fg - f(x, y)) * cover;
        }
      }
    }

    for (double& v : f.values()) {
      v = std::round(v);
      if (s.inverted) v = 255.0 - v;
    }
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

double weber_contrast(const Field& raw, std::span<const Pixel> target, std::span<const Pixel> surround) {
  if (target.empty() || surround.empty()) throw std::invalid_argument("weber_contrast: empty region");
  auto mean = [&](std::span<const Pixel> region) {
    double acc = 0.0;
    for (const Pixel& p : region) acc += raw(p.x, p.y);
    return acc / static_cast<double>(region.size());
  };
  return std::abs(mean(target) - mean(surround)) / 255.0;
}

Scenario disk_with_contrast(double contrast, double stimulus_k) {
  Scenario s;
  s.kind = ScenarioKind::kLoomingDisk;
  s.background_gray = 255.0;
  s.foreground_gray = std::round(255.0 * (1.0 - contrast));
  s.stimulus_k = stimulus_k;
  return s;
}

Field normalize_gray(const Field& raw) {
  Field out = raw;
  for (double& v : out.values()) v /= 255.0;
  return out;
}

std::string serialize(const Scenario& s) {
  std::string out = "kind = " + std::string(to_string(s.kind)) + "\n";
  out += "bar_heading = " + std::string(to_string(s.bar_heading)) + "\n";
  for (const auto& f : kScenarioFields) {
    out += std::string(f.key) + " = ";
    std::visit(
        [&](auto m) {
          using T = std::remove_cvref_t<decltype(s.*m)>;
          if constexpr (std::is_same_v<T, bool>) {
            out += s.*m ? "true" : "false";
          } else if constexpr (std::is_same_v<T, int>) {
            out += std::to_string(s.*m);
          } else {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", s.*m);
            out += buf;
          }
        },
        f.member);
    out += '\n';
  }
  return out;
}

Scenario parse_scenario(std::string_view text, const Scenario& base) {
  Scenario s = base;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("scenario line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const std::string where = "scenario line " + std::to_string(line_no) + " (" + std::string(key) + ")";

    if (key == "kind") {
      s.kind = parse_scenario_kind(value);
      continue;
    }
    if (key == "bar_heading") {
      s.bar_heading = parse_heading(value);
      continue;
    }
    bool known = false;
    for (const auto& f : kScenarioFields) {
      if (f.key != key) continue;
      known = true;
      const bool ok = std::visit(
          [&](auto m) {
            using T = std::remove_cvref_t<decltype(s.*m)>;
            if constexpr (std::is_same_v<T, bool>) {
              if (value == "true" || value == "1") s.*m = true;
              else if (value == "false" || value == "0") s.*m = false;
              else return false;
              return true;
            } else {
              const char* e = value.data() + value.size();
              auto [p, ec] = std::from_chars(value.data(), e, s.*m);
              return ec == std::errc{} && p == e;
            }
          },
          f.member);
      if (!ok) throw std::invalid_argument(where + ": malformed value");
      break;
    }
    if (!known) throw std::invalid_argument(where + ": unknown key");
  }
  validate(s);
  return s;
}

}  // namespace loom
