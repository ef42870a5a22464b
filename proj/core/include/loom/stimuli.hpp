#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "loom/detection.hpp"
#include "loom/field.hpp"

namespace loom {

enum class ScenarioKind { kLoomingDisk, kTranslatingBar, kLoomingOverStripes };
enum class Heading { kRight, kLeft, kUp, kDown };

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view name);
std::string_view to_string(Heading heading);
Heading parse_heading(std::string_view name);

/// Synthetic test scene. Frames are numbered 1..steps; the motion windows are
/// inclusive frame ranges during which the scene changes from frame t to t+1.
struct Scenario {
  ScenarioKind kind = ScenarioKind::kLoomingDisk;
  int width = 128;
  int height = 128;
  int steps = 130;

  double foreground_gray = 0.0;
  double background_gray = 255.0;
  bool inverted = false;  // final frames become 255 - F

  int approach_start = 10;
  int approach_end = 55;
  int recede_start = 75;
  int recede_end = 120;

  // Disk: radius grows by stimulus_k * exp(0.001 t) px per approach step and
  // shrinks along the mirrored schedule.
  double stimulus_k = 1.0;
  double initial_radius = 8.0;
  double center_x = 64.0;
  double center_y = 64.0;

  // Bar: moves along `heading` during the approach window and back during the
  // recede window. thickness is the extent along the motion, length across it.
  Heading bar_heading = Heading::kRight;
  int bar_speed = 2;
  int bar_thickness = 8;
  int bar_length = 48;
  int bar_start = 10;  // leading-axis offset of the bar's near edge from the frame edge it leaves

  // Background stripes (vertical, drifting right every step).
  int stripe_width = 4;
  int stripe_spacing = 12;
  int stripe_speed = 2;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws std::invalid_argument listing violated constraints.
void validate(const Scenario& s);

struct FrameSequence {
  std::vector<Field> frames;  // raw gray levels, integral values in [0, 255]
  bool clamped = false;       // geometry had to be limited to the frame
};

FrameSequence generate(const Scenario& scenario);

/// Disk radius at frame t (1-based) before any clamping.
double disk_radius(const Scenario& s, int t);

/// Offset of the bar along its heading at frame t, in pixels.
int bar_offset(const Scenario& s, int t);

/// Axis-aligned bar rectangle at frame t: [x0, x1) x [y0, y1).
struct Rect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};
Rect bar_rect(const Scenario& s, int t);

/// |mean(target) - mean(surround)| / 255 over raw gray values.
double weber_contrast(const Field& raw_frame, std::span<const Pixel> target_region,
                      std::span<const Pixel> surround_region);

/// Disk scenario with a light background and the target gray chosen for contrast c.
Scenario disk_with_contrast(double contrast, double stimulus_k = 1.0);

/// Raw [0, 255] frame to the [0, 1] scale the network consumes.
Field normalize_gray(const Field& raw);

std::string serialize(const Scenario& s);
Scenario parse_scenario(std::string_view text, const Scenario& base = Scenario{});

}  // namespace loom
