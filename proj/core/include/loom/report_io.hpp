#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "loom/netpbm.hpp"
#include "loom/pipeline.hpp"

namespace loom {

/// Plain decimal with 9 significant digits and no exponent ("0.500000000",
/// "-1234.56789"); zero prints as "0".
std::string format_sig9(double v);

/// CSV with header "t,u,out,spike,collision,n_targets".
void write_timeseries(std::ostream& out, std::span<const FrameReport> reports);
void emit_timeseries(const std::filesystem::path& path, std::span<const FrameReport> reports);

/// One JSON object per (frame, target): {"t","X","Y","phi","energy","n_points"}.
void write_targets(std::ostream& out, std::span<const FrameReport> reports);
void emit_targets(const std::filesystem::path& path, std::span<const FrameReport> reports);

/// Pixels per unit of cluster energy used for overlay arrows. Arrow length is
/// capped at the frame diagonal.
inline constexpr double kDefaultArrowScale = 40.0;

/// Gray frame (raw [0, 255]) in RGB with a red bounding box per target and a
/// blue arrow from its centroid along phi, arrow_scale * energy pixels long.
RgbImage render_overlay(const Field& raw_frame, const FrameReport& report,
                        double arrow_scale = kDefaultArrowScale);

/// Tip of the overlay arrow for a target, rounded to pixels. max_length <= 0
/// means uncapped.
Pixel arrow_tip(const TargetEstimate& target, double arrow_scale, double max_length = 0.0);

/// Writes G, G_sigma, M_a, M_d, V and V' of one frame as 8-bit PGMs
/// (signed maps min-max scaled, masks as 0/255).
void dump_debug_maps(const std::filesystem::path& dir, const FrameReport& report);

}  // namespace loom
