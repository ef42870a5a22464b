#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "loom/approach.hpp"
#include "loom/detection.hpp"
#include "loom/direction.hpp"
#include "loom/field.hpp"
#include "loom/kernels.hpp"
#include "loom/params.hpp"
#include "loom/retina.hpp"
#include "loom/temporal.hpp"

namespace loom {

enum class TargetReporting {
  kEveryFrame,      // cluster and report on every frame
  kCollisionGated,  // only frames whose collision flag is set
};

struct PipelineOptions {
  bool keep_maps = false;
  TargetReporting targets = TargetReporting::kEveryFrame;
  // Ablation switches: force a mask to all ones.
  bool disable_approach_mask = false;
  bool disable_direction_mask = false;
};

/// Intermediate layers of one frame, kept only when PipelineOptions::keep_maps is set.
struct FrameMaps {
  Field photoreceptor;
  BipolarBundle bundle;
  DirectionField direction;
  CenterSurroundMaps center_surround;
  GanglionMaps ganglion;
  Field g;
  ApproachAttention approach;
  DirectionalAttention directional;
  Field g_prime;
};

struct FrameReport {
  int t = 0;
  double u = 0.0;
  double out = 0.5;
  std::int64_t spike = 0;
  bool collision = false;
  double spike_frequency = 0.0;
  std::vector<std::size_t> inhibited_orientations;
  std::vector<TargetEstimate> targets;
  std::optional<FrameMaps> maps;
};

/// Streaming detector. Owns all temporal state; frames go in one at a time on
/// the [0, 1] intensity scale.
class Pipeline {
 public:
  /// Throws ValidationError for invalid params.
  explicit Pipeline(ModelParams params, PipelineOptions options = {});

  /// Records frame 1. Throws std::logic_error if already primed and
  /// DimensionError on a size mismatch.
  void prime(const Field& first_frame);
  bool primed() const { return photoreceptor_.primed(); }

  /// Processes the next frame and returns its report.
  FrameReport step(const Field& frame);

  int frame_index() const { return t_; }
  const ModelParams& params() const { return params_; }
  const PipelineOptions& options() const { return options_; }

 private:
  ModelParams params_;
  PipelineOptions options_;

  Kernel dog_;
  Kernel center_surround_;
  Kernel blur_;
  DirectionStage direction_;

  PhotoreceptorState photoreceptor_;
  CascadeState on_cascade_;
  CascadeState off_cascade_;
  SpikeState spikes_;
  int t_ = 0;
};

/// Primes with frames[0] and steps through the rest; returns one report per
/// frame from the second on.
std::vector<FrameReport> run_sequence(Pipeline& pipeline, std::span<const Field> frames);

}  // namespace loom
