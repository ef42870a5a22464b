#include "loom/pipeline.hpp"

#include <stdexcept>

namespace loom {
namespace {

const ModelParams& checked(const ModelParams& p) {
  if (auto v = validate(p); !v.empty()) throw ValidationError(std::move(v));
  return p;
}

Field scaled(const Field& frame, double scale) {
  Field out = frame;
  for (double& v : out.values()) v *= scale;
  return out;
}

}  // namespace

Pipeline::Pipeline(ModelParams params, PipelineOptions options)
    : params_(checked(params)),
      options_(options),
      dog_(make_dog(params_.dog_gain, params_.dog_sigma1, params_.dog_sigma2, params_.kernel_size_small)),
      center_surround_(make_center_surround(params_.cs_lambda, params_.cs_sigma, params_.cs_psi,
                                            params_.kernel_size_small)),
      blur_(make_gaussian(params_.attention_sigma, params_.kernel_size_blur)),
      direction_(params_),
      photoreceptor_(params_.persistence_depth, params_.persistence_u),
      on_cascade_(params_.frame_width, params_.frame_height, params_.n_slow + 1, cascade_coefficients(params_)),
      off_cascade_(params_.frame_width, params_.frame_height, params_.n_slow + 1, cascade_coefficients(params_)),
      spikes_(params_.spike_window, params_.dt, params_.warn_threshold) {}

void Pipeline::prime(const Field& first_frame) {
  if (first_frame.width() != params_.frame_width || first_frame.height() != params_.frame_height) {
    throw DimensionError("prime: frame is " + std::to_string(first_frame.width()) + "x" +
                         std::to_string(first_frame.height()) + ", expected " +
                         std::to_string(params_.frame_width) + "x" + std::to_string(params_.frame_height));
  }
  photoreceptor_.prime(scaled(first_frame, params_.intensity_scale));
  t_ = 1;
}

FrameReport Pipeline::step(const Field& frame) {
  if (!primed()) throw std::logic_error("Pipeline::step before prime");
  const BorderPolicy border = params_.border_policy;

  // Photoreceptors and bipolar cells.
  Field p = photoreceptor_.step(scaled(frame, params_.intensity_scale));
  HalfWave split = half_wave_split(p);
  const Field plus0 = bipolar_bandpass(split.plus, dog_, border);
  const Field minus0 = bipolar_bandpass(split.minus, dog_, border);
  BipolarBundle bundle = bipolar_temporal(plus0, minus0, on_cascade_, off_cascade_, params_);

  // Lateral motion.
  DirectionField df = direction_.compute(bundle);

  // Radial motion.
  CenterSurroundMaps s = sac_center_surround(bundle, center_surround_, border);
  GanglionMaps ganglion = ganglion_push_pull(bundle, s);
  Field g = fuse_channels(ganglion, params_.channel_weights);

  // Attention.
  ApproachAttention approach = approach_attention(g, blur_, params_.gamma_a, border);
  DirectionalAttention directional = directional_attention(df, params_.top_k, blur_, params_.gamma_d, border);
  if (options_.disable_approach_mask) approach.mask.fill(1.0);
  if (options_.disable_direction_mask) directional.mask.fill(1.0);
  MaskedOutput masked = masked_output(g, approach.mask, directional.mask);

  // Decision.
  FrameReport report;
  report.t = ++t_;
  report.u = masked.u;
  report.out = membrane_to_output(masked.u, params_.effective_neuron_count());
  report.spike = output_to_spikes(report.out, params_.spike_scale, params_.spike_threshold);
  report.collision = spikes_.collision_warning(report.spike);
  report.spike_frequency = spikes_.last_frequency();
  report.inhibited_orientations = directional.inhibited;

  const bool want_targets = options_.targets == TargetReporting::kEveryFrame || report.collision;
  if (want_targets) {
    const std::vector<Pixel> roi = mask_pixels(approach.mask, directional.mask);
    for (const Cluster& c : cluster_targets(roi, params_.cluster_eps, params_.cluster_min_pts)) {
      report.targets.push_back(population_code(c, df.v, df.phi_hat));
    }
  }

  if (options_.keep_maps) {
    report.maps = FrameMaps{std::move(p),        std::move(bundle),   std::move(df),
                            std::move(s),        std::move(ganglion), std::move(g),
                            std::move(approach), std::move(directional), std::move(masked.g_prime)};
  }
  return report;
}

std::vector<FrameReport> run_sequence(Pipeline& pipeline, std::span<const Field> frames) {
  std::vector<FrameReport> reports;
  if (frames.empty()) return reports;
  pipeline.prime(frames.front());
  reports.reserve(frames.size() - 1);
  for (std::size_t i = 1; i < frames.size(); ++i) reports.push_back(pipeline.step(frames[i]));
  return reports;
}

}  // namespace loom
