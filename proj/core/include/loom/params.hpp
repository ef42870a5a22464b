#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace loom {

enum class BorderPolicy { kReplicate };

/// Mixing weights for the ON/OFF channels. The text order used in config
/// files and on the command line is [v+, v-, w1+, w2-, w1-, w2+].
struct ChannelWeights {
  double v_plus = 1.0;
  double v_minus = 1.0;
  double w1_plus = 1.0;
  double w2_minus = 0.0;
  double w1_minus = 0.5;
  double w2_plus = 0.0;

  std::array<double, 6> to_array() const {
    return {v_plus, v_minus, w1_plus, w2_minus, w1_minus, w2_plus};
  }
  static ChannelWeights from_array(const std::array<double, 6>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
  /// Weights that reproduce the same responses on a polarity-inverted input.
  ChannelWeights polarity_swapped() const {
    return {v_minus, v_plus, w1_minus, w2_plus, w1_plus, w2_minus};
  }

  friend bool operator==(const ChannelWeights&, const ChannelWeights&) = default;
};

/// Every tunable constant of the network. Immutable once a pipeline is built.
struct ModelParams {
  int frame_width = 128;
  int frame_height = 128;
  double dt = 0.05;

  // Gray level the model sees for full-scale white. Frames arrive in [0, 1]
  // and are multiplied by this before the photoreceptor layer.
  double intensity_scale = 255.0;

  // Photoreceptor persistence: p_i = 1 / (1 + exp(u * i)), i = 1..depth.
  int persistence_depth = 3;
  double persistence_u = 1.0;

  // Difference-of-Gaussians bandpass.
  double dog_gain = 5.0;
  double dog_sigma1 = 1.0;
  double dog_sigma2 = 3.0;

  // Leaky-integrator cascade: tau dz_n/dt = -A z_n + C z_{n-1}, output K (z_n - z_{n+1}).
  double cascade_gain = 5.0;
  double cascade_decay = 60.0;
  double cascade_transmission = 60.0;
  double cascade_tau = 5.0;
  int n_fast = 2;
  int n_slow = 4;

  // Directional Gabor bank.
  double gabor_lambda = 4.0;
  double gabor_sigma = 0.3;
  int orientation_count = 8;

  // Antagonistic center-surround kernel.
  double cs_lambda = 4.0;
  double cs_sigma = 0.3;
  double cs_psi = 0.0;

  // Attention.
  double attention_sigma = 8.0;
  double gamma_a = 0.005;
  double gamma_d = 0.005;
  ChannelWeights channel_weights{};
  int top_k = 1;

  // Spike mapping and collision warning (vehicle defaults).
  double spike_scale = 10.0;
  double spike_threshold = 0.7;
  int spike_window = 4;
  double warn_threshold = 1.0;

  // Target clustering.
  double cluster_eps = 5.0;
  int cluster_min_pts = 8;

  int kernel_size_small = 5;
  int kernel_size_blur = 31;
  BorderPolicy border_policy = BorderPolicy::kReplicate;

  /// Normalizer of the output sigmoid; 0 means width * height.
  int neuron_count = 0;

  int effective_neuron_count() const {
    return neuron_count > 0 ? neuron_count : frame_width * frame_height;
  }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

ModelParams default_params();

/// Human-readable list of violated invariants; empty when the params are usable.
std::vector<std::string> validate(const ModelParams& p);

class ConfigParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// Parses a `key = value` document ('#' starts a comment) on top of `base`.
/// Unknown keys and malformed lines raise ConfigParseError; the merged result
/// is validated and raises ValidationError listing every violation.
ModelParams load_params(std::string_view config_text, const ModelParams& base = default_params());
ModelParams load_params_file(const std::string& path, const ModelParams& base = default_params());

/// Writes every field in load_params syntax; load_params(serialize(p)) == p.
std::string serialize(const ModelParams& p);

/// Parses "a,b,c,d,e,f" (commas and/or whitespace) in [v+, v-, w1+, w2-, w1-, w2+] order.
ChannelWeights parse_channel_weights(std::string_view text);

}  // namespace loom
