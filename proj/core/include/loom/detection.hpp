#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "loom/field.hpp"

namespace loom {

/// Maps the summed membrane potential into [0.5, 1): 1 / (1 + exp(-|u| / N)).
double membrane_to_output(double u, int neuron_count);

/// floor(exp(K_sp (out - T_sp))).
std::int64_t output_to_spikes(double out, double spike_scale, double spike_threshold);

/// Sliding spike-frequency test. The decision statistic is the sum of the
/// current count and the previous `window` counts divided by window * dt;
/// the divisor stays fixed while the history is still filling up.
class SpikeState {
 public:
  SpikeState(int window, double dt, double threshold);

  /// Feeds one frame's spike count; returns the collision flag for that frame.
  bool collision_warning(std::int64_t spike);

  /// Frequency the last call compared against the threshold.
  double last_frequency() const { return last_frequency_; }
  const std::deque<std::int64_t>& history() const { return history_; }

 private:
  int window_;
  double dt_;
  double threshold_;
  std::deque<std::int64_t> history_;  // most recent at the back, at most window_ entries
  double last_frequency_ = 0.0;
};

struct Pixel {
  int x = 0;
  int y = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Row-major ordering (y, then x).
bool scan_order_less(const Pixel& a, const Pixel& b);

struct Cluster {
  std::vector<Pixel> members;  // row-major
};

/// DBSCAN over Euclidean pixel distance. A point is core when at least
/// `min_pts` points (itself included) lie within `eps`. Points are visited in
/// row-major order regardless of input order; border points join the first
/// cluster that reaches them. Duplicate pixels are merged. Noise is dropped.
std::vector<Cluster> cluster_targets(std::span<const Pixel> pixels, double eps, int min_pts);

/// Nonzero pixels of a mask (or of the product of two masks).
std::vector<Pixel> mask_pixels(const Field& mask);
std::vector<Pixel> mask_pixels(const Field& mask_a, const Field& mask_b);

struct TargetEstimate {
  double x = 0.0;  // centroid column
  double y = 0.0;  // centroid row
  double phi = 0.0;     // atan2(mean V sin(phi_hat), mean V cos(phi_hat))
  double energy = 0.0;  // length of the mean energy vector
  double mean_member_energy = 0.0;
  int member_count = 0;
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  std::vector<Pixel> members;
};

/// Vector-mean direction and energy of a cluster. Throws std::invalid_argument
/// for an empty cluster.
TargetEstimate population_code(const Cluster& cluster, const Field& v, const Field& phi_hat);

}  // namespace loom
