#pragma once

#include <deque>
#include <utility>
#include <vector>

#include "loom/field.hpp"
#include "loom/kernels.hpp"
#include "loom/params.hpp"
#include "loom/temporal.hpp"

namespace loom {

/// Persistence coefficients p_i = 1 / (1 + exp(u i)) for i = 1..depth.
std::vector<double> persistence_coefficients(int depth, double u);

/// Luminance-change layer. Holds the previous frame and the last few outputs,
/// which feed back with geometric weights.
class PhotoreceptorState {
 public:
  PhotoreceptorState(int depth, double u);

  /// Records the first frame; no output exists until the second frame.
  void prime(const Field& first_frame);
  bool primed() const { return !previous_.empty(); }

  /// P = I_t - I_{t-1} + sum_i p_i P(t - i). Throws std::logic_error if not primed.
  Field step(const Field& frame);

  const std::vector<double>& coefficients() const { return coefficients_; }
  std::size_t history_size() const { return history_.size(); }

 private:
  std::vector<double> coefficients_;
  Field previous_;
  std::deque<Field> history_;  // front = most recent
};

struct HalfWave {
  Field plus;
  Field minus;
};

/// ON = (|P| + P) / 2, OFF = (|P| - P) / 2.
HalfWave half_wave_split(const Field& p);

inline Field bipolar_bandpass(const Field& b, const Kernel& dog,
                              BorderPolicy border = BorderPolicy::kReplicate) {
  return correlate(b, dog, border);
}

/// Fast and slow temporal responses of both channels.
struct BipolarBundle {
  Field plus_fast;
  Field plus_slow;
  Field minus_fast;
  Field minus_slow;
};

/// Steps each channel's cascade once and reads it at n_fast and n_slow with
/// gain K. The cascades must have depth >= n_slow + 1.
BipolarBundle bipolar_temporal(const Field& plus0, const Field& minus0, CascadeState& on_cascade,
                               CascadeState& off_cascade, const ModelParams& params);

CascadeCoefficients cascade_coefficients(const ModelParams& params);

}  // namespace loom
