#include "loom/retina.hpp"

#include <cmath>
#include <stdexcept>

namespace loom {

std::vector<double> persistence_coefficients(int depth, double u) {
  std::vector<double> p(static_cast<std::size_t>(depth));
  for (int i = 1; i <= depth; ++i) p[i - 1] = 1.0 / (1.0 + std::exp(u * i));
  return p;
}

PhotoreceptorState::PhotoreceptorState(int depth, double u)
    : coefficients_(persistence_coefficients(depth, u)) {}

void PhotoreceptorState::prime(const Field& first_frame) {
  if (primed()) throw std::logic_error("photoreceptor already primed");
  previous_ = first_frame;
  history_.clear();
}

Field PhotoreceptorState::step(const Field& frame) {
  if (!primed()) throw std::logic_error("photoreceptor must be primed with the first frame");
  require_same_shape(frame, previous_, "photoreceptor_step");

  Field p(frame.width(), frame.height());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = frame[i] - previous_[i];
  for (std::size_t k = 0; k < history_.size(); ++k) {
    const double c = coefficients_[k];
    const Field& past = history_[k];
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += c * past[i];
  }

  previous_ = frame;
  if (!coefficients_.empty()) {
    history_.push_front(p);
    if (history_.size() > coefficients_.size()) history_.pop_back();
  }
  return p;
}

HalfWave half_wave_split(const Field& p) {
  HalfWave out{Field(p.width(), p.height()), Field(p.width(), p.height())};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double a = std::abs(p[i]);
    out.plus[i] = 0.5 * (a + p[i]);
    out.minus[i] = 0.5 * (a - p[i]);
  }
  return out;
}

CascadeCoefficients cascade_coefficients(const ModelParams& params) {
  return {params.cascade_decay, params.cascade_transmission, params.cascade_tau, params.dt};
}

BipolarBundle bipolar_temporal(const Field& plus0, const Field& minus0, CascadeState& on_cascade,
                               CascadeState& off_cascade, const ModelParams& params) {
  on_cascade.step(plus0);
  off_cascade.step(minus0);
  const double k = params.cascade_gain;
  return {on_cascade.read_output(params.n_fast, k), on_cascade.read_output(params.n_slow, k),
          off_cascade.read_output(params.n_fast, k), off_cascade.read_output(params.n_slow, k)};
}

}  // namespace loom
