#include "loom/direction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace loom {
namespace {

constexpr double kPi = std::numbers::pi;

std::size_t find_orientation(const std::vector<double>& thetas, double target) {
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (std::abs(thetas[i] - target) < 1e-9) return i;
  }
  throw std::invalid_argument("direction_field: orientation set lacks theta = " + std::to_string(target));
}

}  // namespace

GaborPair make_gabor_pair(double theta, const ModelParams& p) {
  return {theta, make_gabor(theta, 0.0, p.gabor_lambda, p.gabor_sigma, p.kernel_size_small),
          make_gabor(theta, kPi / 2.0, p.gabor_lambda, p.gabor_sigma, p.kernel_size_small)};
}

SacResponses sac_directional(const BipolarBundle& b, const GaborPair& g, BorderPolicy border) {
  return {
      {correlate(b.plus_slow, g.even, border), correlate(b.plus_slow, g.odd, border),
       correlate(b.plus_fast, g.even, border), correlate(b.plus_fast, g.odd, border)},
      {correlate(b.minus_slow, g.even, border), correlate(b.minus_slow, g.odd, border),
       correlate(b.minus_fast, g.even, border), correlate(b.minus_fast, g.odd, border)},
  };
}

Field motion_energy(const SacQuad& q) {
  Field e(q.sa1.width(), q.sa1.height());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = q.sa1[i] * q.sb2[i] - q.sa2[i] * q.sb1[i];
  return e;
}

Field combine_on_off(const Field& e_plus, const Field& e_minus, double v_plus, double v_minus) {
  return add_scaled(e_plus, v_plus, e_minus, v_minus);
}

std::vector<double> orientation_set(int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) t[i] = 2.0 * kPi * i / count;
  return t;
}

DirectionField direction_field(std::vector<double> thetas, std::vector<Field> r_theta) {
  if (thetas.size() != r_theta.size() || thetas.empty()) {
    throw std::invalid_argument("direction_field: need one map per orientation");
  }
  const std::size_t i0 = find_orientation(thetas, 0.0);
  const std::size_t i90 = find_orientation(thetas, kPi / 2.0);

  DirectionField df;
  const Field& first = r_theta.front();
  df.v = first;
  for (std::size_t k = 1; k < r_theta.size(); ++k) {
    require_same_shape(first, r_theta[k], "direction_field");
    const Field& r = r_theta[k];
    for (std::size_t i = 0; i < df.v.size(); ++i) {
      if (r[i] > df.v[i]) df.v[i] = r[i];
    }
  }
  df.phi_hat = Field(first.width(), first.height());
  const Field& r0 = r_theta[i0];
  const Field& r90 = r_theta[i90];
  for (std::size_t i = 0; i < df.phi_hat.size(); ++i) df.phi_hat[i] = std::atan2(r90[i], r0[i]);
  df.r_sums.reserve(r_theta.size());
  for (const Field& r : r_theta) df.r_sums.push_back(r.sum());
  df.thetas = std::move(thetas);
  df.r_theta = std::move(r_theta);
  return df;
}

DirectionStage::DirectionStage(const ModelParams& params)
    : weights_(params.channel_weights),
      border_(params.border_policy),
      thetas_(orientation_set(params.orientation_count)) {
  const std::size_t half = thetas_.size() / 2;
  bank_.reserve(half);
  for (std::size_t i = 0; i < half; ++i) bank_.push_back(make_gabor_pair(thetas_[i], params));
}

DirectionField DirectionStage::compute(const BipolarBundle& bundle) const {
  const std::size_t half = bank_.size();
  std::vector<Field> r(thetas_.size());
  for (std::size_t i = 0; i < half; ++i) {
    const SacResponses sac = sac_directional(bundle, bank_[i], border_);
    r[i] = combine_on_off(motion_energy(sac.on), motion_energy(sac.off), weights_.v_plus,
                          weights_.v_minus);
    Field opposite = r[i];
    for (double& v : opposite.values()) v = -v;
    r[i + half] = std::move(opposite);
  }
  return direction_field(thetas_, std::move(r));
}

}  // namespace loom
