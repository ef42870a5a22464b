#pragma once

#include <vector>

#include "loom/field.hpp"
#include "loom/kernels.hpp"
#include "loom/params.hpp"
#include "loom/retina.hpp"

namespace loom {

/// Even/odd Gabor responses of one channel at one orientation:
/// sa = even phase, sb = odd phase; 1 = slow input, 2 = fast input.
struct SacQuad {
  Field sa1;
  Field sb1;
  Field sa2;
  Field sb2;
};

struct GaborPair {
  double theta = 0.0;
  Kernel even;  // psi = 0
  Kernel odd;   // psi = pi/2
};

GaborPair make_gabor_pair(double theta, const ModelParams& params);

struct SacResponses {
  SacQuad on;
  SacQuad off;
};

SacResponses sac_directional(const BipolarBundle& bundle, const GaborPair& gabor,
                             BorderPolicy border = BorderPolicy::kReplicate);

/// Opponent energy sa1 * sb2 - sa2 * sb1 (signed; positive for the preferred direction).
Field motion_energy(const SacQuad& quad);

/// R = v+ E+ + v- E-.
Field combine_on_off(const Field& e_plus, const Field& e_minus, double v_plus, double v_minus);

/// Lateral-motion summary across all sampled orientations.
struct DirectionField {
  std::vector<double> thetas;
  std::vector<Field> r_theta;
  Field v;                     // pixelwise max over orientations
  Field phi_hat;               // atan2(R^{pi/2}, R^0), in (-pi, pi]
  std::vector<double> r_sums;  // sum over pixels of each R^theta
};

/// Assembles V, phi_hat and the per-orientation sums. Throws
/// std::invalid_argument unless orientations 0 and pi/2 are present.
DirectionField direction_field(std::vector<double> thetas, std::vector<Field> r_theta);

/// Orientations 2 pi i / count, i = 0..count-1.
std::vector<double> orientation_set(int count);

/// Directional stage of the network: a Gabor bank plus the ON/OFF energy
/// combination. Only the first half of the orientation set is filtered; the
/// even kernel is pi-periodic and the odd kernel flips sign under theta -> theta
/// + pi, so R^{theta+pi} = -R^theta exactly.
class DirectionStage {
 public:
  explicit DirectionStage(const ModelParams& params);

  DirectionField compute(const BipolarBundle& bundle) const;

  const std::vector<GaborPair>& bank() const { return bank_; }
  const std::vector<double>& thetas() const { return thetas_; }

 private:
  ChannelWeights weights_;
  BorderPolicy border_;
  std::vector<double> thetas_;
  std::vector<GaborPair> bank_;
};

}  // namespace loom
