#pragma once

#include <cstddef>
#include <vector>

#include "loom/direction.hpp"
#include "loom/field.hpp"
#include "loom/kernels.hpp"
#include "loom/params.hpp"
#include "loom/retina.hpp"

namespace loom {

/// Rectified center-surround responses: 1 = from the fast signal, 2 = from the slow signal.
struct CenterSurroundMaps {
  Field s1_plus;
  Field s1_minus;
  Field s2_plus;
  Field s2_minus;
};

CenterSurroundMaps sac_center_surround(const BipolarBundle& bundle, const Kernel& center_surround,
                                       BorderPolicy border = BorderPolicy::kReplicate);

struct GanglionMaps {
  Field g1_plus;
  Field g2_plus;
  Field g1_minus;
  Field g2_minus;
};

/// Push-pull: each channel's excitation is suppressed by the opposite
/// channel's center-surround response.
///   G1+ = relu(relu(B+s) - S1-)   G2+ = relu(relu(B+f) - S2-)
///   G1- = relu(relu(B-s) - S1+)   G2- = relu(relu(B-f) - S2+)
GanglionMaps ganglion_push_pull(const BipolarBundle& bundle, const CenterSurroundMaps& s);

/// G = w1+ G1+ - w2- G2- + w1- G1- - w2+ G2+ (signed).
Field fuse_channels(const GanglionMaps& g, const ChannelWeights& w);

/// 1 where value > threshold, else 0.
Field binarize(const Field& f, double threshold);

struct ApproachAttention {
  Field g_sigma;
  Field mask;
};

ApproachAttention approach_attention(const Field& g, const Kernel& blur, double gamma_a,
                                     BorderPolicy border = BorderPolicy::kReplicate);

/// Indices of the k largest sums, ties resolved toward the lower index
/// (orientation sets are ascending in theta).
std::vector<std::size_t> top_k_orientations(const std::vector<double>& r_sums, int k);

struct DirectionalAttention {
  std::vector<std::size_t> inhibited;  // indices into DirectionField::thetas
  Field v_prime;                       // V - max over inhibited R^theta, left signed
  Field v_prime_blurred;
  Field mask;
};

DirectionalAttention directional_attention(const DirectionField& df, int k, const Kernel& blur,
                                           double gamma_d,
                                           BorderPolicy border = BorderPolicy::kReplicate);

struct MaskedOutput {
  Field g_prime;
  double u = 0.0;
};

/// G' = G * M_a * M_d and u = sum of G'.
MaskedOutput masked_output(const Field& g, const Field& m_a, const Field& m_d);

}  // namespace loom
