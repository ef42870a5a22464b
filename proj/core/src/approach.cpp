#include "loom/approach.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace loom {

CenterSurroundMaps sac_center_surround(const BipolarBundle& b, const Kernel& cs, BorderPolicy border) {
  return {relu(correlate(b.plus_fast, cs, border)), relu(correlate(b.minus_fast, cs, border)),
          relu(correlate(b.plus_slow, cs, border)), relu(correlate(b.minus_slow, cs, border))};
}

namespace {

Field suppress(const Field& excitation, const Field& inhibition) {
  require_same_shape(excitation, inhibition, "ganglion_push_pull");
  Field out(excitation.width(), excitation.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = relu(relu(excitation[i]) - inhibition[i]);
  return out;
}

}  // namespace

GanglionMaps ganglion_push_pull(const BipolarBundle& b, const CenterSurroundMaps& s) {
  return {suppress(b.plus_slow, s.s1_minus), suppress(b.plus_fast, s.s2_minus),
          suppress(b.minus_slow, s.s1_plus), suppress(b.minus_fast, s.s2_plus)};
}

Field fuse_channels(const GanglionMaps& g, const ChannelWeights& w) {
  Field out(g.g1_plus.width(), g.g1_plus.height());
  for (std::size_t i = 0; i < out.size(); ++i) {
    // Grouped by sign so the ON/OFF swap reorders only commutative pairs.
    out[i] = (w.w1_plus * g.g1_plus[i] + w.w1_minus * g.g1_minus[i]) -
             (w.w2_minus * g.g2_minus[i] + w.w2_plus * g.g2_plus[i]);
  }
  return out;
}

Field binarize(const Field& f, double threshold) {
  Field out(f.width(), f.height());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] > threshold ? 1.0 : 0.0;
  return out;
}

ApproachAttention approach_attention(const Field& g, const Kernel& blur, double gamma_a,
                                     BorderPolicy border) {
  ApproachAttention a;
  a.g_sigma = correlate(g, blur, border);
  a.mask = binarize(a.g_sigma, gamma_a);
  return a;
}

std::vector<std::size_t> top_k_orientations(const std::vector<double>& r_sums, int k) {
  if (k <= 0 || static_cast<std::size_t>(k) > r_sums.size()) {
    throw std::invalid_argument("top_k_orientations: k out of range");
  }
  std::vector<std::size_t> idx(r_sums.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return r_sums[a] > r_sums[b]; });
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

DirectionalAttention directional_attention(const DirectionField& df, int k, const Kernel& blur,
                                           double gamma_d, BorderPolicy border) {
  if (k <= 0 || static_cast<std::size_t>(k) >= df.thetas.size()) {
    throw std::invalid_argument("directional_attention: need 0 < k < orientation count");
  }
  DirectionalAttention d;
  d.inhibited = top_k_orientations(df.r_sums, k);
  d.v_prime = df.v;
  for (std::size_t i = 0; i < d.v_prime.size(); ++i) {
    double strongest = df.r_theta[d.inhibited.front()][i];
    for (std::size_t j = 1; j < d.inhibited.size(); ++j) {
      strongest = std::max(strongest, df.r_theta[d.inhibited[j]][i]);
    }
    d.v_prime[i] = df.v[i] - strongest;
  }
  d.v_prime_blurred = correlate(d.v_prime, blur, border);
  d.mask = binarize(d.v_prime_blurred, gamma_d);
  return d;
}

MaskedOutput masked_output(const Field& g, const Field& m_a, const Field& m_d) {
  require_same_shape(g, m_a, "masked_output");
  require_same_shape(g, m_d, "masked_output");
  MaskedOutput out;
  out.g_prime = Field(g.width(), g.height());
  for (std::size_t i = 0; i < g.size(); ++i) out.g_prime[i] = g[i] * m_a[i] * m_d[i];
  out.u = out.g_prime.sum();
  return out;
}

}  // namespace loom
