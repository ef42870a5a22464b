#include <loom/approach.hpp>
#include <loom/pipeline.hpp>
#include <loom/stimuli.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"

namespace {

using loom::Field;
using loom::Kernel;

const Kernel& cs_kernel() {
  static const Kernel k = loom::make_center_surround(4, 0.3, 0, 5);
  return k;
}
const Kernel& blur() {
  static const Kernel k = loom::make_gaussian(8, 31);
  return k;
}

TEST(CenterSurround, ZeroAndNegativeInputs) {
  const Field z(8, 8), neg(8, 8, -3.0);
  for (const auto& s : {loom::sac_center_surround({z, z, z, z}, cs_kernel()),
                        loom::sac_center_surround({neg, neg, neg, neg}, cs_kernel())}) {
    for (const Field* f : {&s.s1_plus, &s.s1_minus, &s.s2_plus, &s.s2_minus})
      for (double v : f->values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(CenterSurround, ImpulseGivesRing) {
  Field impulse(11, 11);
  impulse(5, 5) = 1.0;
  const Field z(11, 11);
  // Bundle order: plus_fast, plus_slow, minus_fast, minus_slow.
  const auto s = loom::sac_center_surround({impulse, z, z, z}, cs_kernel());
  EXPECT_EQ(s.s1_plus(5, 5), 0.0);
  EXPECT_NEAR(s.s1_plus(7, 7), 1.0, 1e-12);
  EXPECT_NEAR(s.s1_plus(6, 6), 1.0 + std::exp(-2.0 / 0.18), 1e-15);
  EXPECT_EQ(s.s1_plus(0, 0), 0.0);
  for (const Field* f : {&s.s1_minus, &s.s2_plus, &s.s2_minus})
    for (double v : f->values()) EXPECT_EQ(v, 0.0);
}

TEST(PushPull, MatchesDefinition) {
  std::mt19937 rng(31);
  const loom::BipolarBundle b{testutil::random_field(9, 9, rng), testutil::random_field(9, 9, rng),
                              testutil::random_field(9, 9, rng), testutil::random_field(9, 9, rng)};
  const auto s = loom::sac_center_surround(b, cs_kernel());
  const auto g = loom::ganglion_push_pull(b, s);
  auto r = [](double v) { return v > 0 ? v : 0.0; };
  for (std::size_t i = 0; i < b.plus_fast.size(); ++i) {
    EXPECT_EQ(g.g1_plus[i], r(r(b.plus_slow[i]) - s.s1_minus[i]));
    EXPECT_EQ(g.g2_plus[i], r(r(b.plus_fast[i]) - s.s2_minus[i]));
    EXPECT_EQ(g.g1_minus[i], r(r(b.minus_slow[i]) - s.s1_plus[i]));
    EXPECT_EQ(g.g2_minus[i], r(r(b.minus_fast[i]) - s.s2_plus[i]));
    for (const Field* f : {&s.s1_plus, &s.s1_minus, &s.s2_plus, &s.s2_minus, &g.g1_plus, &g.g2_plus,
                           &g.g1_minus, &g.g2_minus})
      EXPECT_GE((*f)[i], 0.0);
  }
}

TEST(PushPull, NoInhibitionAndFullSuppression) {
  std::mt19937 rng(32);
  const Field x = testutil::random_field(5, 5, rng);
  const Field z(5, 5);
  const auto free = loom::ganglion_push_pull({z, x, z, z}, {z, z, z, z});
  EXPECT_EQ(free.g1_plus, loom::relu(x));
  const auto blocked = loom::ganglion_push_pull({z, x, z, z}, {z, Field(5, 5, 1.0), z, z});
  for (double v : blocked.g1_plus.values()) EXPECT_EQ(v, 0.0);
}

TEST(Fuse, Weighting) {
  std::mt19937 rng(33);
  const loom::GanglionMaps g{testutil::random_field(4, 4, rng, 0, 1), testutil::random_field(4, 4, rng, 0, 1),
                             testutil::random_field(4, 4, rng, 0, 1), testutil::random_field(4, 4, rng, 0, 1)};
  const Field f = loom::fuse_channels(g, loom::ChannelWeights::from_array({1, 1, 1, 0, 0.5, 0}));
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_DOUBLE_EQ(f[i], g.g1_plus[i] + 0.5 * g.g1_minus[i]);
  const Field all = loom::fuse_channels(g, loom::ChannelWeights::from_array({1, 1, 2, 3, 4, 5}));
  for (std::size_t i = 0; i < f.size(); ++i)
    EXPECT_NEAR(all[i], 2 * g.g1_plus[i] - 3 * g.g2_minus[i] + 4 * g.g1_minus[i] - 5 * g.g2_plus[i], 1e-14);
  for (double v : loom::fuse_channels(g, loom::ChannelWeights::from_array({0, 0, 0, 0, 0, 0})).values())
    EXPECT_EQ(v, 0.0);
}

TEST(Binarize, StrictAndIdempotent) {
  Field f(3, 1);
  f(0, 0) = 0.005;
  f(1, 0) = 0.0050001;
  f(2, 0) = -1;
  const Field m = loom::binarize(f, 0.005);
  EXPECT_EQ(m(0, 0), 0.0);
  EXPECT_EQ(m(1, 0), 1.0);
  EXPECT_EQ(m(2, 0), 0.0);
  EXPECT_EQ(loom::binarize(m, 0.5), m);
}

TEST(ApproachAttention, SinglePixelSurvival) {
  const double center = blur().at(0, 0);
  const double cutoff = 0.005 / center;
  EXPECT_NEAR(cutoff, 2.011, 5e-4);
  for (double a : {cutoff * 0.999, cutoff * 1.001}) {
    Field g(64, 64);
    g(32, 32) = a;
    const auto att = loom::approach_attention(g, blur(), 0.005);
    EXPECT_EQ(att.mask(32, 32), a > cutoff ? 1.0 : 0.0) << a;
  }
  const auto none = loom::approach_attention(Field(16, 16), blur(), 0.005);
  for (double v : none.mask.values()) EXPECT_EQ(v, 0.0);
}

TEST(TopK, OrderingAndTies) {
  EXPECT_EQ(loom::top_k_orientations({1, 5, 3, 5, 0}, 1), (std::vector<std::size_t>{1}));
  EXPECT_EQ(loom::top_k_orientations({1, 5, 3, 5, 0}, 2), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(loom::top_k_orientations({2, 2, 2, 2}, 3), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(loom::top_k_orientations({-1, -3, 4, 0}, 2), (std::vector<std::size_t>{2, 3}));
}

loom::DirectionField field_from(std::vector<Field> r) {
  auto thetas = loom::orientation_set(static_cast<int>(r.size()));
  return loom::direction_field(std::move(thetas), std::move(r));
}

TEST(DirectionalAttention, UniformPreferredMotionIsRemoved) {
  // Background where R^0 is the largest energy everywhere.
  std::vector<Field> r;
  for (int k = 0; k < 8; ++k) r.emplace_back(20, 20, 3.0 * std::cos(k * std::numbers::pi / 4));
  const auto da = loom::directional_attention(field_from(r), 1, blur(), 0.005);
  EXPECT_EQ(da.inhibited, (std::vector<std::size_t>{0}));
  for (double v : da.v_prime.values()) EXPECT_EQ(v, 0.0);
  for (double v : da.mask.values()) EXPECT_EQ(v, 0.0);
}

TEST(DirectionalAttention, IsotropicWithAllButOneInhibited) {
  std::mt19937 rng(34);
  std::vector<Field> r;
  for (int k = 0; k < 4; ++k) r.push_back(testutil::random_field(12, 12, rng));
  for (int k = 0; k < 4; ++k) {
    Field neg = r[k];
    for (double& v : neg.values()) v = -v;
    r.push_back(neg);
  }
  const auto da = loom::directional_attention(field_from(r), 7, blur(), 0.005);
  int positive = 0;
  for (double v : da.v_prime.values()) positive += v > 0 ? 1 : 0;
  EXPECT_LT(positive, 144 / 4);
}

TEST(DirectionalAttention, LargerKNeverIncreasesVPrime) {
  std::mt19937 rng(35);
  std::vector<Field> r;
  for (int k = 0; k < 8; ++k) r.push_back(testutil::random_field(10, 10, rng));
  const auto df = field_from(r);
  Field prev = loom::directional_attention(df, 1, blur(), 0.005).v_prime;
  for (int k = 2; k < 8; ++k) {
    const Field cur = loom::directional_attention(df, k, blur(), 0.005).v_prime;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      EXPECT_LE(cur[i], prev[i]);
      EXPECT_GE(cur[i], 0.0);
    }
    prev = cur;
  }
  EXPECT_THROW(loom::directional_attention(df, 0, blur(), 0.005), std::invalid_argument);
  EXPECT_THROW(loom::directional_attention(df, 8, blur(), 0.005), std::invalid_argument);
}

TEST(MaskedOutput, Algebra) {
  std::mt19937 rng(36);
  const Field g = testutil::random_field(16, 16, rng);
  const Field ones(16, 16, 1.0), zeros(16, 16);
  EXPECT_EQ(loom::masked_output(g, zeros, ones).u, 0.0);
  EXPECT_EQ(loom::masked_output(g, ones, ones).u, g.sum());
  Field ma(16, 16), md(16, 16);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < ma.size(); ++i) ma[i] = coin(rng), md[i] = coin(rng);
  const auto m = loom::masked_output(g, ma, md);
  double abs_total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (ma[i] == 0.0 || md[i] == 0.0) EXPECT_EQ(m.g_prime[i], 0.0);
    else EXPECT_EQ(m.g_prime[i], g[i]);
    abs_total += std::abs(g[i]);
  }
  EXPECT_EQ(m.u, m.g_prime.sum());
  EXPECT_LE(std::abs(m.u), abs_total);
}

// Fraction of slow OFF excitation that survives push-pull inhibition during
// the approach window of a scenario.
double off_survival(loom::ScenarioKind kind) {
  loom::Scenario s;
  s.kind = kind;
  s.steps = 56;
  const auto seq = loom::generate(s);
  loom::PipelineOptions o;
  o.keep_maps = true;
  loom::Pipeline p(loom::default_params(), o);
  p.prime(loom::normalize_gray(seq.frames[0]));
  double kept = 0, drive = 0;
  for (std::size_t i = 1; i < seq.frames.size(); ++i) {
    const auto r = p.step(loom::normalize_gray(seq.frames[i]));
    kept += r.maps->ganglion.g1_minus.sum();
    drive += loom::relu(r.maps->bundle.minus_slow).sum();
  }
  return kept / drive;
}

TEST(PushPull, LoomingOffSignalsEscapeInhibitionMoreThanTranslation) {
  const double disk = off_survival(loom::ScenarioKind::kLoomingDisk);
  const double bar = off_survival(loom::ScenarioKind::kTranslatingBar);
  EXPECT_GT(disk, 0.5);
  EXPECT_GT(disk, bar);
}

}  // namespace
