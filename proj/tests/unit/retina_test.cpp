#include <loom/retina.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"

namespace {

using loom::Field;
using loom::PhotoreceptorState;

TEST(Persistence, Coefficients) {
  const auto p = loom::persistence_coefficients(3, 1.0);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(p[0], 0.26894, 5e-6);
  EXPECT_DOUBLE_EQ(p[0], 1.0 / (1.0 + std::exp(1.0)));
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_GT(p[i], 0.0);
    EXPECT_LT(p[i], 0.5);
    if (i > 0) {
      EXPECT_LT(p[i], p[i - 1]);
    }
  }
}

TEST(Photoreceptor, StaticSceneGivesZero) {
  PhotoreceptorState s(3, 1.0);
  s.prime(Field(4, 4, 0.3));
  for (double v : s.step(Field(4, 4, 0.3)).values()) EXPECT_EQ(v, 0.0);
}

TEST(Photoreceptor, PersistenceAfterAStep) {
  PhotoreceptorState s(3, 1.0);
  Field dark(3, 3);
  Field lit = dark;
  lit(1, 1) = 1.0;
  s.prime(dark);
  EXPECT_EQ(s.step(lit)(1, 1), 1.0);
  EXPECT_NEAR(s.step(lit)(1, 1), 0.26894, 5e-6);
}

TEST(Photoreceptor, MatchesRecursion) {
  std::mt19937 rng(11);
  const auto p = loom::persistence_coefficients(3, 1.0);
  std::vector<Field> frames;
  for (int i = 0; i < 10; ++i) frames.push_back(testutil::random_field(5, 4, rng, 0, 1));
  PhotoreceptorState s(3, 1.0);
  s.prime(frames[0]);
  std::vector<Field> outputs;
  for (std::size_t t = 1; t < frames.size(); ++t) {
    const Field got = s.step(frames[t]);
    for (std::size_t k = 0; k < got.size(); ++k) {
      double expected = frames[t][k] - frames[t - 1][k];
      for (std::size_t i = 1; i <= 3 && i <= outputs.size(); ++i)
        expected += p[i - 1] * outputs[outputs.size() - i][k];
      EXPECT_NEAR(got[k], expected, 1e-15);
    }
    outputs.push_back(got);
    EXPECT_LE(s.history_size(), 3u);
  }
}

TEST(Photoreceptor, InversionNegatesExactly) {
  std::mt19937 rng(12);
  PhotoreceptorState a(3, 1.0), b(3, 1.0);
  auto frame = [&] {
    Field f(6, 5);
    std::uniform_int_distribution<int> d(0, 255);
    for (double& v : f.values()) v = d(rng);
    return f;
  };
  auto invert = [](Field f) {
    for (double& v : f.values()) v = 255.0 - v;
    return f;
  };
  Field f = frame();
  a.prime(f);
  b.prime(invert(f));
  for (int i = 0; i < 8; ++i) {
    f = frame();
    const Field pa = a.step(f), pb = b.step(invert(f));
    for (std::size_t k = 0; k < pa.size(); ++k) EXPECT_EQ(pb[k], -pa[k]);
  }
}

TEST(Photoreceptor, Protocol) {
  PhotoreceptorState s(3, 1.0);
  EXPECT_THROW(s.step(Field(2, 2)), std::logic_error);
  s.prime(Field(2, 2));
  EXPECT_THROW(s.prime(Field(2, 2)), std::logic_error);
  EXPECT_THROW(s.step(Field(3, 2)), std::invalid_argument);
}

TEST(HalfWave, Examples) {
  Field p(2, 1);
  p(0, 0) = 3.0;
  p(1, 0) = -2.0;
  const auto hw = loom::half_wave_split(p);
  EXPECT_EQ(hw.plus(0, 0), 3.0);
  EXPECT_EQ(hw.minus(0, 0), 0.0);
  EXPECT_EQ(hw.plus(1, 0), 0.0);
  EXPECT_EQ(hw.minus(1, 0), 2.0);
}

TEST(HalfWave, Identities) {
  std::mt19937 rng(13);
  const Field p = testutil::random_field(20, 20, rng, -5, 5);
  const auto hw = loom::half_wave_split(p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(hw.plus[i] - hw.minus[i], p[i]);
    EXPECT_EQ(hw.plus[i] * hw.minus[i], 0.0);
    EXPECT_GE(hw.plus[i], 0.0);
    EXPECT_GE(hw.minus[i], 0.0);
  }
}

TEST(Bandpass, UniformAndImpulse) {
  const loom::Kernel dog = loom::make_dog(5, 1, 3, 5);
  for (double v : loom::bipolar_bandpass(Field(9, 9), dog).values()) EXPECT_EQ(v, 0.0);
  for (double v : loom::bipolar_bandpass(Field(9, 9, 2.0), dog).values())
    EXPECT_NEAR(v, 2.0 * dog.sum(), 1e-13);
  Field impulse(9, 9);
  impulse(4, 4) = 1.0;
  const Field out = loom::bipolar_bandpass(impulse, dog);
  for (int y = 2; y <= 6; ++y)
    for (int x = 2; x <= 6; ++x) EXPECT_EQ(out(x, y), dog.at(x - 4, y - 4));
  EXPECT_EQ(out(0, 0), 0.0);
}

struct Channels {
  loom::ModelParams params = loom::default_params();
  loom::CascadeState on{4, 3, 5, loom::cascade_coefficients(params)};
  loom::CascadeState off{4, 3, 5, loom::cascade_coefficients(params)};
};

TEST(BipolarTemporal, ZeroInZeroOut) {
  Channels c;
  const auto b = loom::bipolar_temporal(Field(4, 3), Field(4, 3), c.on, c.off, c.params);
  for (const Field* f : {&b.plus_fast, &b.plus_slow, &b.minus_fast, &b.minus_slow})
    for (double v : f->values()) EXPECT_EQ(v, 0.0);
}

TEST(BipolarTemporal, SwappingInputsSwapsChannels) {
  std::mt19937 rng(14);
  Channels a, b;
  for (int i = 0; i < 6; ++i) {
    const Field x = testutil::random_field(4, 3, rng, 0, 1), y = testutil::random_field(4, 3, rng, 0, 1);
    const auto ba = loom::bipolar_temporal(x, y, a.on, a.off, a.params);
    const auto bb = loom::bipolar_temporal(y, x, b.on, b.off, b.params);
    EXPECT_EQ(ba.plus_fast, bb.minus_fast);
    EXPECT_EQ(ba.plus_slow, bb.minus_slow);
    EXPECT_EQ(ba.minus_fast, bb.plus_fast);
    EXPECT_EQ(ba.minus_slow, bb.plus_slow);
  }
}

TEST(BipolarTemporal, SlowStepResponsePeaksLater) {
  Channels c;
  int peak_fast = -1, peak_slow = -1;
  double best_fast = -1e300, best_slow = -1e300;
  for (int i = 0; i < 40; ++i) {
    const auto b = loom::bipolar_temporal(Field(4, 3, 1.0), Field(4, 3), c.on, c.off, c.params);
    if (b.plus_fast(0, 0) > best_fast) best_fast = b.plus_fast(0, 0), peak_fast = i;
    if (b.plus_slow(0, 0) > best_slow) best_slow = b.plus_slow(0, 0), peak_slow = i;
  }
  EXPECT_LT(peak_fast, peak_slow);
}

TEST(BipolarTemporal, StaticSceneDecays) {
  Channels c;
  const loom::ModelParams& p = c.params;
  const int steps = static_cast<int>(std::ceil(5 * p.cascade_tau / (p.cascade_decay * p.dt))) * (p.n_slow + 1);
  loom::BipolarBundle b = loom::bipolar_temporal(Field(4, 3, 1.0), Field(4, 3, 1.0), c.on, c.off, p);
  for (int i = 0; i < steps; ++i) b = loom::bipolar_temporal(Field(4, 3), Field(4, 3), c.on, c.off, p);
  for (const Field* f : {&b.plus_fast, &b.plus_slow, &b.minus_fast, &b.minus_slow})
    EXPECT_LT(testutil::max_abs(*f), 1e-6);
}

}  // namespace
