// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "oneshot/hypothesis.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "oneshot/channel.hpp"
#include "test_helpers.hpp"

namespace oneshot {
namespace {

using Dist = std::vector<double>;

Dist random_dist(Rng& rng, std::size_t n, double zero_chance = 0.0) {
  Dist d(n);
  double s = 0.0;
  for (double& v : d) s += (v = rng.uniform() < zero_chance ? 0.0 : rng.uniform());
  if (s == 0.0) {
    d[0] = 1.0;
    s = 1.0;
  }
  for (double& v : d) v /= s;
  return d;
}

Channel identity(std::size_t n) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1.0;
  return Channel::validate(rows);
}

TEST(Beta, EqualDistributionsGiveAlpha) {
  const Dist p{0.2, 0.3, 0.5};
  for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
    EXPECT_NEAR(beta(p, p, alpha).value, alpha, 1e-12);
    EXPECT_NEAR(beta_neyman_pearson(p, p, alpha).value, alpha, 1e-12);
  }
}

TEST(Beta, Examples) {
  EXPECT_NEAR(beta(Dist{1, 0}, Dist{0, 1}, 0.5).value, 0.0, 1e-12);
  const TestResult r = beta(Dist{0.9, 0.1}, Dist{0.5, 0.5}, 0.9);
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  EXPECT_NEAR(r.test[0], 1.0, 1e-12);
  EXPECT_NEAR(r.test[1], 0.0, 1e-12);
  EXPECT_NEAR(beta_neyman_pearson(Dist{0.9, 0.1}, Dist{0.5, 0.5}, 0.9).value, 0.5, 1e-15);
}

TEST(Beta, Errors) {
  EXPECT_ERRC(beta(Dist{0.5, 0.6}, Dist{0.5, 0.5}, 0.5), Errc::InvalidDistribution);
  EXPECT_ERRC(beta(Dist{1.0}, Dist{0.5, 0.5}, 0.5), Errc::InvalidDistribution);
  EXPECT_ERRC(beta(Dist{1.0, 0.0}, Dist{0.5, 0.5}, 1.5), Errc::OutOfRange);
  EXPECT_ERRC(beta_neyman_pearson(Dist{-0.5, 1.5}, Dist{0.5, 0.5}, 0.5), Errc::InvalidDistribution);
  EXPECT_ERRC(validate_distribution(Dist{}), Errc::InvalidDistribution);
}

TEST(BetaProperty, LinearProgramMatchesNeymanPearson) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    const Dist p = random_dist(rng, n, 0.2), q = random_dist(rng, n, 0.2);
    const double alpha = trial % 10 == 0 ? 1.0 : rng.uniform();
    const TestResult lp = beta(p, q, alpha);
    const TestResult np = beta_neyman_pearson(p, q, alpha);
    EXPECT_NEAR(lp.value, np.value, 1e-9) << "trial " << trial;
    double accept = 0.0;
    for (std::size_t z = 0; z < n; ++z) {
      EXPECT_GE(lp.test[z], -1e-12);
      EXPECT_LE(lp.test[z], 1.0 + 1e-12);
      accept += p[z] * np.test[z];
    }
    EXPECT_GE(accept, alpha - 1e-12);
  }
}

TEST(BetaProperty, MonotoneZeroAndFullAlpha) {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(6);
    const Dist p = random_dist(rng, n, 0.3), q = random_dist(rng, n, 0.3);
    EXPECT_NEAR(beta(p, q, 0.0).value, 0.0, 1e-12);
    double prev = 0.0;
    for (int step = 1; step <= 10; ++step) {
      const double v = beta(p, q, step / 10.0).value;
      EXPECT_GE(v, prev - 1e-12);
      prev = v;
    }
    double support = 0.0;
    for (std::size_t z = 0; z < n; ++z)
      if (p[z] > 0.0) support += q[z];
    EXPECT_NEAR(beta(p, q, 1.0).value, support, 1e-9);
  }
}

TEST(Distributions, ProductAndJoint) {
  const Dist mu{0.25, 0.75}, nu{0.5, 0.5};
  EXPECT_EQ(product_distribution(mu, nu), (Dist{0.125, 0.125, 0.375, 0.375}));
  const Dist j = joint_distribution(make_bsc(0.1), mu);
  EXPECT_NEAR(j[0], 0.225, 1e-15);
  EXPECT_NEAR(j[3], 0.675, 1e-15);
}

TEST(MaxNuBeta, Examples) {
  EXPECT_NEAR(max_nu_beta(identity(2), 2, Dist{0.5, 0.5}).value, 0.0, 1e-9);
  EXPECT_NEAR(max_nu_beta(make_bsc(0.1), 2, Dist{0.5, 0.5}).value, 0.1, 1e-9);
  EXPECT_NEAR(max_nu_beta(make_tightness(2, 2), 2, Dist(4, 0.25)).value, 0.0, 1e-9);
}

TEST(MaxNuBeta, Errors) {
  EXPECT_ERRC(max_nu_beta(make_bsc(0.1), 3, Dist{0.5, 0.5}), Errc::KExceedsInputAlphabet);
  EXPECT_ERRC(max_nu_beta(make_bsc(0.1), 2, Dist{0.5, 0.6}), Errc::InvalidDistribution);
  EXPECT_ERRC(max_nu_beta(make_bsc(0.1), 2, Dist{1.0}), Errc::InvalidDistribution);
}

TEST(MaxNuBeta, TestIsAdmissible) {
  Rng rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Channel w = random_channel(2 + rng.below(4), 1 + rng.below(5), 40 + trial);
    const std::size_t k = 1 + rng.below(w.x_size());
    const Dist mu = random_dist(rng, w.x_size());
    const ChannelTest t = max_nu_beta(w, k, mu);
    EXPECT_GE(channel_test_acceptance(mu, t.test), 1.0 - 1.0 / k - 1e-9);
    EXPECT_NEAR(channel_test_value(w, mu, t.test), t.value, 1e-15);
  }
}

TEST(MaxNuBeta, SingleOutputReducesToBeta) {
  // With one output nu is forced, leaving a single beta.
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const Channel w = random_channel(2 + rng.below(4), 1, 70 + trial);
    const std::size_t k = 1 + rng.below(w.x_size());
    const Dist mu = random_dist(rng, w.x_size());
    const Dist nu{1.0};
    const double direct = beta(product_distribution(mu, nu), joint_distribution(w, mu), 1.0 - 1.0 / k).value;
    EXPECT_NEAR(max_nu_beta(w, k, mu).value, direct, 1e-9);
  }
}

TEST(TestFromLp, Examples) {
  LPSolution s;
  s.k = 2;
  s.p = {1, 1};
  s.r = Matrix(2, 2);
  s.r(0, 0) = s.r(1, 1) = 1.0;
  s.value = 1.0;
  const ChannelTest t = test_from_lp(identity(2), s);
  EXPECT_EQ(t.test(0, 0), 0.0);
  EXPECT_EQ(t.test(0, 1), 1.0);
  EXPECT_EQ(t.test(1, 0), 1.0);
  EXPECT_EQ(t.test(1, 1), 0.0);
  EXPECT_NEAR(t.value, 0.0, 1e-15);

  s.r = Matrix(2, 2);
  EXPECT_NEAR(test_from_lp(identity(2), s).value, 1.0, 1e-15);

  EXPECT_NEAR(test_from_lp(make_bsc(0.1), ns_value(make_bsc(0.1), 2)).value, 0.1, 1e-9);
}

TEST(TestFromLp, ZeroMassInputsGetFullTest) {
  const Channel w = random_channel(3, 2, 3);
  LPSolution s;
  s.k = 1;
  s.p = {1, 0, 0};
  s.r = Matrix(3, 2);
  s.r(0, 0) = 1.0;
  s.r(0, 1) = 1.0;
  const ChannelTest t = test_from_lp(w, s);
  for (std::size_t y = 0; y < 2; ++y) {
    EXPECT_EQ(t.test(1, y), 1.0);
    EXPECT_EQ(t.test(2, y), 1.0);
  }
  EXPECT_EQ(t.mu, (Dist{1, 0, 0}));
}

TEST(TestFromLp, ValueIsOneMinusNsValue) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Channel w = random_channel(2 + seed % 5, 1 + seed % 6, 1200 + seed);
    const std::size_t k = 1 + seed % w.x_size();
    const LPSolution s = ns_value(w, k);
    const ChannelTest t = test_from_lp(w, s);
    EXPECT_NEAR(t.value, 1.0 - s.value, 1e-9);
    EXPECT_GE(channel_test_acceptance(t.mu, t.test), 1.0 - 1.0 / k - 1e-9);
  }
}

TEST(MinMaxBeta, Examples) {
  const MinMaxBetaReport id = verify_min_max_beta(identity(2), 2);
  EXPECT_TRUE(id.passed());
  EXPECT_NEAR(id.at_lp_mu, 0.0, 1e-9);
  const MinMaxBetaReport bsc = verify_min_max_beta(make_bsc(0.1), 2);
  EXPECT_TRUE(bsc.passed());
  EXPECT_NEAR(bsc.at_lp_mu, 0.1, 1e-6);
}

TEST(MinMaxBeta, RandomChannels) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Channel w = random_channel(4, 4, 5000 + seed);
    for (std::size_t k : {2u, 3u}) {
      const MinMaxBetaReport rep = verify_min_max_beta(w, k, seed);
      EXPECT_TRUE(rep.passed()) << "seed " << seed << " k " << k << " at_lp_mu " << rep.at_lp_mu
                                << " ns " << rep.ns_value << " min_random " << rep.min_random_mu;
    }
  }
}

}  // namespace
}  // namespace oneshot
