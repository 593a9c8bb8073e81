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


#include "oneshot/channel.hpp"

#include <gtest/gtest.h>

#include <cstddef>
#include <vector>

#include "oracles.hpp"
#include "oneshot/coding.hpp"
#include "test_helpers.hpp"

namespace oneshot {
namespace {

void expect_stochastic(const Channel& w, double tol = 1e-9) {
  for (std::size_t x = 0; x < w.x_size(); ++x) {
    double s = 0.0;
    for (double v : w.row(x)) {
      EXPECT_GE(v, 0.0);
      s += v;
    }
    EXPECT_NEAR(s, 1.0, tol) << "row " << x;
  }
}

TEST(ChannelValidate, AcceptsIdentity) {
  const Channel w = Channel::validate({{1, 0}, {0, 1}});
  EXPECT_EQ(w.x_size(), 2u);
  EXPECT_EQ(w.y_size(), 2u);
  EXPECT_EQ(w(0, 0), 1.0);
  EXPECT_EQ(w(0, 1), 0.0);
}

TEST(ChannelValidate, AcceptsBscMatrix) {
  const Channel w = Channel::validate({{0.9, 0.1}, {0.1, 0.9}});
  EXPECT_EQ(w, make_bsc(0.1).with_name(""));
}

TEST(ChannelValidate, RejectsRowSum) {
  EXPECT_ERRC(Channel::validate({{0.5, 0.6}}), Errc::RowSumViolation);
}

TEST(ChannelValidate, RejectsNegativeEntry) {
  EXPECT_ERRC(Channel::validate({{1.5, -0.5}}), Errc::NegativeEntry);
}

TEST(ChannelValidate, RejectsShapeProblems) {
  EXPECT_ERRC(Channel::validate({}), Errc::InvalidArgument);
  EXPECT_ERRC(Channel::validate({{}}), Errc::InvalidArgument);
  EXPECT_ERRC(Channel::validate({{1.0}, {0.5, 0.5}}), Errc::InvalidArgument);
}

TEST(ChannelValidate, RenormalizesTinyDrift) {
  const Channel w = Channel::validate({{0.5 + 4e-10, 0.5}});
  EXPECT_NEAR(w(0, 0) + w(0, 1), 1.0, 1e-15);
  EXPECT_ERRC(Channel::validate({{0.5 + 4e-9, 0.5}}), Errc::RowSumViolation);
}

TEST(MakeBsc, Examples) {
  EXPECT_EQ(make_bsc(0.0).rows(), (std::vector<std::vector<double>>{{1, 0}, {0, 1}}));
  EXPECT_EQ(make_bsc(0.5).rows(), (std::vector<std::vector<double>>{{0.5, 0.5}, {0.5, 0.5}}));
  const Channel w = make_bsc(0.1);
  EXPECT_DOUBLE_EQ(w(0, 0), 0.9);
  EXPECT_DOUBLE_EQ(w(0, 1), 0.1);
  EXPECT_DOUBLE_EQ(w(1, 0), 0.1);
  EXPECT_DOUBLE_EQ(w(1, 1), 0.9);
  EXPECT_ERRC(make_bsc(-0.1), Errc::OutOfRange);
  EXPECT_ERRC(make_bsc(1.5), Errc::OutOfRange);
}

TEST(MakeErasure, Examples) {
  using Rows = std::vector<std::vector<double>>;
  EXPECT_EQ(make_erasure(0.0).rows(), (Rows{{1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(make_erasure(1.0).rows(), (Rows{{0, 0, 1}, {0, 0, 1}}));
  EXPECT_EQ(make_erasure(0.5).rows(), (Rows{{0.5, 0, 0.5}, {0, 0.5, 0.5}}));
  EXPECT_ERRC(make_erasure(2.0), Errc::OutOfRange);
}

TEST(MakeTightness, TwoByTwo) {
  const Channel w = make_tightness(2, 2);
  ASSERT_EQ(w.x_size(), 4u);
  ASSERT_EQ(w.y_size(), 6u);
  for (std::size_t x = 0; x < 4; ++x) {
    int nonzero = 0;
    for (double v : w.row(x)) {
      if (v != 0.0) {
        ++nonzero;
        EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
      }
    }
    EXPECT_EQ(nonzero, 3);
  }
}

TEST(MakeTightness, Trivial) {
  const Channel w = make_tightness(1, 1);
  EXPECT_EQ(w.rows(), (std::vector<std::vector<double>>{{1.0}}));
}

TEST(MakeTightness, LexicographicColumns) {
  // Columns enumerate 2-subsets of {0,1,2,3}: 01 02 03 12 13 23.
  const Channel w = make_tightness(2, 2);
  const std::size_t members[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (std::size_t y = 0; y < 6; ++y)
    for (std::size_t x = 0; x < 4; ++x) {
      const bool in = x == members[y][0] || x == members[y][1];
      EXPECT_EQ(w(x, y) > 0.0, in) << "x=" << x << " y=" << y;
    }
}

TEST(MakeTightness, DegreeInvariants) {
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t t = 1; k * t <= 8; ++t) {
      const Channel w = make_tightness(k, t);
      const std::size_t n = k * t;
      EXPECT_EQ(w.y_size(), static_cast<std::size_t>(detail::binomial(n, t)));
      for (std::size_t y = 0; y < w.y_size(); ++y) {
        std::size_t c = 0;
        for (std::size_t x = 0; x < n; ++x) c += w(x, y) > 0.0;
        EXPECT_EQ(c, t);
      }
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t c = 0;
        for (double v : w.row(x)) c += v > 0.0;
        EXPECT_EQ(c, static_cast<std::size_t>(detail::binomial(n - 1, t - 1)));
      }
      expect_stochastic(w);
    }
}

TEST(MakeTightness, Caps) {
  EXPECT_ERRC(make_tightness(0, 2), Errc::OutOfRange);
  EXPECT_ERRC(make_tightness(3, 6), Errc::SizeCapExceeded);
  EXPECT_NO_THROW(make_tightness(3, 6, 18));
}

TEST(FromSetSystem, Example) {
  const SetSystem sys{3, 2, {{0, 1}, {1, 2}}};
  const Channel w = from_set_system(sys);
  EXPECT_EQ(w.rows(), (std::vector<std::vector<double>>{{0.5, 0.5, 0}, {0, 0.5, 0.5}}));
}

TEST(FromSetSystem, SingleSet) {
  const Channel w = from_set_system(SetSystem{3, 1, {{0}}});
  EXPECT_EQ(w.rows(), (std::vector<std::vector<double>>{{1, 0, 0}}));
}

TEST(FromSetSystem, RejectsInvalid) {
  EXPECT_ERRC(from_set_system(SetSystem{3, 2, {{0, 1}, {1}}}), Errc::InvalidSetSystem);
  EXPECT_ERRC(from_set_system(SetSystem{3, 2, {{0, 3}}}), Errc::InvalidSetSystem);
  EXPECT_ERRC(from_set_system(SetSystem{3, 2, {{1, 1}}}), Errc::InvalidSetSystem);
  EXPECT_ERRC(from_set_system(SetSystem{3, 0, {{}}}), Errc::InvalidSetSystem);
  EXPECT_ERRC(from_set_system(SetSystem{3, 1, {}}), Errc::InvalidSetSystem);
}

TEST(FromSetSystem, CoverageEqualsUnionForAllSubsets) {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng.below(7);
    const std::size_t g = 2 + rng.below(10);
    const std::size_t d = 1 + rng.below(std::min<std::size_t>(4, g));
    const SetSystem sys = testing::random_set_system(rng, n, d, g);
    const Channel w = from_set_system(sys);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::size_t> s;
      for (std::size_t x = 0; x < n; ++x)
        if (mask & (1u << x)) s.push_back(x);
      EXPECT_NEAR(static_cast<double>(d) * f_value(w, s),
                  static_cast<double>(testing::union_size(sys, s)), 1e-12);
    }
  }
}

TEST(TensorPower, IdentityPower) {
  const Channel bsc = make_bsc(0.1);
  EXPECT_EQ(tensor_power(bsc, 1).rows(), bsc.rows());
  const Channel id2 = Channel::validate({{1, 0}, {0, 1}});
  const Channel id4 = tensor_power(id2, 2);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) EXPECT_EQ(id4(x, y), x == y ? 1.0 : 0.0);
}

TEST(TensorPower, BscSquared) {
  const Channel w = tensor_power(make_bsc(0.1), 2);
  ASSERT_EQ(w.x_size(), 4u);
  ASSERT_EQ(w.y_size(), 4u);
  EXPECT_NEAR(w(0, 0), 0.81, 1e-15);
  EXPECT_NEAR(w(0, 3), 0.01, 1e-15);
  EXPECT_NEAR(w(1, 0), 0.09, 1e-15);
  EXPECT_EQ(w.name(), "bsc^2");
}

TEST(TensorPower, ProductStructure) {
  const Channel a = random_channel(2, 3, 5);
  const Channel w = tensor_power(a, 3);
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 27; ++y) {
      const double expect = a(x / 4, y / 9) * a((x / 2) % 2, (y / 3) % 3) * a(x % 2, y % 3);
      EXPECT_NEAR(w(x, y), expect, 1e-15);
    }
  expect_stochastic(w);
}

TEST(TensorPower, Caps) {
  EXPECT_ERRC(tensor_power(make_bsc(0.1), 0), Errc::OutOfRange);
  EXPECT_ERRC(tensor_power(make_bsc(0.1), 12), Errc::SizeCapExceeded);
  EXPECT_ERRC(tensor_power(make_bsc(0.1), 3, 63), Errc::SizeCapExceeded);
}

TEST(RandomChannel, Deterministic) {
  EXPECT_EQ(random_channel(5, 4, 42), random_channel(5, 4, 42));
  EXPECT_NE(random_channel(5, 4, 42).rows(), random_channel(5, 4, 43).rows());
}

TEST(RandomChannel, Stochastic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Channel w = random_channel(1 + seed % 7, 1 + seed % 5, seed);
    expect_stochastic(w);
    EXPECT_NO_THROW(Channel::validate(w.rows()));
  }
  const Channel single = random_channel(1, 6, 3);
  EXPECT_EQ(single.x_size(), 1u);
  expect_stochastic(single);
  EXPECT_ERRC(random_channel(0, 3, 1), Errc::OutOfRange);
}

TEST(Combinations, EnumeratesAll) {
  auto c = detail::first_combination(3);
  std::size_t count = 0;
  do ++count;
  while (detail::next_combination(c, 7));
  EXPECT_EQ(count, 35u);
  EXPECT_EQ(detail::binomial(16, 8), 12870.0);
  EXPECT_EQ(detail::binomial(3, 5), 0.0);
}

}  // namespace
}  // namespace oneshot
