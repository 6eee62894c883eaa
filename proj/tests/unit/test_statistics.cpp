// Copyright 2026 The chipvuln Authors.
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
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "chipvuln/errors.hpp"
#include "chipvuln/statistics.hpp"
#include "oracles.hpp"

namespace chipvuln {
namespace {

std::vector<SampleGroup> groups(std::vector<std::vector<double>> values) {
  std::vector<SampleGroup> out;
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({"g" + std::to_string(i), std::move(values[i])});
  return out;
}

// Upper tail by Simpson's rule over the chi-square density, after t = x + u^2
// so the integrand stays smooth next to x.
double simpson_upper_tail(double x, int df) {
  const double k = df / 2.0;
  const double log_norm = -k * std::log(2.0) - std::lgamma(k);
  auto density = [&](double t) { return t <= 0 ? 0.0 : std::exp(log_norm + (k - 1) * std::log(t) - t / 2); };
  auto g = [&](double u) { return density(x + u * u) * 2 * u; };
  const double hi = std::sqrt(600.0);
  const int n = 200000;
  const double h = hi / n;
  double sum = g(0) + g(hi);
  for (int i = 1; i < n; ++i) sum += g(i * h) * (i % 2 ? 4 : 2);
  return sum * h / 3;
}

TEST(Quantile, Examples) {
  EXPECT_EQ(quantile({1, 2, 3}, 0.5), 2.0);
  EXPECT_EQ(quantile({10, 20, 30, 40}, 0.25), 17.5);
  for (double q : {0.0, 0.3, 1.0}) EXPECT_EQ(quantile({5}, q), 5.0);
  EXPECT_EQ(quantile({40, 10, 30, 20}, 0.25), 17.5);
  EXPECT_THROW(quantile({}, 0.5), PreconditionError);
  EXPECT_THROW(quantile({1, 2}, 1.5), PreconditionError);
}

TEST(QuantileProperty, MonotoneBoundedAndMatchesOracle) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> val(-100, 100);
  for (int i = 0; i < 300; ++i) {
    std::vector<double> xs(1 + rng() % 40);
    for (auto& x : xs) x = std::round(val(rng));
    const double lo = *std::min_element(xs.begin(), xs.end());
    const double hi = *std::max_element(xs.begin(), xs.end());
    double prev = lo;
    for (int s = 0; s <= 20; ++s) {
      const double q = s / 20.0;
      const double v = quantile(xs, q);
      EXPECT_GE(v, prev - 1e-12);
      EXPECT_GE(v, lo);
      EXPECT_LE(v, hi);
      EXPECT_DOUBLE_EQ(v, testing::oracle_quantile(xs, q));
      prev = v;
    }
  }
}

TEST(KruskalWallis, SeparatedGroups) {
  const auto r = kruskal_wallis(groups({{1, 2, 3}, {4, 5, 6}}));
  EXPECT_NEAR(r.h, 3.857, 1e-3);
  EXPECT_NEAR(r.p, 0.0495, 1e-3);
  EXPECT_EQ(r.df, 1);
  EXPECT_EQ(r.n, 6u);
}

TEST(KruskalWallis, SymmetricRankSumsGiveZero) {
  const auto r = kruskal_wallis(groups({{1, 4}, {2, 3}}));
  EXPECT_EQ(r.h, 0.0);
  EXPECT_EQ(r.p, 1.0);
}

// Reference values frozen from scipy.stats.kruskal.
TEST(KruskalWallis, TiesUseMidranksAndCorrection) {
  auto r = kruskal_wallis(groups({{1, 1, 2}, {1, 2, 2}}));
  EXPECT_NEAR(r.h, 0.5555555555555536, 1e-12);
  EXPECT_NEAR(r.p, 0.4560565402502569, 1e-9);
  r = kruskal_wallis(groups({{1, 2, 3, 4}, {2, 5, 7}, {9, 9, 1, 3}}));
  EXPECT_NEAR(r.h, 1.541280864197533, 1e-12);
  EXPECT_NEAR(r.p, 0.4627166348130288, 1e-9);
  EXPECT_EQ(r.df, 2);
  r = kruskal_wallis(groups({{3.1, 2.2, 5.5, 1.0, 7.2}, {8.8, 9.1, 6.5}, {4.4, 10.0, 0.5, 2.2}}));
  EXPECT_NEAR(r.h, 3.1144152046783624, 1e-12);
  EXPECT_NEAR(r.p, 0.21072367470394424, 1e-9);
}

TEST(KruskalWallis, Preconditions) {
  EXPECT_THROW(kruskal_wallis(groups({{1, 2, 3}})), PreconditionError);
  EXPECT_THROW(kruskal_wallis(groups({{1, 2}, {}})), PreconditionError);
  EXPECT_THROW(kruskal_wallis(groups({{1}, {2}})), PreconditionError);
  EXPECT_THROW(kruskal_wallis(groups({{4, 4}, {4, 4, 4}})), DegenerateDataError);
}

TEST(Midranks, AverageTiedPositions) {
  EXPECT_EQ(midranks({10, 20, 10, 30}), (std::vector<double>{1.5, 3, 1.5, 4}));
}

TEST(KruskalWallisProperty, RankInvarianceAndPermutation) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const int k = 2 + static_cast<int>(rng() % 3);
    std::vector<std::vector<double>> vals(k);
    for (auto& g : vals) {
      g.resize(1 + rng() % 6);
      for (auto& x : g) x = static_cast<double>(rng() % 12);
    }
    KruskalWallisResult base;
    try {
      base = kruskal_wallis(groups(vals));
    } catch (const Error&) {
      continue;
    }
    auto transformed = vals;
    for (auto& g : transformed) {
      for (auto& x : g) x = std::exp(x / 3.0) + 7;
    }
    EXPECT_NEAR(kruskal_wallis(groups(transformed)).h, base.h, 1e-9);

    auto shuffled = vals;
    for (auto& g : shuffled) std::shuffle(g.begin(), g.end(), rng);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_NEAR(kruskal_wallis(groups(shuffled)).h, base.h, 1e-9);
    EXPECT_GE(base.h, 0.0);
    EXPECT_GE(base.p, 0.0);
    EXPECT_LE(base.p, 1.0);
  }
}

TEST(ChiSquare, Examples) {
  EXPECT_EQ(chi_square_upper_tail(0, 1), 1.0);
  EXPECT_EQ(chi_square_upper_tail(0, 5), 1.0);
  EXPECT_NEAR(chi_square_upper_tail(3.841, 1), 0.0500, 5e-4);
  // scipy.stats.chi2.sf
  EXPECT_NEAR(chi_square_upper_tail(3.841, 1), 0.050013683763956804, 1e-8);
  EXPECT_NEAR(chi_square_upper_tail(10, 3), 0.01856613546304325, 1e-8);
  EXPECT_NEAR(chi_square_upper_tail(0.5, 7), 0.9994464813904249, 1e-8);
  EXPECT_NEAR(chi_square_upper_tail(40, 2), 2.0611536224385566e-09, 1e-12);
  EXPECT_THROW(chi_square_upper_tail(1, 0), PreconditionError);
}

TEST(ChiSquareProperty, AgreesWithNumericalIntegration) {
  for (int df : {1, 2, 3, 4, 5, 6, 10}) {
    double prev = 1.0;
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.841, 5.0, 7.5, 10.0, 20.0, 40.0}) {
      const double q = chi_square_upper_tail(x, df);
      EXPECT_NEAR(q, simpson_upper_tail(x, df), 1e-6) << "x=" << x << " df=" << df;
      EXPECT_LT(q, prev);
      prev = q;
    }
  }
}

TEST(ChiSquareProperty, GammaComplements) {
  for (double a : {0.5, 1.0, 2.5, 7.0}) {
    for (double x : {0.01, 0.7, 3.0, 12.0}) EXPECT_NEAR(gamma_p(a, x) + gamma_q(a, x), 1.0, 1e-12);
  }
}

TEST(Summary, FiveNumbers) {
  const auto s = five_number_summary({7, 1, 3, 5, 9});
  EXPECT_EQ(s.n, 5u);
  EXPECT_EQ(s.min, 1);
  EXPECT_EQ(s.q1, 3);
  EXPECT_EQ(s.median, 5);
  EXPECT_EQ(s.q3, 7);
  EXPECT_EQ(s.max, 9);
  EXPECT_EQ(mean({1, 2, 6}), 3.0);
  EXPECT_EQ(median({4, 1, 3, 2}), 2.5);
}

}  // namespace
}  // namespace chipvuln
