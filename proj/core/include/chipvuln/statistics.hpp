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
#pragma once

#include <string>
#include <vector>

namespace chipvuln {

struct SampleGroup {
  std::string label;
  std::vector<double> values;
};

// Linear interpolation between order statistics with h = (n - 1) q.
// Throws PreconditionError on an empty sample or q outside [0, 1].
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);
double mean(const std::vector<double>& values);

struct FiveNumberSummary {
  std::size_t n = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};
FiveNumberSummary five_number_summary(std::vector<double> values);

// Ranks starting at 1; tied values share the mean of their positions.
std::vector<double> midranks(const std::vector<double>& values);

struct KruskalWallisResult {
  double h = 0;
  double p = 1;
  int df = 0;
  std::size_t n = 0;
};

// Tie-corrected H with a chi-square(k - 1) p-value.
// PreconditionError: fewer than two groups, an empty group, or N < 3.
// DegenerateDataError: every value identical.
KruskalWallisResult kruskal_wallis(const std::vector<SampleGroup>& groups);

// Q(df / 2, x / 2), the regularized upper incomplete gamma function.
double chi_square_upper_tail(double x, int df);

// Regularized incomplete gamma functions P(a, x) and Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

}  // namespace chipvuln
