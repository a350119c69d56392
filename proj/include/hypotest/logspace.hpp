// Copyright 2026 The hypotest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace hypotest {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Streaming log-sum-exp: keeps a running maximum and a rescaled mantissa sum,
// so product-distribution masses can be accumulated without underflow.
class LogSumExp {
 public:
  void add(double log_term) {
    if (log_term == kNegInf) return;
    if (empty_) {
      max_ = log_term;
      sum_ = 1.0;
      empty_ = false;
      return;
    }
    if (log_term <= max_) {
      sum_ += std::exp(log_term - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    }
  }

  double log_value() const { return empty_ ? kNegInf : max_ + std::log(sum_); }
  double value() const { return empty_ ? 0.0 : std::exp(log_value()); }

 private:
  bool empty_ = true;
  double max_ = kNegInf;
  double sum_ = 0.0;
};

// log(n!) for n = 0..n_max.
inline std::vector<double> log_factorial_table(int n_max) {
  std::vector<double> t(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 2; n <= n_max; ++n) t[static_cast<std::size_t>(n)] = t[n - 1] + std::log(static_cast<double>(n));
  return t;
}

// log C(n, k) via lgamma; exact enough for cap checks.
inline double log_binomial(double n, double k) {
  if (k < 0 || k > n) return kNegInf;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace hypotest
