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
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hypotest/caps.hpp"
#include "hypotest/distribution.hpp"
#include "hypotest/errors.hpp"
#include "hypotest/logspace.hpp"

namespace hypotest {

// Multiset signature of an n-sample i.i.d. sequence. Every sequence in the
// class has the same probability under any product measure, so n-sample
// quantities reduce to one term per class instead of one per sequence.
struct TypeClass {
  std::vector<int> counts;
  double log_multiplicity = 0.0;  // log of the multinomial coefficient
  double log_p_mass = 0.0;        // log of the class's total P^(x)n mass
  double log_q_mass = 0.0;
};

inline std::int64_t type_class_count_or_fail(std::size_t k, std::int64_t n, const Caps& caps) {
  const double log_count = log_binomial(static_cast<double>(n) + static_cast<double>(k) - 1.0,
                                        static_cast<double>(k) - 1.0);
  if (log_count > std::log(static_cast<double>(caps.type_class_cap)) + 1e-9)
    fail(errc::enumeration_too_large,
         "type-class count exceeds cap of " + std::to_string(caps.type_class_cap));
  return static_cast<std::int64_t>(std::llround(std::exp(log_count)));
}

namespace detail {

template <typename Fn>
void visit_compositions(int n, std::size_t k, std::vector<int>& counts, std::size_t pos, Fn&& fn) {
  if (pos + 1 == k) {
    counts[pos] = n;
    fn(counts);
    return;
  }
  for (int m = n; m >= 0; --m) {
    counts[pos] = m;
    visit_compositions(n - m, k, counts, pos + 1, fn);
  }
}

}  // namespace detail

// Visits every composition of n into k = |support| parts exactly once, with
// log quantities assembled from a log-factorial table. fn(const TypeClass&).
template <typename Fn>
void for_each_type_class(const Distribution& p, const Distribution& q, std::int64_t n,
                         const Caps& caps, Fn&& fn) {
  const auto pairs = align(p, q);
  const std::size_t k = pairs.size();
  if (n < 1) fail(errc::precondition_violated, "n must be positive");
  type_class_count_or_fail(k, n, caps);

  const auto logfact = log_factorial_table(static_cast<int>(n));
  std::vector<double> logp(k), logq(k);
  for (std::size_t i = 0; i < k; ++i) {
    logp[i] = pairs[i].first > 0.0 ? std::log(pairs[i].first) : kNegInf;
    logq[i] = pairs[i].second > 0.0 ? std::log(pairs[i].second) : kNegInf;
  }

  TypeClass tc;
  tc.counts.resize(k);
  std::vector<int> counts(k, 0);
  detail::visit_compositions(static_cast<int>(n), k, counts, 0, [&](const std::vector<int>& m) {
    double log_mult = logfact[static_cast<std::size_t>(n)];
    double lp = 0.0, lq = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      log_mult -= logfact[static_cast<std::size_t>(m[i])];
      if (m[i] > 0) {
        lp = (logp[i] == kNegInf) ? kNegInf : lp + m[i] * logp[i];
        lq = (logq[i] == kNegInf) ? kNegInf : lq + m[i] * logq[i];
      }
    }
    tc.counts = m;
    tc.log_multiplicity = log_mult;
    tc.log_p_mass = lp == kNegInf ? kNegInf : log_mult + lp;
    tc.log_q_mass = lq == kNegInf ? kNegInf : log_mult + lq;
    fn(tc);
  });
}

}  // namespace hypotest
