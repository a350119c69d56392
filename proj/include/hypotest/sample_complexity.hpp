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
#include <optional>
#include <string>

#include "hypotest/bayes.hpp"
#include "hypotest/caps.hpp"
#include "hypotest/distribution.hpp"
#include "hypotest/divergence.hpp"
#include "hypotest/errors.hpp"

namespace hypotest {

// Two-sided sample-complexity estimate
//   ceil(l/2 * log(pi/delta) / log(1/beta)) <= n* <= ceil(2l * log(pi/delta) / log(1/beta))
// at l = lambda_star(pi, delta) and beta = beta_l(P, Q). The guarantee range
// is delta <= pi/16; beyond it the formulas are reported only under the
// permissive flag.
struct ScBounds {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  LambdaStar lambda_star;
  double beta_star_affinity = 0.0;
};

namespace detail {

inline void check_delta_regime(Prior prior, double delta, bool permissive) {
  if (!(delta > 0.0)) fail(errc::delta_out_of_range, "delta must be positive");
  if (delta > prior.pi / 16.0 && !permissive)
    fail(errc::delta_out_of_range,
         "delta above pi/16 is outside the guaranteed range (pass the permissive flag to compute anyway)");
  if (!(delta < prior.pi)) fail(errc::delta_out_of_range, "delta must be below pi");
}

}  // namespace detail

inline ScBounds sc_bounds(const Distribution& p, const Distribution& q, Prior prior, double delta,
                          bool permissive = false) {
  detail::check_delta_regime(prior, delta, permissive);
  const LambdaStar ls = lambda_star(prior, delta);
  const double beta = hellinger_affinity(p, q, ls.value);
  if (beta >= 1.0) fail(errc::identical_distributions, "beta_{lambda*}(P,Q) = 1; distributions coincide");
  // log(1/beta) via log1p for precision when beta is close to 1.
  const double log_inv_beta = -std::log1p(beta - 1.0);
  const double base = std::log(prior.pi / delta) / log_inv_beta;
  ScBounds b;
  b.lower = static_cast<std::int64_t>(std::ceil(0.5 * ls.value * base));
  b.upper = static_cast<std::int64_t>(std::ceil(2.0 * ls.value * base));
  b.lambda_star = ls;
  b.beta_star_affinity = beta;
  return b;
}

// Smallest n with exact n-sample Bayes error <= delta, or nullopt if none
// exists up to n_max. Exponential bracketing then binary search, using that
// the product error is non-increasing in n.
inline std::optional<std::int64_t> sc_exact(const Distribution& p, const Distribution& q,
                                            Prior prior, double delta, std::int64_t n_max = 200,
                                            const Caps& caps = {}) {
  if (!(delta > 0.0 && delta < prior.pi)) fail(errc::delta_out_of_range, "delta must be in (0, pi)");
  if (n_max < 1) fail(errc::precondition_violated, "n_max must be positive");
  const auto err = [&](std::int64_t n) { return bayes_error_product(p, q, prior, n, caps); };
  if (err(1) <= delta) return 1;
  std::int64_t lo = 1, hi = 1;
  for (;;) {
    if (hi >= n_max) {
      if (err(n_max) > delta) return std::nullopt;
      hi = n_max;
      break;
    }
    lo = hi;
    hi = std::min(n_max, hi * 2);
    if (err(hi) <= delta) break;
  }
  // invariant: err(lo) > delta >= err(hi)
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (err(mid) <= delta)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// log(pi/delta) / H_{lambda*}(P,Q); valid once H_{1/2} <= 0.25, which removes
// the ceiling from the two-sided formula.
inline double sc_simplified(const Distribution& p, const Distribution& q, Prior prior, double delta,
                            bool permissive = false) {
  detail::check_delta_regime(prior, delta, permissive);
  const double h_half = hellinger_divergence(p, q, 0.5);
  if (h_half > 0.25)
    fail(errc::regime_violation, "H_{1/2}(P,Q) = " + std::to_string(h_half) + " exceeds 0.25");
  const LambdaStar ls = lambda_star(prior, delta);
  const double h = hellinger_divergence(p, q, ls.value);
  if (h <= 0.0) fail(errc::identical_distributions, "H_{lambda*}(P,Q) = 0; distributions coincide");
  return std::log(prior.pi / delta) / h;
}

}  // namespace hypotest
