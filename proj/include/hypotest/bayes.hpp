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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypotest/caps.hpp"
#include "hypotest/distribution.hpp"
#include "hypotest/divergence.hpp"
#include "hypotest/errors.hpp"
#include "hypotest/type_classes.hpp"

namespace hypotest {

// Prior weight of hypothesis P; by convention the smaller side, pi in (0, 0.5].
struct Prior {
  double pi;
  explicit Prior(double p) : pi(p) {
    if (!(p > 0.0 && p <= 0.5)) fail(errc::prior_out_of_range, "prior must be in (0, 0.5]");
  }
};

// The exponent balancing (delta/pi)^lambda = (delta/pibar)^(1-lambda); the
// choice that makes the Chernoff-type upper bound on the Bayes error tight up
// to a factor 4 and a squared affinity.
struct LambdaStar {
  double value = 0.0;
  double pi = 0.0;
  double delta = 0.0;
};

// Computed from logs of ratios directly; delta may be extremely small.
inline LambdaStar lambda_star(Prior prior, double delta) {
  if (!(delta > 0.0 && delta < prior.pi))
    fail(errc::delta_out_of_range, "delta must be in (0, pi)");
  const double a = std::log(1.0 - prior.pi) - std::log(delta);  // log(pibar/delta)
  const double b = std::log(prior.pi) - std::log(delta);        // log(pi/delta)
  return {a / (a + b), prior.pi, delta};
}

// Minimum one-sample error: sum_x min(pi P(x), pibar Q(x)).
inline double bayes_error(const Distribution& p, const Distribution& q, Prior prior) {
  double e = 0.0;
  for (const auto& [pm, qm] : align(p, q)) e += std::min(prior.pi * pm, (1.0 - prior.pi) * qm);
  return e;
}

// Exact n-sample Bayes error of the product measures, one term per type class.
// min(pi*p, pibar*q) is constant on a class, so the MAP sum collapses exactly.
// Atoms outside the shared support contribute 0 and are skipped up front.
inline double bayes_error_product(const Distribution& p, const Distribution& q, Prior prior,
                                  std::int64_t n, const Caps& caps = {}) {
  if (n < 1) fail(errc::precondition_violated, "n must be positive");
  std::vector<double> ps, qs;
  for (const auto& [pm, qm] : align(p, q)) {
    if (pm > 0.0 && qm > 0.0) {
      ps.push_back(pm);
      qs.push_back(qm);
    }
  }
  if (ps.empty()) return 0.0;  // disjoint supports
  const Distribution pr = Distribution::trusted(ps), qr = Distribution::trusted(qs);
  const double log_pi = std::log(prior.pi), log_pibar = std::log(1.0 - prior.pi);
  LogSumExp acc;
  for_each_type_class(pr, qr, n, caps, [&](const TypeClass& tc) {
    acc.add(std::min(log_pi + tc.log_p_mass, log_pibar + tc.log_q_mass));
  });
  return acc.value();
}

// Fact-style upper bound pi^lambda pibar^(1-lambda) beta.
inline double bayes_upper_bound(Prior prior, double lambda, double beta) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail(errc::lambda_out_of_range, "lambda must be in [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0)) fail(errc::precondition_violated, "beta must be in [0,1]");
  return std::pow(prior.pi, lambda) * std::pow(1.0 - prior.pi, 1.0 - lambda) * beta;
}

// One-shot lower bound: delta >= (1/4) pi^l pibar^(1-l) beta_l(P,Q)^2 at
// l = lambda_star(pi, delta), valid for any delta >= e_pi(P,Q). The returned
// value never exceeds delta.
inline double one_shot_lower_bound(const Distribution& p, const Distribution& q, Prior prior,
                                   double delta) {
  const double e = bayes_error(p, q, prior);
  if (e <= 0.0 || e >= prior.pi)
    fail(errc::degenerate_error, "Bayes error must lie strictly inside (0, pi)");
  if (!(delta > 0.0 && delta < prior.pi))
    fail(errc::delta_out_of_range, "delta must be in (0, pi)");
  if (delta < e) fail(errc::precondition_violated, "delta below the Bayes error");
  const LambdaStar ls = lambda_star(prior, delta);
  const double beta = hellinger_affinity(p, q, ls.value);
  return 0.25 * std::pow(prior.pi, ls.value) * std::pow(1.0 - prior.pi, 1.0 - ls.value) * beta * beta;
}

// P(A), Q(A) for A = {x : pi P(x) <= pibar Q(x)}. The two-point reduction
// preserves the Bayes error exactly.
struct BernoulliReduction {
  double p_a = 0.0;
  double q_a = 0.0;
};

inline BernoulliReduction bernoulli_reduction(const Distribution& p, const Distribution& q, Prior prior) {
  BernoulliReduction r;
  for (const auto& [pm, qm] : align(p, q)) {
    if (prior.pi * pm <= (1.0 - prior.pi) * qm) {
      r.p_a += pm;
      r.q_a += qm;
    }
  }
  return r;
}

inline Distribution bernoulli(double p1) {
  return Distribution::trusted({"0", "1"}, {1.0 - p1, p1});
}

// Mix both distributions with a shared fresh symbol until the Bayes error
// rises to delta: gamma = (pi - delta) / (pi - e_pi). Affinities never drop.
struct PaddedPair {
  Distribution p;
  Distribution q;
  double gamma = 1.0;
};

inline constexpr const char* kPadLabel = "‹pad›";  // reserved fresh symbol

inline PaddedPair pad_to_error(const Distribution& p, const Distribution& q, Prior prior,
                               double delta) {
  const double e = bayes_error(p, q, prior);
  if (!(delta >= e && delta < prior.pi))
    fail(errc::delta_out_of_range, "delta must lie in [e_pi, pi)");
  const double gamma = (prior.pi - delta) / (prior.pi - e);
  const auto pairs = align(p, q);
  std::vector<std::string> labels = p.labels();
  labels.push_back(kPadLabel);
  std::vector<double> pm(pairs.size() + 1), qm(pairs.size() + 1);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    pm[i] = gamma * p.mass(i);
    // keep Q aligned with P's label order
    qm[i] = gamma * pairs[i].second;
  }
  pm.back() = 1.0 - gamma;
  qm.back() = 1.0 - gamma;
  return {Distribution::validate(labels, pm), Distribution::validate(std::move(labels), qm), gamma};
}

// Supremum of beta_lambda(Ber(p), Ber(q)) over the level set {e_pi = delta},
// restricted to its first line segment; the second follows by the symmetry
// beta(p, q) = beta(pbar, qbar). The restriction of a jointly concave function
// to a segment is concave, so golden-section search applies.
inline double affinity_levelset_sup(Prior prior, double delta, double lambda) {
  if (!(delta > 0.0 && delta < prior.pi)) fail(errc::delta_out_of_range, "delta must be in (0, pi)");
  if (!(lambda > 0.0 && lambda < 1.0)) fail(errc::lambda_out_of_range, "lambda must be in (0,1)");
  const double pi = prior.pi, pibar = 1.0 - prior.pi;
  const auto beta_at = [&](double p) {
    const double q = (pi / pibar) * p + 1.0 - delta / pibar;
    return detail::affinity_term(p, q, lambda) + detail::affinity_term(1.0 - p, 1.0 - q, lambda);
  };
  double lo = 0.0, hi = delta / pi;
  double best = std::max(beta_at(lo), beta_at(hi));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = beta_at(x1), f2 = beta_at(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = beta_at(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = beta_at(x1);
    }
    best = std::max(best, std::max(f1, f2));
  }
  return best;
}

}  // namespace hypotest
