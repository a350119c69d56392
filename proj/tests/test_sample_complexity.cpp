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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hypotest/random.hpp"
#include "hypotest/sample_complexity.hpp"

using namespace hypotest;

namespace {
const Distribution kP = bernoulli(0.75);
const Distribution kQ = bernoulli(0.25);
}  // namespace

TEST_CASE("worked bounds for Ber(3/4) vs Ber(1/4)") {
  const ScBounds b = sc_bounds(kP, kQ, Prior(0.5), 1.0 / 32.0);
  CHECK(b.lower == 5);
  CHECK(b.upper == 20);
  CHECK(b.lambda_star.value == Catch::Approx(0.5).margin(1e-15));
  CHECK(b.beta_star_affinity == Catch::Approx(std::sqrt(3.0) / 2.0).margin(1e-14));
}

TEST_CASE("bounds are symmetric under swapping the hypotheses at pi = 1/2") {
  const ScBounds a = sc_bounds(kP, kQ, Prior(0.5), 1.0 / 64.0);
  const ScBounds b = sc_bounds(kQ, kP, Prior(0.5), 1.0 / 64.0);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
}

TEST_CASE("bounds survive nearly identical distributions") {
  const Distribution q = Distribution::trusted({0.75 - 1e-15, 0.25 + 1e-15});
  const Distribution p = Distribution::trusted({0.75, 0.25});
  const ScBounds b = sc_bounds(p, q, Prior(0.5), 1.0 / 32.0);
  CHECK(b.lower >= 1);
  CHECK(b.upper >= b.lower);
  CHECK(b.upper < (std::int64_t{1} << 62));
  REQUIRE_THROWS_MATCHES(sc_bounds(p, p, Prior(0.5), 1.0 / 32.0), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::identical_distributions;
                         }));
}

TEST_CASE("delta gate and the permissive override") {
  REQUIRE_THROWS_MATCHES(sc_bounds(kP, kQ, Prior(0.5), 0.2), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::delta_out_of_range; }));
  const ScBounds b = sc_bounds(kP, kQ, Prior(0.5), 0.2, true);
  CHECK(b.lower >= 1);
}

TEST_CASE("ceiling slack between the two sides") {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    auto [p, q] = random_pair(rng, 4, false);
    const Prior prior(rng.uniform(0.05, 0.5));
    const double delta = rng.log_uniform(prior.pi * 1e-8, prior.pi / 16.0);
    ScBounds b;
    try {
      b = sc_bounds(p, q, prior, delta);
    } catch (const error&) {
      continue;
    }
    REQUIRE(b.lower <= b.upper);
    REQUIRE(b.upper <= 4 * b.lower + 1);
  }
}

TEST_CASE("exact search basics") {
  const Prior prior(0.5);
  // one sample suffices when delta is at least the one-shot error
  CHECK(sc_exact(kP, kQ, prior, 0.3).value() == 1);
  const auto exact = sc_exact(kP, kQ, prior, 1.0 / 32.0);
  REQUIRE(exact.has_value());
  CHECK(*exact == 13);  // brute-force oracle over type classes
  CHECK(*exact >= 5);
  CHECK(*exact <= 20);
  // identical distributions never reach the target
  const Distribution u = Distribution::validate({0.5, 0.5});
  CHECK_FALSE(sc_exact(u, u, prior, 0.01, 50).has_value());
}

TEST_CASE("exact value is the first n meeting the target") {
  const Prior prior(0.5);
  const double delta = 1.0 / 32.0;
  const auto exact = sc_exact(kP, kQ, prior, delta);
  REQUIRE(exact.has_value());
  CHECK(bayes_error_product(kP, kQ, prior, *exact) <= delta);
  CHECK(bayes_error_product(kP, kQ, prior, *exact - 1) > delta);
}

TEST_CASE("exact search is invariant under relabeling and zero atoms") {
  const Prior prior(0.5);
  const double delta = 0.01;
  const Distribution p = Distribution::validate({0.7, 0.2, 0.1});
  const Distribution q = Distribution::validate({0.2, 0.3, 0.5});
  const auto base = sc_exact(p, q, prior, delta);
  const Distribution p2 = Distribution::validate({"z", "y", "x"}, {0.7, 0.2, 0.1});
  const Distribution q2 = Distribution::validate({"z", "y", "x"}, {0.2, 0.3, 0.5});
  CHECK(sc_exact(p2, q2, prior, delta) == base);
  const Distribution p3 = Distribution::validate({0.7, 0.2, 0.1, 0.0});
  const Distribution q3 = Distribution::validate({0.2, 0.3, 0.5, 0.0});
  CHECK(sc_exact(p3, q3, prior, delta) == base);
}

TEST_CASE("simplified formula: regime gate") {
  // H_1/2(Ber(0.9), Ber(0.1)) = 1 - 2 sqrt(0.09) = 0.4 > 0.25
  REQUIRE_THROWS_MATCHES(sc_simplified(bernoulli(0.9), bernoulli(0.1), Prior(0.5), 0.01), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::regime_violation; }));
}

TEST_CASE("simplified formula under the regime") {
  Rng rng(22);
  int accepted = 0;
  while (accepted < 100) {
    auto [p, q] = random_pair(rng, 3, false);
    const Prior prior(rng.uniform(0.05, 0.5));
    const double delta = rng.log_uniform(prior.pi * 1e-4, prior.pi / 16.0);
    if (hellinger_divergence(p, q, 0.5) > 0.25) continue;
    double s = 0.0;
    try {
      s = sc_simplified(p, q, prior, delta);
    } catch (const error&) {
      continue;
    }
    const ScBounds b = sc_bounds(p, q, prior, delta);
    // ceiling removal: the raw lower expression is at least one
    const double raw_lower = 0.5 * b.lambda_star.value * std::log(prior.pi / delta) /
                             -std::log1p(b.beta_star_affinity - 1.0);
    REQUIRE(raw_lower >= 1.0 - 1e-12);
    if (b.upper > 200) continue;
    const auto exact = sc_exact(p, q, prior, delta, 200);
    REQUIRE(exact.has_value());
    REQUIRE(static_cast<double>(*exact) >= s / 8.0);
    REQUIRE(static_cast<double>(*exact) <= s * 8.0);
    ++accepted;
  }
}
