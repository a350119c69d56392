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

#include "hypotest/bayes.hpp"
#include "hypotest/divergence.hpp"
#include "hypotest/random.hpp"

using namespace hypotest;

TEST_CASE("f-divergence of a distribution with itself is zero") {
  Rng rng(1);
  const Distribution p = random_distribution(rng, 5);
  for (const auto& spec : {hellinger_spec(0.5), hellinger_spec(0.2), total_variation_spec(), kl_spec(),
                           chi_squared_spec()}) {
    CHECK(f_divergence(p, p, spec) == Catch::Approx(0.0).margin(1e-14));
  }
}

TEST_CASE("total variation of disjoint supports is one") {
  CHECK(f_divergence(bernoulli(1.0), bernoulli(0.0), total_variation_spec()) == Catch::Approx(1.0));
}

TEST_CASE("Hellinger-1/2 divergence of Ber(0.5) vs Ber(0.25)") {
  const double expected = 1.0 - (std::sqrt(0.5 * 0.25) + std::sqrt(0.5 * 0.75));
  CHECK(f_divergence(bernoulli(0.5), bernoulli(0.25), hellinger_spec(0.5)) ==
        Catch::Approx(expected).margin(1e-14));
  CHECK(expected == Catch::Approx(0.03407).margin(5e-6));
}

TEST_CASE("affinity identities") {
  Rng rng(2);
  const Distribution p = random_distribution(rng, 4);
  CHECK(hellinger_affinity(p, p, 0.31) == Catch::Approx(1.0).margin(1e-12));
  CHECK(hellinger_affinity(bernoulli(1.0), bernoulli(0.0), 0.5) == 0.0);
  CHECK(hellinger_affinity(bernoulli(0.5), bernoulli(0.25), 0.5) ==
        Catch::Approx(std::sqrt(0.125) + std::sqrt(0.375)).margin(1e-14));
  REQUIRE_THROWS_AS(hellinger_affinity(p, p, 1.0), error);
  REQUIRE_THROWS_AS(hellinger_affinity(p, p, 0.0), error);
}

TEST_CASE("both Hellinger code paths agree") {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    auto [p, q] = random_pair(rng, 5, true);
    const double lambda = rng.uniform(0.05, 0.95);
    const double via_affinity = 1.0 - hellinger_affinity(p, q, lambda);
    const double via_fdiv = f_divergence(p, q, hellinger_spec(lambda));
    CHECK(via_affinity == Catch::Approx(via_fdiv).margin(1e-14));
  }
}

TEST_CASE("tensorized affinity") {
  CHECK(tensorized_affinity(1.0, 7) == 1.0);
  CHECK(tensorized_affinity(0.5, 3) == Catch::Approx(0.125).margin(1e-15));
  CHECK(tensorized_affinity(0.0, 2) == 0.0);
  REQUIRE_THROWS_AS(tensorized_affinity(1.5, 2), error);
}

TEST_CASE("tensorisation matches brute force over product sequences") {
  const Distribution p = bernoulli(0.5), q = bernoulli(0.25);
  const double beta = hellinger_affinity(p, q, 0.5);
  double brute = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const double pm = p.mass(a) * p.mass(b) * p.mass(c) * p.mass(d);
          const double qm = q.mass(a) * q.mass(b) * q.mass(c) * q.mass(d);
          brute += std::sqrt(pm * qm);
        }
  CHECK(brute == Catch::Approx(std::pow(beta, 4)).margin(1e-10));
}

TEST_CASE("TV-like parameters for Hellinger exponents") {
  const TvLikeParams t = hellinger_tvlike_params(0.5);
  CHECK(t.b == 2.0);
  CHECK(t.B == 1.0);
  CHECK(t.C2 == 1.0);
  CHECK(t.C1 == Catch::Approx((1.0 - std::sqrt(2.0 / 3.0)) / 8.0).margin(1e-15));
  CHECK(t.C1 == Catch::Approx(0.02293).margin(5e-6));
  // constants are only provable up to the midpoint; beyond it the mirror
  // H_lambda(P,Q) = H_{1-lambda}(Q,P) applies
  REQUIRE_THROWS_AS(hellinger_tvlike_params(0.7), error);
  CHECK_FALSE(hellinger_spec(0.7).tvlike().has_value());
  CHECK(hellinger_spec(0.4).tvlike().has_value());
}

TEST_CASE("generator of Hellinger-0.7 stays below one on [0, 1/0.7]") {
  const auto spec = hellinger_spec(0.7);
  for (int i = 0; i <= 4000; ++i) {
    const double x = (1.0 / 0.7) * i / 4000.0;
    REQUIRE(spec.f(x) <= 1.0 + 1e-12);
  }
}

TEST_CASE("spec construction rejects broken generators") {
  REQUIRE_THROWS_AS(DivergenceSpec("bad-offset", [](double x) { return x; }, 1.0), error);
  REQUIRE_THROWS_AS(DivergenceSpec("bad-concave", [](double x) { return -(x - 1.0) * (x - 1.0); }, 0.0),
                    error);
}

TEST_CASE("data processing for Hellinger under random channels") {
  Rng rng(4);
  for (int trial = 0; trial < 2000; ++trial) {
    auto [p, q] = random_pair(rng, 5, false);
    const Channel t = random_stochastic_channel(rng, 5, 3);
    const double lambda = rng.uniform(0.05, 0.95);
    const double before = 1.0 - hellinger_affinity(p, q, lambda);
    const double after = 1.0 - hellinger_affinity(pushforward(p, t), pushforward(q, t), lambda);
    REQUIRE(after <= before + 1e-12);
  }
}

TEST_CASE("inter-lambda sandwich on random pairs") {
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    auto [p, q] = random_pair(rng, 4, true);
    double a = rng.uniform(0.05, 0.95), b = rng.uniform(0.05, 0.95);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-3) continue;
    const double ha = hellinger_divergence(p, q, a), hb = hellinger_divergence(p, q, b);
    REQUIRE(ha >= a / b * hb - 1e-12);
    REQUIRE(ha <= (1.0 - a) / (1.0 - b) * hb + 1e-12);
  }
}

TEST_CASE("joint convexity of f-divergences under mixtures") {
  Rng rng(6);
  const auto spec = hellinger_spec(0.5);
  for (int trial = 0; trial < 500; ++trial) {
    auto [p1, q1] = random_pair(rng, 4, false);
    auto [p2, q2] = random_pair(rng, 4, false);
    const double w = rng.uniform01();
    std::vector<double> pm(4), qm(4);
    for (std::size_t i = 0; i < 4; ++i) {
      pm[i] = w * p1.mass(i) + (1.0 - w) * p2.mass(i);
      qm[i] = w * q1.mass(i) + (1.0 - w) * q2.mass(i);
    }
    const double mixed = f_divergence(Distribution::trusted(pm), Distribution::trusted(qm), spec);
    const double convex = w * f_divergence(p1, q1, spec) + (1.0 - w) * f_divergence(p2, q2, spec);
    REQUIRE(mixed <= convex + 1e-12);
  }
}

TEST_CASE("1 - (1-x^2)^(1/lambda) <= 4 sqrt(2) x on the working range") {
  const double c = 4.0 * std::sqrt(2.0);
  for (int il = 0; il <= 50; ++il) {
    const double lambda = 0.5 + 0.4999 * il / 50.0;
    for (int i = 1; i <= 2000; ++i) {
      const double x = std::sqrt(0.5) * i / 2000.0;
      REQUIRE(1.0 - std::pow(1.0 - x * x, 1.0 / lambda) <= c * x + 1e-12);
    }
  }
}

TEST_CASE("KL and chi-squared report infinity off the shared support") {
  const Distribution p = Distribution::validate({0.5, 0.5});
  const Distribution q = Distribution::validate({1.0, 0.0});
  CHECK(std::isinf(f_divergence(p, q, kl_spec())));
  CHECK(std::isinf(f_divergence(p, q, chi_squared_spec())));
  CHECK(f_divergence(q, p, kl_spec()) < kPosInf);  // Q covers P's support
}
