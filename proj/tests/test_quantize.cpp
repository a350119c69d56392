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

#include <algorithm>
#include <cmath>

#include "hypotest/quantize.hpp"
#include "hypotest/random.hpp"

using namespace hypotest;

namespace {

double exhaustive_best(const LikelihoodRatioProfile& prof, int cells, const DivergenceSpec& spec) {
  double best = kNegInf;
  for_each_threshold_channel(prof.size(), static_cast<std::size_t>(cells), [&](const ThresholdChannel& tc) {
    best = std::max(best, detail::threshold_value(prof, tc, spec));
  });
  return best;
}

}  // namespace

TEST_CASE("threshold DP is lossless once cells cover the profile") {
  Rng rng(31);
  const auto spec = hellinger_spec(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    auto [p, q] = random_pair(rng, 5, true);
    const auto prof = ratio_profile(p, q);
    const auto best = best_threshold_channel(prof, 8, spec);
    CHECK(best.value == Catch::Approx(f_divergence(prof, spec)).margin(1e-12));
  }
}

TEST_CASE("threshold DP on a three-atom example equals the split maximum") {
  const Distribution p = Distribution::validate({0.5, 0.3, 0.2});
  const Distribution q = Distribution::validate({0.2, 0.3, 0.5});
  const auto spec = hellinger_spec(0.5);
  const auto prof = ratio_profile(p, q);
  REQUIRE(prof.size() == 3);
  // two contiguous 2-cell splits
  const double split1 = detail::threshold_value(prof, ThresholdChannel{{1}}, spec);
  const double split2 = detail::threshold_value(prof, ThresholdChannel{{2}}, spec);
  const auto best = best_threshold_channel(prof, 2, spec);
  CHECK(best.value == Catch::Approx(std::max(split1, split2)).margin(1e-15));
}

TEST_CASE("threshold DP equals exhaustive search on random instances") {
  Rng rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    auto [p, q] = random_pair(rng, static_cast<std::size_t>(rng.uniform_int(2, 10)), true);
    const double lambda = rng.uniform(0.05, 0.95);
    const auto spec = hellinger_spec(lambda);
    const int d = static_cast<int>(rng.uniform_int(2, 4));
    const auto prof = ratio_profile(p, q);
    const auto dp = best_threshold_channel(prof, d, spec);
    REQUIRE(dp.value == Catch::Approx(exhaustive_best(prof, d, spec)).margin(1e-12));
  }
}

TEST_CASE("quantiser needs at least two levels") {
  REQUIRE_THROWS_MATCHES(best_threshold_channel(bernoulli(0.3), bernoulli(0.7), 1, hellinger_spec(0.5)),
                         error, Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::d_less_than_two;
                         }));
}

TEST_CASE("reverse Markov: point mass attains its expectation") {
  const LevelSet ls = reverse_markov_levels({0.5}, {1.0}, 1.0, 2);
  CHECK(ls.objective == Catch::Approx(0.5).margin(1e-15));
  REQUIRE(ls.levels.size() == 2);
  CHECK(ls.levels[0] == 0.5);
  CHECK(ls.levels[1] == 1.0);
}

TEST_CASE("reverse Markov: two atoms, one level") {
  const LevelSet ls = reverse_markov_levels({0.25, 0.5}, {0.5, 0.5}, 1.0, 2);
  CHECK(ls.objective == Catch::Approx(0.25).margin(1e-15));
}

TEST_CASE("reverse Markov input validation") {
  REQUIRE_THROWS_MATCHES(reverse_markov_levels({0.0}, {1.0}, 1.0, 2), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::empty_expectation; }));
  REQUIRE_THROWS_MATCHES(reverse_markov_levels({1.5}, {1.0}, 1.0, 2), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::support_exceeds_bound; }));
  REQUIRE_THROWS_AS(reverse_markov_levels({0.5}, {1.0}, 1.0, 1), error);
}

TEST_CASE("reverse Markov floor and monotone level structure") {
  Rng rng(33);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, 12));
    std::vector<double> vals(k);
    for (auto& v : vals) v = rng.uniform01() * 0.999;
    const std::vector<double> mass = random_distribution(rng, k).masses();
    double mean = 0.0;
    for (std::size_t i = 0; i < k; ++i) mean += vals[i] * mass[i];
    if (!(mean > 0.0)) continue;
    const int d = static_cast<int>(rng.uniform_int(2, 5));
    const LevelSet ls = reverse_markov_levels(vals, mass, 1.0, d);
    REQUIRE(std::is_sorted(ls.levels.begin(), ls.levels.end()));
    REQUIRE(ls.levels.back() == 1.0);
    REQUIRE(static_cast<int>(ls.levels.size()) == d);
    const double r = std::min(static_cast<double>(k), 1.0 + std::log(1.0 / mean));
    REQUIRE(ls.objective >= mean / 13.0 * std::min(1.0, d / r) - 1e-12);
  }
}

TEST_CASE("constructive quantiser: disjoint supports take the heavy tail") {
  const auto rep = constructive_quantizer(bernoulli(1.0), bernoulli(0.0), hellinger_spec(0.3), 2);
  CHECK(rep.case_taken == QuantizerCase::heavy_tail);
  CHECK(rep.achieved == Catch::Approx(1.0).margin(1e-12));  // lossless: H = 1
  CHECK(rep.achieved >= rep.guarantee);
}

TEST_CASE("constructive quantiser rejects bad inputs") {
  const Distribution u = Distribution::validate({0.5, 0.5});
  REQUIRE_THROWS_MATCHES(constructive_quantizer(u, u, hellinger_spec(0.5), 2), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::zero_divergence; }));
  REQUIRE_THROWS_MATCHES(constructive_quantizer(bernoulli(0.7), bernoulli(0.2), kl_spec(), 2), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::missing_tvlike_params; }));
  REQUIRE_THROWS_AS(constructive_quantizer(bernoulli(0.7), bernoulli(0.2), hellinger_spec(0.5), 1), error);
}

TEST_CASE("constructive quantiser is a feasible point of the threshold DP") {
  Rng rng(34);
  for (int trial = 0; trial < 500; ++trial) {
    auto [p, q] = random_pair(rng, static_cast<std::size_t>(rng.uniform_int(2, 7)), true);
    const double lambda = rng.uniform01() < 0.5 ? rng.uniform(0.1, 0.5) : rng.uniform(0.5, 0.9);
    const int d = static_cast<int>(rng.uniform_int(2, 6));
    QuantizerReport rep;
    try {
      rep = constructive_hellinger_quantizer(p, q, lambda, d);
    } catch (const error& e) {
      if (e.code() == errc::zero_divergence) continue;
      throw;
    }
    const auto spec = hellinger_spec(lambda);
    const auto prof = ratio_profile(p, q);
    REQUIRE(rep.channel.cell_count() <= static_cast<std::size_t>(d));
    // the report's achieved value is the divergence of the emitted channel
    REQUIRE(detail::threshold_value(prof, rep.channel, spec) == Catch::Approx(rep.achieved).margin(1e-12));
    const auto best = best_threshold_channel(prof, d, spec);
    REQUIRE(rep.achieved <= best.value + 1e-12);
    REQUIRE(rep.achieved >= rep.guarantee - 1e-12);
    REQUIRE(rep.achieved <= f_divergence(prof, spec) + 1e-12);
  }
}

TEST_CASE("constructive quantiser works with total variation") {
  Rng rng(35);
  const auto spec = total_variation_spec();
  for (int trial = 0; trial < 200; ++trial) {
    auto [p, q] = random_pair(rng, 6, true);
    QuantizerReport rep;
    try {
      rep = constructive_quantizer(p, q, spec, static_cast<int>(rng.uniform_int(2, 5)));
    } catch (const error& e) {
      if (e.code() == errc::zero_divergence) continue;
      throw;
    }
    REQUIRE(rep.achieved >= rep.guarantee - 1e-12);
    REQUIRE(rep.achieved <= f_divergence(p, q, spec) + 1e-12);
  }
}

TEST_CASE("hard instance: shape of the generated pair") {
  const HardInstance inst = hard_instance(0.5, 1e-4);
  CHECK(inst.scales >= 4);
  CHECK(inst.p.size() == static_cast<std::size_t>(2 * (inst.scales + 1)));
  CHECK(hellinger_divergence(inst.p, inst.q, 0.5) == Catch::Approx(inst.h_lambda).margin(1e-14));
  // equal energy per scale keeps H close to rho/8 at lambda = 1/2
  CHECK(inst.h_lambda / 1e-4 >= 0.1);
  CHECK(inst.h_lambda / 1e-4 <= 10.0);
}

TEST_CASE("hard instance: k grows logarithmically in 1/rho") {
  int prev_k = 0;
  for (double rho : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const HardInstance inst = hard_instance(0.5, rho);
    CHECK(inst.scales >= prev_k);
    const double ratio = inst.scales / std::log(1.0 / rho);
    CHECK(ratio >= 0.3);
    CHECK(ratio <= 1.5);
    prev_k = inst.scales;
  }
}

TEST_CASE("hard instance: generic lambda and the A-scale override") {
  for (double lambda : {0.3, 0.5, 0.7, 0.9}) {
    const HardInstance inst = hard_instance(lambda, 1e-3);
    const double h = hellinger_divergence(inst.p, inst.q, lambda);
    CHECK(h == Catch::Approx(inst.h_lambda).margin(1e-14));
    // per-scale contribution ~ (lambda(1-lambda)/2) w delta^2
    const double predicted = lambda * (1.0 - lambda) / 2.0 * 1e-3;
    CHECK(h / predicted >= 0.5);
    CHECK(h / predicted <= 3.0);
  }
  const HardInstance forced = hard_instance(0.5, 1e-4, 5);
  CHECK(forced.scales == 5);
  REQUIRE_THROWS_MATCHES(hard_instance(0.5, 0.2), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::rho_too_large; }));
}

TEST_CASE("hard instance: a two-cell channel misses most scales") {
  const auto spec = hellinger_spec(0.5);
  const HardInstance inst = hard_instance(0.5, 1e-5);
  const double h = hellinger_divergence(inst.p, inst.q, 0.5);
  const double best2 = best_threshold_channel(inst.p, inst.q, 2, spec).value;
  CHECK(best2 < 0.5 * h);  // far from lossless
  // more cells recover more
  const double best6 = best_threshold_channel(inst.p, inst.q, 6, spec).value;
  CHECK(best6 >= best2 - 1e-15);
}
