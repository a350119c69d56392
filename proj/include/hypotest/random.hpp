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
#include <random>
#include <vector>

#include "hypotest/distribution.hpp"
#include "hypotest/protocols.hpp"

namespace hypotest {

// mt19937_64 with explicit uniform mappings, so streams are identical across
// standard libraries (std::uniform_real_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(uniform01() * static_cast<double>(hi - lo + 1));
  }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Dirichlet(1,...,1) via normalised exponentials; all masses positive a.s.
inline Distribution random_distribution(Rng& rng, std::size_t k) {
  std::vector<double> w(k);
  double sum = 0.0;
  for (auto& x : w) {
    x = -std::log(rng.uniform01() + 1e-300);
    sum += x;
  }
  for (auto& x : w) x /= sum;
  return Distribution::trusted(std::move(w));
}

// A pair on a shared support; optionally force one atom to be P-only, which
// exercises the infinite-ratio paths.
inline std::pair<Distribution, Distribution> random_pair(Rng& rng, std::size_t k,
                                                         bool maybe_p_only_atom = false) {
  Distribution p = random_distribution(rng, k);
  std::vector<double> q = random_distribution(rng, k).masses();
  if (maybe_p_only_atom && k >= 2 && rng.uniform01() < 0.2) {
    const std::size_t drop = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(k) - 1));
    const double rest = 1.0 - q[drop];
    q[drop] = 0.0;
    for (auto& x : q) x /= rest;
  }
  return {std::move(p), Distribution::trusted(std::move(q))};
}

inline Channel random_stochastic_channel(Rng& rng, std::size_t inputs, std::size_t outputs) {
  std::vector<double> e(inputs * outputs);
  for (std::size_t i = 0; i < inputs; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < outputs; ++j) {
      e[i * outputs + j] = -std::log(rng.uniform01() + 1e-300);
      row += e[i * outputs + j];
    }
    for (std::size_t j = 0; j < outputs; ++j) e[i * outputs + j] /= row;
  }
  return Channel::validate(inputs, outputs, std::move(e));
}

// Random contiguous split of k ratio-ordered atoms into at most `cells` cells,
// as a deterministic 0/1 channel over the atoms.
inline Channel random_threshold_split(Rng& rng, std::size_t k, std::size_t cells) {
  std::vector<std::size_t> cuts;
  for (std::size_t c = 1; c < k && cuts.size() + 1 < cells; ++c)
    if (rng.uniform01() < 0.5) cuts.push_back(c);
  const std::size_t d = cuts.size() + 1;
  std::vector<double> e(k * d, 0.0);
  std::size_t cellix = 0;
  for (std::size_t i = 0; i < k; ++i) {
    while (cellix < cuts.size() && i >= cuts[cellix]) ++cellix;
    e[i * d + cellix] = 1.0;
  }
  // pad to exactly `cells` outputs so strategies stay well-typed
  if (d < cells) {
    std::vector<double> e2(k * cells, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < d; ++j) e2[i * cells + j] = e[i * d + j];
    return Channel::validate(k, cells, std::move(e2));
  }
  return Channel::validate(k, d, std::move(e));
}

// Per-prefix random channels, precomputed over the whole prefix tree so the
// strategy is a pure deterministic map.
inline SequentialStrategy random_strategy(Rng& rng, std::size_t inputs, int outputs, int rounds,
                                          double threshold_fraction = 0.5) {
  std::vector<std::vector<Channel>> per_round;  // indexed by prefix rank
  std::size_t width = 1;
  per_round.reserve(static_cast<std::size_t>(rounds));
  for (int r = 0; r < rounds; ++r) {
    std::vector<Channel> row;
    row.reserve(width);
    for (std::size_t i = 0; i < width; ++i) {
      if (rng.uniform01() < threshold_fraction)
        row.push_back(random_threshold_split(rng, inputs, static_cast<std::size_t>(outputs)));
      else
        row.push_back(random_stochastic_channel(rng, inputs, static_cast<std::size_t>(outputs)));
    }
    per_round.push_back(std::move(row));
    width *= static_cast<std::size_t>(outputs);
  }
  SequentialStrategy s;
  s.rounds = rounds;
  s.outputs = outputs;
  s.choose = [per_round, outputs](int round, const std::vector<int>& prefix) {
    std::size_t rank = 0;
    for (int y : prefix) rank = rank * static_cast<std::size_t>(outputs) + static_cast<std::size_t>(y);
    return per_round[static_cast<std::size_t>(round)][rank];
  };
  return s;
}

inline SequentialStrategy constant_strategy(const Channel& t, int rounds) {
  SequentialStrategy s;
  s.rounds = rounds;
  s.outputs = static_cast<int>(t.outputs());
  s.choose = [t](int, const std::vector<int>&) { return t; };
  return s;
}

}  // namespace hypotest
