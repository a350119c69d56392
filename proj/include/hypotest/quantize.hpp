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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypotest/distribution.hpp"
#include "hypotest/divergence.hpp"
#include "hypotest/errors.hpp"

namespace hypotest {

struct ThresholdResult {
  ThresholdChannel channel;
  double value = 0.0;
};

// Exact maximiser of D_f(TP || TQ) over contiguous partitions of the sorted
// ratio profile into at most `cells` cells, by interval dynamic programming in
// O(k^2 * cells). The objective is additive over cells.
inline ThresholdResult best_threshold_channel(const LikelihoodRatioProfile& prof, int cells,
                                              const DivergenceSpec& spec) {
  if (cells < 2) fail(errc::d_less_than_two, "a quantiser needs at least 2 output levels");
  const std::size_t k = prof.size();
  if (k == 0) fail(errc::precondition_violated, "empty ratio profile");
  std::vector<double> pp(k + 1, 0.0), qq(k + 1, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    pp[i + 1] = pp[i] + prof.entries[i].p_mass;
    qq[i + 1] = qq[i] + prof.entries[i].q_mass;
  }
  const auto cell = [&](std::size_t lo, std::size_t hi) {
    return f_cell_value(pp[hi] - pp[lo], qq[hi] - qq[lo], spec);
  };

  const std::size_t dmax = std::min<std::size_t>(static_cast<std::size_t>(cells), k);
  // dp[d][i]: best split of the first i entries into exactly d cells.
  std::vector<std::vector<double>> dp(dmax + 1, std::vector<double>(k + 1, kNegInf));
  std::vector<std::vector<std::size_t>> from(dmax + 1, std::vector<std::size_t>(k + 1, 0));
  for (std::size_t i = 1; i <= k; ++i) dp[1][i] = cell(0, i);
  for (std::size_t d = 2; d <= dmax; ++d) {
    for (std::size_t i = d; i <= k; ++i) {
      for (std::size_t j = d - 1; j < i; ++j) {
        const double cand = dp[d - 1][j] + cell(j, i);
        if (cand > dp[d][i]) {
          dp[d][i] = cand;
          from[d][i] = j;
        }
      }
    }
  }
  std::size_t dbest = 1;
  for (std::size_t d = 2; d <= dmax; ++d)
    if (dp[d][k] > dp[dbest][k]) dbest = d;

  ThresholdResult r;
  r.value = dp[dbest][k];
  std::vector<std::size_t> cuts;
  std::size_t i = k;
  for (std::size_t d = dbest; d > 1; --d) {
    i = from[d][i];
    cuts.push_back(i);
  }
  std::reverse(cuts.begin(), cuts.end());
  r.channel.cuts = std::move(cuts);
  return r;
}

inline ThresholdResult best_threshold_channel(const Distribution& p, const Distribution& q,
                                              int cells, const DivergenceSpec& spec) {
  return best_threshold_channel(ratio_profile(p, q), cells, spec);
}

// Visits every contiguous partition of k entries into at most max_cells cells.
template <typename Fn>
void for_each_threshold_channel(std::size_t k, std::size_t max_cells, Fn&& fn) {
  std::vector<std::size_t> cuts;
  const auto rec = [&](auto&& self, std::size_t next) -> void {
    fn(ThresholdChannel{cuts});
    if (cuts.size() + 2 > max_cells) return;
    for (std::size_t c = next; c < k; ++c) {
      cuts.push_back(c);
      self(self, c + 1);
      cuts.pop_back();
    }
  };
  rec(rec, 1);
}

// A staircase level set 0 <= eta_1 <= ... <= eta_D = bound together with the
// captured expectation sum_{j<D} eta_j P[Z in [eta_j, eta_{j+1})].
struct LevelSet {
  std::vector<double> levels;
  double objective = 0.0;
};

// Maximises the staircase objective exactly. Optimal levels can be restricted
// to the support values of Z plus the bound: raising a level to the next
// support point never decreases the objective, so the search is a finite DP
// in O(D * k^2).
inline LevelSet reverse_markov_levels(const std::vector<double>& values,
                                      const std::vector<double>& masses, double bound,
                                      int level_count) {
  if (level_count < 2) fail(errc::d_less_than_two, "need at least 2 levels");
  if (values.size() != masses.size()) fail(errc::dimension_mismatch, "value/mass count mismatch");
  if (!(bound > 0.0)) fail(errc::support_exceeds_bound, "bound must be positive");
  double total = 0.0, mean = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (masses[i] < 0.0) fail(errc::negative_mass, "negative mass");
    if (values[i] < 0.0 || values[i] >= bound)
      fail(errc::support_exceeds_bound, "Z must be supported on [0, bound)");
    total += masses[i];
    mean += masses[i] * values[i];
  }
  if (std::abs(total - 1.0) > kMassTol) fail(errc::mass_sum_out_of_tolerance, "masses must sum to 1");
  if (!(mean > 0.0)) fail(errc::empty_expectation, "E[Z] must be positive");

  // Aggregate equal values, sort ascending; candidates are the support values
  // plus the bound itself.
  std::vector<std::pair<double, double>> atoms;
  {
    std::vector<std::pair<double, double>> raw;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (masses[i] > 0.0) raw.emplace_back(values[i], masses[i]);
    std::sort(raw.begin(), raw.end());
    for (const auto& [v, w] : raw) {
      if (!atoms.empty() && atoms.back().first == v)
        atoms.back().second += w;
      else
        atoms.emplace_back(v, w);
    }
  }
  const std::size_t s = atoms.size();
  std::vector<double> cand(s + 1);
  std::vector<double> below(s + 2, 0.0);  // total mass of values < cand[i]
  for (std::size_t i = 0; i < s; ++i) cand[i] = atoms[i].first;
  cand[s] = bound;
  for (std::size_t i = 0; i < s; ++i) below[i + 1] = below[i] + atoms[i].second;
  below[s + 1] = below[s];
  const auto mass_in = [&](std::size_t a, std::size_t b) {  // P[cand[a] <= Z < cand[b]]
    return below[b] - below[a];
  };

  const int bands = level_count - 1;
  const std::size_t m = s + 1;  // candidate count
  std::vector<std::vector<double>> g(static_cast<std::size_t>(bands) + 1, std::vector<double>(m, 0.0));
  std::vector<std::vector<std::size_t>> nxt(static_cast<std::size_t>(bands) + 1,
                                            std::vector<std::size_t>(m, m - 1));
  for (std::size_t i = 0; i < m; ++i) g[static_cast<std::size_t>(bands)][i] = cand[i] * mass_in(i, m - 1 + 1);
  for (int t = bands - 1; t >= 1; --t) {
    for (std::size_t i = 0; i < m; ++i) {
      double best = kNegInf;
      std::size_t arg = i;
      for (std::size_t j = i; j < m; ++j) {
        const double v = cand[i] * mass_in(i, j) + g[static_cast<std::size_t>(t) + 1][j];
        if (v > best) {
          best = v;
          arg = j;
        }
      }
      g[static_cast<std::size_t>(t)][i] = best;
      nxt[static_cast<std::size_t>(t)][i] = arg;
    }
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (g[1][i] > g[1][start]) start = i;

  LevelSet ls;
  ls.objective = g[1][start];
  std::size_t at = start;
  for (int t = 1; t <= bands; ++t) {
    ls.levels.push_back(cand[at]);
    if (t < bands) at = nxt[static_cast<std::size_t>(t)][at];
  }
  ls.levels.push_back(bound);
  return ls;
}

enum class QuantizerCase { heavy_tail, bounded_part };

struct QuantizerReport {
  ThresholdChannel channel;
  double achieved = 0.0;   // D_f(TP || TQ) of the emitted channel
  double guarantee = 0.0;  // certified lower bound on what the channel retains
  QuantizerCase case_taken = QuantizerCase::bounded_part;
  double R = 0.0;          // min{k, 1 + log(2B / D_f(P||Q))}
  LevelSet levels;         // reverse-Markov levels (bounded-part case only)
};

namespace detail {

inline double threshold_value(const LikelihoodRatioProfile& prof, const ThresholdChannel& tc,
                              const DivergenceSpec& spec) {
  auto [pc, qc] = quantize_profile(prof, tc);
  double v = 0.0;
  for (std::size_t c = 0; c < pc.size(); ++c) v += f_cell_value(pc[c], qc[c], spec);
  return v;
}

}  // namespace detail

// Constructive reverse data-processing quantiser for a TV-like divergence.
//
// Splits D_f(P||Q) into the part below the knee b and the tail beyond it, and
// certifies whichever dominates. The tail case keeps the single split at b.
// The bounded case runs the reverse-Markov DP on Z = f(dP/dQ) 1{dP/dQ <= b}
// and pulls the level bands back through f. The generator is decreasing on
// [0,1] and increasing beyond 1, so each band preimage is at most one ratio
// interval per branch: ceil(D/2) levels cost at most D contiguous cells. With
// only D = 2 cells we keep the better of the two single-branch splits, which
// halves the captured band mass at worst.
inline QuantizerReport constructive_quantizer(const Distribution& p, const Distribution& q,
                                              const DivergenceSpec& spec, int cells) {
  if (cells < 2) fail(errc::d_less_than_two, "a quantiser needs at least 2 output levels");
  if (!spec.tvlike()) fail(errc::missing_tvlike_params, spec.name() + " has no TV-like parameters");
  const TvLikeParams tv = *spec.tvlike();
  if (tv.b < 1.0) fail(errc::missing_tvlike_params, "constructive quantiser requires b >= 1");
  const auto prof = ratio_profile(p, q);
  const std::size_t k = prof.size();
  const double df = f_divergence(prof, spec);
  if (!(df > 0.0)) fail(errc::zero_divergence, "D_f(P||Q) must be positive");

  std::size_t first_tail = k;
  for (std::size_t i = 0; i < k; ++i) {
    if (prof.entries[i].ratio > tv.b) {
      first_tail = i;
      break;
    }
  }
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double v = f_cell_value(prof.entries[i].p_mass, prof.entries[i].q_mass, spec);
    (i < first_tail ? s1 : s2) += v;
  }

  QuantizerReport rep;
  rep.R = std::min(static_cast<double>(k), 1.0 + std::log(2.0 * tv.B / df));
  rep.guarantee = df / 52.0 *
                  std::min({1.0, 26.0 * tv.C1 / tv.C2, static_cast<double>(cells) / rep.R});

  if (s2 > s1) {
    rep.case_taken = QuantizerCase::heavy_tail;
    rep.channel.cuts = {first_tail};
    rep.achieved = detail::threshold_value(prof, rep.channel, spec);
    return rep;
  }

  rep.case_taken = QuantizerCase::bounded_part;
  // Z = f(dP/dQ) 1{dP/dQ <= b} under Q; values clamped strictly below B.
  const double zmax = tv.B * (1.0 - 1e-15);
  std::vector<double> zv, zm;
  double tail_q = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (i < first_tail) {
      zv.push_back(std::min(spec.f(prof.entries[i].ratio), zmax));
      zm.push_back(prof.entries[i].q_mass);
    } else {
      tail_q += prof.entries[i].q_mass;
    }
  }
  if (tail_q > 0.0) {
    zv.push_back(0.0);
    zm.push_back(tail_q);
  }
  const int level_count = cells == 2 ? 2 : (cells + 1) / 2;
  rep.levels = reverse_markov_levels(zv, zm, tv.B, level_count);

  std::vector<double> etas;
  for (std::size_t i = 0; i + 1 < rep.levels.levels.size(); ++i) {
    const double v = rep.levels.levels[i];
    if (v > 0.0 && v < tv.B && (etas.empty() || v > etas.back())) etas.push_back(v);
  }
  if (etas.empty())
    fail(errc::precondition_violated, "degenerate level set despite positive expectation");

  const auto band_of = [&](double z) {
    // largest j with etas[j-1] <= z, clamped to the top band; 0 = rest
    return static_cast<int>(std::upper_bound(etas.begin(), etas.end(), z) - etas.begin());
  };
  const auto z_of = [&](std::size_t i) {
    const double r = prof.entries[i].ratio;
    return std::isinf(r) ? kPosInf : spec.f(r);
  };

  if (cells == 2) {
    const double eta1 = etas.front();
    std::size_t left = 0;
    while (left < k && prof.entries[left].ratio < 1.0 && z_of(left) >= eta1) ++left;
    std::size_t right = k;
    while (right > 0 && prof.entries[right - 1].ratio >= 1.0 && z_of(right - 1) >= eta1) --right;
    double best = kNegInf;
    ThresholdChannel best_tc;
    if (left > 0 && left < k) {
      ThresholdChannel tc{{left}};
      const double v = detail::threshold_value(prof, tc, spec);
      if (v > best) {
        best = v;
        best_tc = tc;
      }
    }
    if (right > 0 && right < k) {
      ThresholdChannel tc{{right}};
      const double v = detail::threshold_value(prof, tc, spec);
      if (v > best) {
        best = v;
        best_tc = tc;
      }
    }
    if (best == kNegInf)
      fail(errc::precondition_violated, "no usable split at the chosen level");
    rep.channel = best_tc;
    rep.achieved = best;
    return rep;
  }

  // Runs of equal (side, band); band 0 entries merge across the valley at 1.
  std::vector<std::size_t> cuts;
  int prev_key = -1;
  for (std::size_t i = 0; i < k; ++i) {
    const int band = band_of(z_of(i));
    const int side = prof.entries[i].ratio < 1.0 ? 0 : 1;
    const int key = band == 0 ? 0 : 2 * band + side + 1;
    if (i > 0 && key != prev_key) cuts.push_back(i);
    prev_key = key;
  }
  rep.channel.cuts = std::move(cuts);
  if (rep.channel.cell_count() > static_cast<std::size_t>(cells))
    fail(errc::precondition_violated, "band construction exceeded the cell budget");
  rep.achieved = detail::threshold_value(prof, rep.channel, spec);
  return rep;
}

// Constructive quantiser for H_lambda across the whole exponent range. For
// lambda <= 1/2 this is the generic TV-like construction; for lambda > 1/2 it
// quantises H_{1-lambda}(Q, P), whose ratio profile is the mirror image, and
// maps the cuts back. Guarantee, achieved value, and R are identical under
// the mirror (same divergence value, same B, same C1/C2 ratio).
inline QuantizerReport constructive_hellinger_quantizer(const Distribution& p, const Distribution& q,
                                                        double lambda, int cells) {
  if (!(lambda > 0.0 && lambda < 1.0)) fail(errc::lambda_out_of_range, "lambda must be in (0,1)");
  if (lambda <= 0.5) return constructive_quantizer(p, q, hellinger_spec(lambda), cells);
  QuantizerReport rep = constructive_quantizer(q, p, hellinger_spec(1.0 - lambda), cells);
  const std::size_t k = ratio_profile(p, q).size();
  std::vector<std::size_t> cuts;
  for (auto it = rep.channel.cuts.rbegin(); it != rep.channel.cuts.rend(); ++it) cuts.push_back(k - *it);
  rep.channel.cuts = std::move(cuts);
  return rep;
}

// Worst-case pair for Hellinger-lambda quantisation. Q spreads its "energy"
// w_i * delta_i^2 evenly across ~log(1/rho) geometric scales delta_i = 2^-i
// (w_i = (rho/k) 4^i, residual mass at the bottom scale), and each scale
// splits into a likelihood-ratio pair 1 +- delta_i:
//   q = (w/2, w/2),  p = (w(1+delta)/2, w(1-delta)/2).
// Both sides sum to one with no P-only atom, each scale contributes
// ~ (lambda(1-lambda)/2) w delta^2 to H_lambda, and a threshold cell that
// spans many scales retains only about one scale's worth (the aggregated
// ratio offset is dominated by a single scale), which is what makes a
// D-cell channel top out at ~D of the k scales.
struct HardInstance {
  Distribution p;
  Distribution q;
  int scales = 0;        // number of geometric scales k
  double h_lambda = 0.0; // exact H_lambda(P, Q)
};

inline HardInstance hard_instance(double lambda, double rho, std::optional<int> k_override = {}) {
  if (!(lambda > 0.0 && lambda < 1.0)) fail(errc::lambda_out_of_range, "lambda must be in (0,1)");
  if (!(rho > 0.0 && rho < 1.0)) fail(errc::rho_too_large, "rho must be in (0,1)");

  const auto mass_sum = [&](int kk) {
    // sum_{i=1..kk} (rho/kk) 4^i = (rho/kk)(4^{kk+1} - 4)/3
    return rho / kk * (std::pow(4.0, kk + 1) - 4.0) / 3.0;
  };
  int k = 0;
  if (k_override) {
    k = *k_override;
    if (k < 1 || mass_sum(k) > 1.0) fail(errc::rho_too_large, "k_override infeasible for this rho");
  } else {
    while (k < 64 && mass_sum(k + 1) <= 1.0) ++k;
  }
  if (k < 4) fail(errc::rho_too_large, "rho leaves fewer than 4 scales");

  std::vector<double> deltas, weights;
  for (int i = 1; i <= k; ++i) {
    deltas.push_back(std::ldexp(1.0, -i));
    weights.push_back(rho / k * std::pow(4.0, i));
  }
  double residual = 1.0;
  for (double w : weights) residual -= w;
  deltas.push_back(std::ldexp(1.0, -(k + 1)));
  weights.push_back(residual);

  std::vector<double> pm, qm;
  double h = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i], d = deltas[i];
    qm.push_back(w / 2.0);
    qm.push_back(w / 2.0);
    pm.push_back(w * (1.0 + d) / 2.0);
    pm.push_back(w * (1.0 - d) / 2.0);
    h += w / 2.0 * (2.0 - std::pow(1.0 + d, lambda) - std::pow(1.0 - d, lambda));
  }

  HardInstance out;
  out.scales = k;
  out.h_lambda = h;
  out.p = Distribution::validate(std::move(pm));
  out.q = Distribution::validate(std::move(qm));
  return out;
}

}  // namespace hypotest
