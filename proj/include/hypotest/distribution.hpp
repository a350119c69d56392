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
#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hypotest/errors.hpp"
#include "hypotest/logspace.hpp"

namespace hypotest {

inline constexpr double kMassTol = 1e-12;

// A finite discrete probability distribution with labelled atoms. Masses must
// be nonnegative and sum to one within kMassTol; no silent renormalisation.
class Distribution {
 public:
  Distribution() = default;

  static Distribution validate(std::vector<double> masses) {
    std::vector<std::string> labels(masses.size());
    for (std::size_t i = 0; i < masses.size(); ++i) labels[i] = std::to_string(i);
    return validate(std::move(labels), std::move(masses));
  }

  static Distribution validate(std::vector<std::string> labels, std::vector<double> masses) {
    if (labels.size() != masses.size())
      fail(errc::dimension_mismatch, "label/mass count mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      if (masses[i] < 0.0)
        fail(errc::negative_mass, "negative mass at atom " + std::to_string(i));
      sum += masses[i];
    }
    if (std::abs(sum - 1.0) > kMassTol)
      fail(errc::mass_sum_out_of_tolerance, "masses sum to " + std::to_string(sum));
    std::unordered_map<std::string, std::size_t> seen;
    for (const auto& l : labels) {
      if (!seen.emplace(l, 0).second) fail(errc::duplicate_label, "duplicate label '" + l + "'");
    }
    Distribution d;
    d.labels_ = std::move(labels);
    d.masses_ = std::move(masses);
    return d;
  }

  // For internally derived vectors (pushforwards, convex mixtures) whose mass
  // sum can drift a few ulp past kMassTol.
  static Distribution trusted(std::vector<std::string> labels, std::vector<double> masses) {
    Distribution d;
    d.labels_ = std::move(labels);
    d.masses_ = std::move(masses);
    return d;
  }
  static Distribution trusted(std::vector<double> masses) {
    std::vector<std::string> labels(masses.size());
    for (std::size_t i = 0; i < masses.size(); ++i) labels[i] = std::to_string(i);
    return trusted(std::move(labels), std::move(masses));
  }

  std::size_t size() const { return masses_.size(); }
  double mass(std::size_t i) const { return masses_[i]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<double>& masses() const { return masses_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::vector<double> masses_;
};

// Pairs (P(x), Q(x)) aligned by label. Order follows P.
inline std::vector<std::pair<double, double>> align(const Distribution& p, const Distribution& q) {
  if (p.size() != q.size()) fail(errc::label_mismatch, "supports have different sizes");
  std::unordered_map<std::string, double> qmap;
  qmap.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) qmap.emplace(q.label(i), q.mass(i));
  std::vector<std::pair<double, double>> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto it = qmap.find(p.label(i));
    if (it == qmap.end()) fail(errc::label_mismatch, "label '" + p.label(i) + "' missing from Q");
    out[i] = {p.mass(i), it->second};
  }
  return out;
}

// One merged atom group of a likelihood-ratio profile. ratio == +inf holds all
// P-mass living where Q vanishes.
struct RatioEntry {
  double ratio = 0.0;
  double p_mass = 0.0;
  double q_mass = 0.0;
};

struct LikelihoodRatioProfile {
  std::vector<RatioEntry> entries;  // strictly increasing ratio

  std::size_t size() const { return entries.size(); }
  bool has_infinite() const { return !entries.empty() && std::isinf(entries.back().ratio); }
};

// Merge the supports of (P, Q) by equal likelihood ratio and sort ascending.
// Atoms with P(x) = Q(x) = 0 carry no information and are dropped. Two finite
// ratios are considered equal under the cross-product test p_i*q_j == p_j*q_i
// (exact for masses entered as machine-representable rationals) with a 1e-12
// relative fallback.
inline LikelihoodRatioProfile ratio_profile(const Distribution& p, const Distribution& q) {
  const auto pairs = align(p, q);
  struct Fin {
    double ratio, pm, qm;
  };
  std::vector<Fin> fin;
  double p_inf = 0.0;
  bool any_inf = false;
  for (const auto& [pm, qm] : pairs) {
    if (pm == 0.0 && qm == 0.0) continue;
    if (qm == 0.0) {
      p_inf += pm;
      any_inf = true;
      continue;
    }
    fin.push_back({pm / qm, pm, qm});
  }
  std::sort(fin.begin(), fin.end(), [](const Fin& a, const Fin& b) { return a.ratio < b.ratio; });

  LikelihoodRatioProfile prof;
  std::size_t i = 0;
  while (i < fin.size()) {
    double pm = fin[i].pm, qm = fin[i].qm;
    const double rep_p = fin[i].pm, rep_q = fin[i].qm;
    std::size_t j = i + 1;
    for (; j < fin.size(); ++j) {
      const double lhs = rep_p * fin[j].qm;
      const double rhs = fin[j].pm * rep_q;
      if (lhs == rhs || std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs))) {
        pm += fin[j].pm;
        qm += fin[j].qm;
      } else {
        break;
      }
    }
    prof.entries.push_back({qm > 0.0 ? pm / qm : kPosInf, pm, qm});
    i = j;
  }
  if (any_inf) prof.entries.push_back({kPosInf, p_inf, 0.0});
  return prof;
}

// The profile's marginal masses as distributions over the merged atoms.
inline std::pair<Distribution, Distribution> profile_distributions(const LikelihoodRatioProfile& prof) {
  std::vector<double> pm(prof.size()), qm(prof.size());
  for (std::size_t i = 0; i < prof.size(); ++i) {
    pm[i] = prof.entries[i].p_mass;
    qm[i] = prof.entries[i].q_mass;
  }
  return {Distribution::trusted(pm), Distribution::trusted(qm)};
}

// Row-stochastic channel matrix: |X| rows, D columns.
class Channel {
 public:
  static Channel validate(std::size_t inputs, std::size_t outputs, std::vector<double> entries) {
    if (entries.size() != inputs * outputs) fail(errc::dimension_mismatch, "channel entry count mismatch");
    for (std::size_t i = 0; i < inputs; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < outputs; ++j) {
        const double v = entries[i * outputs + j];
        if (v < 0.0) fail(errc::negative_mass, "negative channel entry");
        row += v;
      }
      if (std::abs(row - 1.0) > kMassTol)
        fail(errc::mass_sum_out_of_tolerance, "channel row " + std::to_string(i) + " sums to " + std::to_string(row));
    }
    Channel c;
    c.inputs_ = inputs;
    c.outputs_ = outputs;
    c.entries_ = std::move(entries);
    return c;
  }

  static Channel identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return validate(n, n, std::move(e));
  }

  std::size_t inputs() const { return inputs_; }
  std::size_t outputs() const { return outputs_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * outputs_ + j]; }

 private:
  std::size_t inputs_ = 0, outputs_ = 0;
  std::vector<double> entries_;
};

inline Distribution pushforward(const Distribution& p, const Channel& t) {
  if (t.inputs() != p.size()) fail(errc::dimension_mismatch, "channel rows != support size");
  std::vector<double> out(t.outputs(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < t.outputs(); ++j) out[j] += p.mass(i) * t(i, j);
  return Distribution::trusted(std::move(out));
}

// A contiguous partition of a ratio profile. cuts are entry indices in (0, k),
// strictly increasing; cell c spans [cuts[c-1], cuts[c]).
struct ThresholdChannel {
  std::vector<std::size_t> cuts;

  std::size_t cell_count() const { return cuts.size() + 1; }
  std::pair<std::size_t, std::size_t> cell(std::size_t c, std::size_t profile_size) const {
    const std::size_t lo = c == 0 ? 0 : cuts[c - 1];
    const std::size_t hi = c < cuts.size() ? cuts[c] : profile_size;
    return {lo, hi};
  }
};

// Cell-aggregated (P, Q) masses of a threshold quantisation.
inline std::pair<std::vector<double>, std::vector<double>> quantize_profile(
    const LikelihoodRatioProfile& prof, const ThresholdChannel& tc) {
  const std::size_t cells = tc.cell_count();
  std::vector<double> pc(cells, 0.0), qc(cells, 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    auto [lo, hi] = tc.cell(c, prof.size());
    if (lo >= hi) fail(errc::dimension_mismatch, "empty or non-increasing threshold cell");
    for (std::size_t i = lo; i < hi; ++i) {
      pc[c] += prof.entries[i].p_mass;
      qc[c] += prof.entries[i].q_mass;
    }
  }
  return {std::move(pc), std::move(qc)};
}

// Deterministic 0/1 channel over the profile entries realising tc.
inline Channel threshold_to_channel(const LikelihoodRatioProfile& prof, const ThresholdChannel& tc) {
  const std::size_t k = prof.size(), cells = tc.cell_count();
  std::vector<double> e(k * cells, 0.0);
  for (std::size_t c = 0; c < cells; ++c) {
    auto [lo, hi] = tc.cell(c, k);
    for (std::size_t i = lo; i < hi; ++i) e[i * cells + c] = 1.0;
  }
  return Channel::validate(k, cells, std::move(e));
}

}  // namespace hypotest
