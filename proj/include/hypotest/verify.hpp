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

// Property suites behind `hypotest verify` and the acceptance binary. Each
// criterion draws seeded random instances, checks an inequality with its
// pinned tolerance, and reports the worst observed margin plus the first
// counterexample. A negative margin beyond tolerance is a violation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hypotest/bayes.hpp"
#include "hypotest/caps.hpp"
#include "hypotest/distribution.hpp"
#include "hypotest/divergence.hpp"
#include "hypotest/errors.hpp"
#include "hypotest/io.hpp"
#include "hypotest/protocols.hpp"
#include "hypotest/quantize.hpp"
#include "hypotest/random.hpp"
#include "hypotest/sample_complexity.hpp"

namespace hypotest {

struct RunConfig {
  std::uint64_t seed = 20250809;
  std::int64_t trials = 0;  // 0: per-criterion default
  double tolerance = 1e-12;
  Caps caps;
  bool permissive_delta = false;
};

struct CriterionResult {
  std::string id;
  std::string description;
  std::int64_t trials = 0;
  std::int64_t violations = 0;
  double worst_margin = kPosInf;
  std::string counterexample;  // JSON for the first violation
  bool pass = true;
};

namespace detail {

class Tally {
 public:
  Tally(std::string id, std::string description, double tolerance)
      : id_(std::move(id)), description_(std::move(description)), tol_(tolerance) {}

  template <typename DumpFn>
  void check(double margin, DumpFn&& dump) {
    ++trials_;
    worst_ = std::min(worst_, margin);
    if (!(margin >= -tol_)) {  // also catches NaN
      if (violations_ == 0) first_bad_ = dump();
      ++violations_;
    }
  }

  CriterionResult result() const {
    CriterionResult r;
    r.id = id_;
    r.description = description_;
    r.trials = trials_;
    r.violations = violations_;
    r.worst_margin = worst_;
    r.counterexample = first_bad_;
    r.pass = violations_ == 0;
    return r;
  }

 private:
  std::string id_, description_;
  double tol_;
  std::int64_t trials_ = 0, violations_ = 0;
  double worst_ = kPosInf;
  std::string first_bad_;
};

inline std::string dump_pair(const Distribution& p, const Distribution& q,
                             const std::string& extra) {
  std::string s = "{\"p\":" + json_number_array(p.masses()) + ",\"q\":" + json_number_array(q.masses());
  if (!extra.empty()) s += "," + extra;
  return s + "}";
}

inline std::int64_t scaled(std::int64_t dflt, std::int64_t requested) {
  return requested > 0 ? requested : dflt;
}

// Self-test hook: setting HYPOTEST_SELFTEST_FAULT=one-shot drops the factor
// 1/4 from the one-shot bound, which real instances then violate. Exists so
// the harness itself can be shown to catch a broken inequality.
inline bool fault_injected(const char* suite) {
  const char* v = std::getenv("HYPOTEST_SELFTEST_FAULT");
  return v != nullptr && suite == std::string(v);
}

}  // namespace detail

// --- one-shot suite -------------------------------------------------------

inline std::vector<CriterionResult> run_one_shot_suite(const RunConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<CriterionResult> out;
  const double fault_factor = detail::fault_injected("one-shot") ? 4.0 : 1.0;

  {
    detail::Tally t("one-shot.at-bayes-error",
                    "delta >= (1/4) pi^l pibar^(1-l) beta_l^2 at delta = e_pi(P,Q)", cfg.tolerance);
    const std::int64_t n = detail::scaled(10000, cfg.trials);
    while (t.result().trials < n) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 8));
      auto [p, q] = random_pair(rng, k, true);
      const Prior prior(rng.log_uniform(1e-3, 0.5));
      const double e = bayes_error(p, q, prior);
      // e_pi must lie strictly inside (0, pi); at double precision that means
      // staying far enough from pi that lambda_star does not round to 1.
      if (!(e > 0.0 && e < prior.pi * (1.0 - 1e-12))) continue;
      const LambdaStar ls = lambda_star(prior, e);
      if (ls.value >= 1.0) continue;
      const double beta = hellinger_affinity(p, q, ls.value);
      const double rhs = fault_factor * 0.25 * std::pow(prior.pi, ls.value) *
                         std::pow(1.0 - prior.pi, 1.0 - ls.value) * beta * beta;
      t.check(e - rhs, [&] {
        return detail::dump_pair(p, q, "\"pi\":" + fmt17(prior.pi) + ",\"delta\":" + fmt17(e) +
                                           ",\"lambda_star\":" + fmt17(ls.value) +
                                           ",\"bound\":" + fmt17(rhs));
      });
    }
    out.push_back(t.result());
  }

  {
    detail::Tally t("one-shot.padded",
                    "bound holds for delta drawn in (e_pi, pi), via the padding route", cfg.tolerance);
    detail::Tally tp("one-shot.padding-exactness", "pad_to_error hits e_pi(P~,Q~) = delta exactly",
                     cfg.tolerance);
    const std::int64_t n = detail::scaled(1000, cfg.trials);
    std::int64_t done = 0;
    while (done < n) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 8));
      auto [p, q] = random_pair(rng, k, false);
      const Prior prior(rng.log_uniform(1e-2, 0.5));
      const double e = bayes_error(p, q, prior);
      if (!(e > 0.0 && e < prior.pi * (1.0 - 1e-12))) continue;
      const double delta = e + (prior.pi - e) * rng.uniform(1e-6, 1.0 - 1e-6);
      if (lambda_star(prior, delta).value >= 1.0) continue;
      ++done;
      const double bound = fault_factor * one_shot_lower_bound(p, q, prior, delta);
      const auto dump = [&] {
        return detail::dump_pair(p, q, "\"pi\":" + fmt17(prior.pi) + ",\"delta\":" + fmt17(delta) +
                                           ",\"bound\":" + fmt17(bound));
      };
      t.check(delta - bound, dump);
      const PaddedPair padded = pad_to_error(p, q, prior, delta);
      const double e_pad = bayes_error(padded.p, padded.q, prior);
      tp.check(1e-12 - std::abs(e_pad - delta), dump);
      const LambdaStar ls = lambda_star(prior, delta);
      const double beta_pad = hellinger_affinity(padded.p, padded.q, ls.value);
      const double rhs_pad = fault_factor * 0.25 * std::pow(prior.pi, ls.value) *
                             std::pow(1.0 - prior.pi, 1.0 - ls.value) * beta_pad * beta_pad;
      t.check(delta - rhs_pad, dump);
    }
    out.push_back(t.result());
    out.push_back(tp.result());
  }

  {
    detail::Tally t("one-shot.tensorisation",
                    "brute-force beta(P^x4, Q^x4) equals beta(P,Q)^4 within 1e-10", 0.0);
    const std::int64_t n = detail::scaled(1000, cfg.trials);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 3));
      auto [p, q] = random_pair(rng, k, false);
      const double lambda = rng.uniform(0.05, 0.95);
      double brute = 0.0;
      const int reps = 4;
      std::vector<std::size_t> idx(reps, 0);
      for (;;) {
        double pm = 1.0, qm = 1.0;
        for (int r = 0; r < reps; ++r) {
          pm *= p.mass(idx[static_cast<std::size_t>(r)]);
          qm *= q.mass(idx[static_cast<std::size_t>(r)]);
        }
        brute += detail::affinity_term(pm, qm, lambda);
        int pos = reps - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == k) {
          idx[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
      const double tensor = tensorized_affinity(hellinger_affinity(p, q, lambda), reps);
      t.check(1e-10 - std::abs(brute - tensor), [&] {
        return detail::dump_pair(p, q, "\"lambda\":" + fmt17(lambda) + ",\"brute\":" + fmt17(brute) +
                                           ",\"tensor\":" + fmt17(tensor));
      });
    }
    out.push_back(t.result());
  }
  return out;
}

// --- sandwich suite -------------------------------------------------------

inline std::vector<CriterionResult> run_sandwich_suite(const RunConfig& cfg) {
  Rng rng(cfg.seed + 1);
  std::vector<CriterionResult> out;

  {
    detail::Tally t("sandwich.bounds-contain-exact",
                    "sc_bounds.lower <= sc_exact <= sc_bounds.upper (n* <= 200)", 0.0);
    // Pinned worked instance first: Ber(3/4) vs Ber(1/4), pi = 1/2, delta = 1/32.
    {
      const Distribution p = bernoulli(0.75), q = bernoulli(0.25);
      const Prior prior(0.5);
      const ScBounds b = sc_bounds(p, q, prior, 1.0 / 32.0);
      const auto exact = sc_exact(p, q, prior, 1.0 / 32.0, 200, cfg.caps);
      const double m = exact ? static_cast<double>(std::min(*exact - b.lower, b.upper - *exact)) : -1.0;
      t.check(m, [&] {
        return detail::dump_pair(p, q, "\"lower\":" + std::to_string(b.lower) +
                                           ",\"upper\":" + std::to_string(b.upper) + ",\"exact\":" +
                                           (exact ? std::to_string(*exact) : "null"));
      });
    }
    const std::int64_t n = detail::scaled(500, cfg.trials);
    std::int64_t done = 0;
    while (done < n) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 4));
      auto [p, q] = random_pair(rng, k, false);
      if (rng.uniform01() < 0.4) {
        // nearby pair: large n*, stresses the upper end of the search range
        const double eps = rng.log_uniform(0.05, 0.8);
        std::vector<double> qm(p.masses());
        double sum = 0.0;
        for (std::size_t j = 0; j < qm.size(); ++j) {
          qm[j] *= 1.0 + eps * (rng.uniform01() - 0.5);
          sum += qm[j];
        }
        for (auto& x : qm) x /= sum;
        q = Distribution::trusted(std::move(qm));
      }
      const Prior prior(rng.log_uniform(0.02, 0.5));
      const double delta = rng.log_uniform(prior.pi * 1e-4, prior.pi / 16.0);
      ScBounds b;
      try {
        b = sc_bounds(p, q, prior, delta);
      } catch (const error&) {
        continue;
      }
      if (b.upper > 200) continue;
      ++done;
      const auto exact = sc_exact(p, q, prior, delta, 200, cfg.caps);
      const double m = exact ? static_cast<double>(std::min(*exact - b.lower, b.upper - *exact)) : -1.0;
      t.check(m, [&] {
        return detail::dump_pair(p, q, "\"pi\":" + fmt17(prior.pi) + ",\"delta\":" + fmt17(delta) +
                                           ",\"lower\":" + std::to_string(b.lower) +
                                           ",\"upper\":" + std::to_string(b.upper) + ",\"exact\":" +
                                           (exact ? std::to_string(*exact) : "null"));
      });
    }
    out.push_back(t.result());
  }

  {
    detail::Tally t("sandwich.product-error-oracle",
                    "type-class product error equals full k^n brute force within 1e-10", 0.0);
    const std::int64_t n = detail::scaled(300, cfg.trials);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 3));
      auto [p, q] = random_pair(rng, k, true);
      const Prior prior(rng.uniform(0.05, 0.5));
      const int reps = static_cast<int>(rng.uniform_int(1, 8));
      double brute = 0.0;
      std::vector<std::size_t> idx(static_cast<std::size_t>(reps), 0);
      for (;;) {
        double pm = prior.pi, qm = 1.0 - prior.pi;
        for (int r = 0; r < reps; ++r) {
          pm *= p.mass(idx[static_cast<std::size_t>(r)]);
          qm *= q.mass(idx[static_cast<std::size_t>(r)]);
        }
        brute += std::min(pm, qm);
        int pos = reps - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == k) {
          idx[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
      const double exact = bayes_error_product(p, q, prior, reps, cfg.caps);
      t.check(1e-10 - std::abs(brute - exact), [&] {
        return detail::dump_pair(p, q, "\"pi\":" + fmt17(prior.pi) + ",\"n\":" + std::to_string(reps) +
                                           ",\"brute\":" + fmt17(brute) + ",\"exact\":" + fmt17(exact));
      });
    }
    out.push_back(t.result());
  }
  return out;
}

// --- reverse-DPI suite ----------------------------------------------------

inline std::vector<CriterionResult> run_revdpi_suite(const RunConfig& cfg) {
  Rng rng(cfg.seed + 2);
  std::vector<CriterionResult> out;

  {
    detail::Tally t("revdpi.reverse-markov-floor",
                    "DP objective >= (1/13) E[Z] min{1, D/R}", cfg.tolerance);
    const std::int64_t n = detail::scaled(10000, cfg.trials);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, 30));
      const double bound = rng.log_uniform(0.1, 10.0);
      std::vector<double> vals(k);
      for (auto& v : vals) v = rng.uniform01() * bound * 0.999;
      std::vector<double> mass = random_distribution(rng, k).masses();
      const int d = static_cast<int>(rng.uniform_int(2, 8));
      double mean = 0.0;
      for (std::size_t j = 0; j < k; ++j) mean += vals[j] * mass[j];
      if (!(mean > 0.0)) continue;
      const LevelSet ls = reverse_markov_levels(vals, mass, bound, d);
      const double r = std::min(static_cast<double>(k), 1.0 + std::log(bound / mean));
      const double floor = mean / 13.0 * std::min(1.0, static_cast<double>(d) / r);
      t.check(ls.objective - floor, [&] {
        return "{\"values\":" + json_number_array(vals) + ",\"masses\":" + json_number_array(mass) +
               ",\"bound\":" + fmt17(bound) + ",\"d\":" + std::to_string(d) +
               ",\"objective\":" + fmt17(ls.objective) + ",\"floor\":" + fmt17(floor) + "}";
      });
    }
    out.push_back(t.result());
  }

  {
    detail::Tally t("revdpi.reverse-markov-exhaustive",
                    "level DP equals exhaustive level search (k <= 12, D <= 5)", cfg.tolerance);
    const std::int64_t n = detail::scaled(1000, cfg.trials);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, 12));
      const double bound = 1.0;
      std::vector<double> vals(k);
      for (auto& v : vals) v = rng.uniform01() * 0.999;
      std::vector<double> mass = random_distribution(rng, k).masses();
      const int d = static_cast<int>(rng.uniform_int(2, 5));
      double mean = 0.0;
      for (std::size_t j = 0; j < k; ++j) mean += vals[j] * mass[j];
      if (!(mean > 0.0)) continue;
      const LevelSet ls = reverse_markov_levels(vals, mass, bound, d);

      // Exhaustive: choose d-1 levels from the support values plus the bound
      // (with repetition covered by smaller selections).
      std::vector<double> cand = vals;
      cand.push_back(bound);
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      double best = 0.0;
      std::vector<std::size_t> pick;
      const auto eval = [&](const std::vector<std::size_t>& sel) {
        std::vector<double> lv;
        for (auto ix : sel) lv.push_back(cand[ix]);
        lv.push_back(bound);
        double obj = 0.0;
        for (std::size_t a = 0; a + 1 < lv.size(); ++a) {
          double w = 0.0;
          for (std::size_t j = 0; j < k; ++j)
            if (vals[j] >= lv[a] && vals[j] < lv[a + 1]) w += mass[j];
          obj += lv[a] * w;
        }
        best = std::max(best, obj);
      };
      const auto rec = [&](auto&& self, std::size_t from) -> void {
        if (!pick.empty()) eval(pick);
        if (pick.size() + 1 >= static_cast<std::size_t>(d)) return;
        for (std::size_t c = from; c < cand.size(); ++c) {
          pick.push_back(c);
          self(self, c + 1);
          pick.pop_back();
        }
      };
      rec(rec, 0);
      t.check(cfg.tolerance - std::abs(ls.objective - best), [&] {
        return "{\"values\":" + json_number_array(vals) + ",\"masses\":" + json_number_array(mass) +
               ",\"d\":" + std::to_string(d) + ",\"dp\":" + fmt17(ls.objective) +
               ",\"exhaustive\":" + fmt17(best) + "}";
      });
    }
    out.push_back(t.result());
  }

  {
    detail::Tally t("revdpi.threshold-dp-exhaustive",
                    "interval DP equals exhaustive contiguous splits (k <= 10, D <= 4)",
                    cfg.tolerance);
    const std::int64_t n = detail::scaled(1000, cfg.trials);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 10));
      auto [p, q] = random_pair(rng, k, true);
      const double lambda = rng.uniform(0.05, 0.95);
      const DivergenceSpec spec = hellinger_spec(lambda);
      const int d = static_cast<int>(rng.uniform_int(2, 4));
      const auto prof = ratio_profile(p, q);
      const ThresholdResult dp = best_threshold_channel(prof, d, spec);
      double best = kNegInf;
      for_each_threshold_channel(prof.size(), static_cast<std::size_t>(d), [&](const ThresholdChannel& tc) {
        best = std::max(best, detail::threshold_value(prof, tc, spec));
      });
      t.check(cfg.tolerance - std::abs(dp.value - best), [&] {
        return detail::dump_pair(p, q, "\"lambda\":" + fmt17(lambda) + ",\"d\":" + std::to_string(d) +
                                           ",\"dp\":" + fmt17(dp.value) + ",\"exhaustive\":" + fmt17(best));
      });
    }
    out.push_back(t.result());
  }

  {
    detail::Tally t("revdpi.constructive-guarantee",
                    "achieved >= (1/52) min{1, 26C1/C2, D/R} H_lambda", cfg.tolerance);
    detail::Tally tdpi("revdpi.constructive-dpi", "achieved <= H_lambda(P,Q)", cfg.tolerance);
    detail::Tally tpull("revdpi.levels-pullback",
                        "pulled-back divergence retains the staircase objective (half of it at D = 2, "
                        "where only one branch fits)",
                        cfg.tolerance);
    const double lambdas[] = {0.3, 0.5, 0.7, 0.9};
    const std::int64_t n = detail::scaled(10000, cfg.trials);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 8));
      auto [p, q] = random_pair(rng, k, true);
      const std::size_t li = static_cast<std::size_t>(i % 4);
      const int d = static_cast<int>(rng.uniform_int(2, 8));
      QuantizerReport rep;
      try {
        rep = constructive_hellinger_quantizer(p, q, lambdas[li], d);
      } catch (const error& err) {
        if (err.code() == errc::zero_divergence) continue;
        throw;
      }
      const double h = hellinger_divergence(p, q, lambdas[li]);
      const auto dump = [&] {
        return detail::dump_pair(
            p, q, "\"lambda\":" + fmt17(lambdas[li]) + ",\"d\":" + std::to_string(d) +
                      ",\"achieved\":" + fmt17(rep.achieved) + ",\"guarantee\":" + fmt17(rep.guarantee) +
                      ",\"case\":" +
                      (rep.case_taken == QuantizerCase::heavy_tail ? "\"heavy_tail\"" : "\"bounded_part\"") +
                      ",\"R\":" + fmt17(rep.R));
      };
      t.check(rep.achieved - rep.guarantee, dump);
      tdpi.check(h - rep.achieved, dump);
      if (rep.case_taken == QuantizerCase::bounded_part)
        tpull.check(rep.achieved - (d == 2 ? 0.5 : 1.0) * rep.levels.objective, dump);
    }
    out.push_back(t.result());
    out.push_back(tdpi.result());
    out.push_back(tpull.result());
  }

  {
    detail::Tally t("revdpi.inter-lambda",
                    "(a/b) H_b <= H_a <= ((1-a)/(1-b)) H_b for 0 < a < b < 1", cfg.tolerance);
    const std::int64_t n = detail::scaled(10000, cfg.trials);
    for (std::int64_t i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 6));
      auto [p, q] = random_pair(rng, k, true);
      double a = rng.uniform(0.02, 0.98), b = rng.uniform(0.02, 0.98);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-4) continue;
      const double ha = hellinger_divergence(p, q, a);
      const double hb = hellinger_divergence(p, q, b);
      const double lo = a / b * hb, hi = (1.0 - a) / (1.0 - b) * hb;
      t.check(std::min(ha - lo, hi - ha), [&] {
        return detail::dump_pair(p, q, "\"alpha\":" + fmt17(a) + ",\"beta\":" + fmt17(b) +
                                           ",\"h_alpha\":" + fmt17(ha) + ",\"h_beta\":" + fmt17(hb));
      });
    }
    out.push_back(t.result());
  }

  {
    detail::Tally t("revdpi.tvlike-grid",
                    "f_l <= 1 on [0, 1/l] for all l; c1 l x <= f_l(x) <= 2 l x beyond for l <= 1/2",
                    cfg.tolerance);
    const double c1 = (1.0 - std::sqrt(2.0 / 3.0)) / 4.0;
    for (int il = 1; il <= 19; ++il) {
      const double lambda = 0.05 * il;
      const auto f = [lambda](double x) { return (1.0 - lambda) + lambda * x - std::pow(x, lambda); };
      const double b = 1.0 / lambda;
      for (int i = 0; i <= 2000; ++i) {
        const double x = b * i / 2000.0;
        t.check(1.0 - f(x), [&] {
          return "{\"lambda\":" + fmt17(lambda) + ",\"x\":" + fmt17(x) + ",\"f\":" + fmt17(f(x)) + "}";
        });
      }
      for (int i = 1; i <= 2000; ++i) {
        const double x = b * std::pow(1e6 / b, i / 2000.0);
        const double fx = f(x);
        // The lower pinch with the fixed constant c1 is provable for
        // lambda <= 1/2 only; larger exponents go through the 1-lambda mirror.
        const double low = lambda <= 0.5 ? fx - c1 * lambda * x : kPosInf;
        t.check(std::min(low, 2.0 * lambda * x - fx), [&] {
          return "{\"lambda\":" + fmt17(lambda) + ",\"x\":" + fmt17(x) + ",\"f\":" + fmt17(fx) + "}";
        });
      }
    }
    out.push_back(t.result());
  }
  return out;
}

// --- sequential suite -----------------------------------------------------

inline std::vector<CriterionResult> run_sequential_suite(const RunConfig& cfg) {
  Rng rng(cfg.seed + 3);
  std::vector<CriterionResult> out;

  {
    detail::Tally t("sequential.affinity-floor",
                    "beta_lambda(transcript laws) >= beta_star^n for random strategies", 1e-10);
    detail::Tally tinfo("sequential.constraints-never-help",
                        "protocol error >= unconstrained product error", cfg.tolerance);
    const std::int64_t n = detail::scaled(1000, cfg.trials);
    while (t.result().trials < n) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 5));
      auto [p0, q0] = random_pair(rng, k, false);
      const auto prof = ratio_profile(p0, q0);
      auto [p, q] = profile_distributions(prof);  // strategies act on merged atoms
      if (prof.size() < 2) continue;
      const int d = static_cast<int>(rng.uniform_int(2, 3));
      const int rounds = static_cast<int>(rng.uniform_int(1, 4));
      const Prior prior(rng.log_uniform(0.05, 0.5));
      const double delta = rng.log_uniform(prior.pi * 1e-3, prior.pi / 2.0);
      const double lambda = lambda_star(prior, delta).value;
      const SequentialStrategy strat = random_strategy(rng, prof.size(), d, rounds);
      const AffinityCheck c = sequential_affinity_check(p, q, lambda, strat, rounds, cfg.caps);
      const auto dump = [&] {
        return detail::dump_pair(p, q, "\"lambda\":" + fmt17(lambda) + ",\"n\":" + std::to_string(rounds) +
                                           ",\"d\":" + std::to_string(d) + ",\"lhs\":" + fmt17(c.lhs) +
                                           ",\"rhs\":" + fmt17(c.rhs));
      };
      t.check(c.lhs - c.rhs, dump);
      const double pe = protocol_error(p, q, prior, strat, rounds, cfg.caps);
      const double ue = bayes_error_product(p, q, prior, rounds, cfg.caps);
      tinfo.check(pe - ue, dump);
    }
    out.push_back(t.result());
    out.push_back(tinfo.result());
  }

  {
    detail::Tally t("sequential.factor-4",
                    "certified sequential lower bound >= (n*_id^thresh - 1)/4", 0.0);
    const std::int64_t wanted = detail::scaled(100, cfg.trials);
    std::int64_t attempts = 0;
    while (t.result().trials < wanted && attempts < wanted * 50) {
      ++attempts;
      const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 4));
      auto [p, q] = random_pair(rng, k, false);
      const Prior prior(rng.log_uniform(0.05, 0.5));
      const double delta = rng.log_uniform(prior.pi / 200.0, prior.pi / 16.0);
      const int d = static_cast<int>(rng.uniform_int(2, 3));
      std::optional<std::int64_t> nid;
      try {
        nid = n_star_id_threshold(p, q, prior, delta, d, 200, cfg.caps);
      } catch (const error&) {
        continue;
      }
      if (!nid) continue;
      const std::int64_t ncert = n_star_seq_certified_lower(p, q, prior, delta, d);
      t.check(static_cast<double>(4 * ncert - (*nid - 1)), [&] {
        return detail::dump_pair(p, q, "\"pi\":" + fmt17(prior.pi) + ",\"delta\":" + fmt17(delta) +
                                           ",\"d\":" + std::to_string(d) +
                                           ",\"n_id\":" + std::to_string(*nid) +
                                           ",\"n_cert\":" + std::to_string(ncert));
      });
    }
    if (t.result().trials < wanted)
      t.check(-1.0, [&] { return std::string("{\"error\":\"fewer instances terminated than required\"}"); });
    out.push_back(t.result());
  }
  return out;
}

// --- hardness suite -------------------------------------------------------

inline std::vector<CriterionResult> run_hardness_suite(const RunConfig& cfg) {
  std::vector<CriterionResult> out;
  detail::Tally tshape("hardness.theta-shape",
                       "best_threshold(2)/H tracks a fitted c/log(1/H) within +-30%", 0.0);
  detail::Tally tmono("hardness.ratio-decreases", "retention ratio decreases along the rho sweep", 1e-9);
  detail::Tally tgen("hardness.generator-sane", "H/rho in [0.1, 10]; k =~ log(1/rho)", 0.0);

  const DivergenceSpec spec = hellinger_spec(0.5);
  std::vector<double> rhos, ratios, xs, ks;
  for (int j = 0; j <= 5; ++j) rhos.push_back(0.01 * std::pow(4.0, -j));  // ~3 decades
  for (double rho : rhos) {
    const HardInstance inst = hard_instance(0.5, rho);
    const double h = hellinger_divergence(inst.p, inst.q, 0.5);
    const double best2 = best_threshold_channel(inst.p, inst.q, 2, spec).value;
    ratios.push_back(best2 / h);
    xs.push_back(1.0 / std::log(1.0 / h));
    ks.push_back(static_cast<double>(inst.scales));
    const auto dump = [&] {
      return "{\"rho\":" + fmt17(rho) + ",\"k\":" + std::to_string(inst.scales) + ",\"h\":" + fmt17(h) +
             ",\"best2\":" + fmt17(best2) + "}";
    };
    tgen.check(std::min(h / rho - 0.1, 10.0 - h / rho), dump);
    const double klog = static_cast<double>(inst.scales) / std::log(1.0 / rho);
    tgen.check(std::min(klog - 0.3, 1.5 - klog), dump);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    num += ratios[i] * xs[i];
    den += xs[i] * xs[i];
  }
  const double c = num / den;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double fit = c * xs[i];
    tshape.check(std::min(1.3 * fit - ratios[i], ratios[i] - 0.7 * fit), [&] {
      return "{\"rho\":" + fmt17(rhos[i]) + ",\"ratio\":" + fmt17(ratios[i]) + ",\"fit\":" + fmt17(fit) +
             ",\"c\":" + fmt17(c) + "}";
    });
    if (i > 0)
      tmono.check(ratios[i - 1] - ratios[i], [&] {
        return "{\"rho\":" + fmt17(rhos[i]) + ",\"ratio\":" + fmt17(ratios[i]) +
               ",\"prev\":" + fmt17(ratios[i - 1]) + "}";
      });
  }
  out.push_back(tshape.result());
  out.push_back(tmono.result());
  out.push_back(tgen.result());
  return out;
}

// --- driver ----------------------------------------------------------------

inline std::vector<CriterionResult> run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "one-shot") return run_one_shot_suite(cfg);
  if (name == "sandwich") return run_sandwich_suite(cfg);
  if (name == "revdpi") return run_revdpi_suite(cfg);
  if (name == "sequential") return run_sequential_suite(cfg);
  if (name == "hardness") return run_hardness_suite(cfg);
  if (name == "all") {
    std::vector<CriterionResult> out;
    for (const char* s : {"one-shot", "sandwich", "revdpi", "sequential", "hardness"}) {
      auto r = run_suite(s, cfg);
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }
  fail(errc::precondition_violated, "unknown suite '" + name + "'");
}

}  // namespace hypotest
