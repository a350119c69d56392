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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypotest/distribution.hpp"
#include "hypotest/errors.hpp"

namespace hypotest {

// Parameters of a "TV-like" generator: f is bounded by B on [0, b] and pinched
// between C1*x and C2*x beyond b. Divergences of this form admit a reverse
// data-processing inequality (see quantize.hpp).
struct TvLikeParams {
  double b = 0.0;
  double B = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
};

// An f-divergence given by its generator, the limit slope f'(inf), and
// optionally its TV-like parameters. Construction spot-checks f(1) = 0,
// nonnegativity of TV-like generators, and midpoint convexity on a grid;
// these are sanity checks, not proofs.
class DivergenceSpec {
 public:
  DivergenceSpec(std::string name, std::function<double(double)> f, double f_prime_inf,
                 std::optional<TvLikeParams> tvlike = std::nullopt)
      : name_(std::move(name)), f_(std::move(f)), f_prime_inf_(f_prime_inf), tvlike_(tvlike) {
    check();
  }

  double f(double x) const { return f_(x); }
  double f_prime_inf() const { return f_prime_inf_; }
  const std::string& name() const { return name_; }
  const std::optional<TvLikeParams>& tvlike() const { return tvlike_; }

 private:
  void check() const {
    if (std::abs(f_(1.0)) > 1e-12)
      fail(errc::invalid_divergence_spec, name_ + ": f(1) != 0");
    // Midpoint convexity on a coarse grid.
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(0.05 * i);  // [0, 2]
    for (int i = 1; i <= 24; ++i) grid.push_back(2.0 * std::pow(1.5, i));
    for (std::size_t i = 0; i + 2 < grid.size(); ++i) {
      const double a = grid[i], c = grid[i + 2];
      const double lhs = f_(0.5 * (a + c));
      const double rhs = 0.5 * (f_(a) + f_(c));
      if (std::isfinite(lhs) && std::isfinite(rhs) && lhs > rhs + 1e-9)
        fail(errc::invalid_divergence_spec, name_ + ": midpoint convexity violated near x=" + std::to_string(a));
    }
    if (tvlike_) {
      const auto& t = *tvlike_;
      if (t.b <= 0 || t.B <= 0 || t.C1 < 0 || t.C2 < 0 || t.C1 > t.C2)
        fail(errc::invalid_divergence_spec, name_ + ": malformed TV-like parameters");
      // 1e4 log-spaced points on (0, 1e6].
      const int n = 10000;
      for (int i = 1; i <= n; ++i) {
        const double x = std::pow(10.0, -6.0 + 12.0 * i / n);
        const double fx = f_(x);
        if (fx < -1e-12)
          fail(errc::invalid_divergence_spec, name_ + ": TV-like generator negative at x=" + std::to_string(x));
        if (x <= t.b) {
          if (fx > t.B + 1e-12)
            fail(errc::invalid_divergence_spec, name_ + ": f exceeds B on [0,b]");
        } else {
          if (fx < t.C1 * x - 1e-12 || fx > t.C2 * x + 1e-12)
            fail(errc::invalid_divergence_spec, name_ + ": f leaves [C1 x, C2 x] beyond b");
        }
      }
      if (f_(0.0) > t.B + 1e-12)
        fail(errc::invalid_divergence_spec, name_ + ": f(0) exceeds B");
    }
  }

  std::string name_;
  std::function<double(double)> f_;
  double f_prime_inf_;
  std::optional<TvLikeParams> tvlike_;
};

// TV-like constants for the Hellinger-lambda generator
// f(x) = (1-lambda) + lambda*x - x^lambda: bounded by 1 on [0, 1/lambda] and
// pinched between c1*lambda*x and 2*lambda*x beyond, c1 = (1-sqrt(2/3))/4.
// The lower pinch holds for lambda <= 1/2 only (at lambda = 0.6 it already
// fails just above the knee); larger exponents are served through the
// symmetry H_lambda(P,Q) = H_{1-lambda}(Q,P), see constructive quantisation.
inline TvLikeParams hellinger_tvlike_params(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) fail(errc::lambda_out_of_range, "lambda must be in (0,1)");
  if (lambda > 0.5)
    fail(errc::lambda_out_of_range,
         "TV-like constants hold for lambda <= 1/2; use the 1-lambda mirror for larger exponents");
  TvLikeParams t;
  t.b = 1.0 / lambda;
  t.B = 1.0;
  t.C1 = lambda * (1.0 - std::sqrt(2.0 / 3.0)) / 4.0;
  t.C2 = 2.0 * lambda;
  return t;
}

inline DivergenceSpec hellinger_spec(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) fail(errc::lambda_out_of_range, "lambda must be in (0,1)");
  auto f = [lambda](double x) { return (1.0 - lambda) + lambda * x - std::pow(x, lambda); };
  std::optional<TvLikeParams> tv;
  if (lambda <= 0.5) tv = hellinger_tvlike_params(lambda);
  return DivergenceSpec("hellinger-" + std::to_string(lambda), f, lambda, tv);
}

inline DivergenceSpec total_variation_spec() {
  // b = 2 keeps C1 positive: (x-1)/2 >= x/4 for x >= 2.
  TvLikeParams t{2.0, 0.5, 0.25, 0.5};
  return DivergenceSpec("tv", [](double x) { return 0.5 * std::abs(x - 1.0); }, 0.5, t);
}

// Not TV-like (superlinear generators); provided for comparison output only.
inline DivergenceSpec kl_spec() {
  return DivergenceSpec("kl", [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; }, kPosInf);
}

inline DivergenceSpec chi_squared_spec() {
  return DivergenceSpec("chi2", [](double x) { return x * x - 1.0; }, kPosInf);
}

// Contribution of one aggregated cell (p, q) to D_f, with the f'(inf)
// convention when q = 0 and the 0*f(0/0) = 0 convention when both vanish.
inline double f_cell_value(double p, double q, const DivergenceSpec& spec) {
  if (q > 0.0) return q * spec.f(p / q);
  if (p > 0.0) {
    if (std::isinf(spec.f_prime_inf())) return kPosInf;
    return spec.f_prime_inf() * p;
  }
  return 0.0;
}

inline double f_divergence(const LikelihoodRatioProfile& prof, const DivergenceSpec& spec) {
  double s = 0.0;
  for (const auto& e : prof.entries) {
    const double v = f_cell_value(e.p_mass, e.q_mass, spec);
    if (std::isinf(v)) return kPosInf;
    s += v;
  }
  return s;
}

inline double f_divergence(const Distribution& p, const Distribution& q, const DivergenceSpec& spec) {
  double s = 0.0;
  for (const auto& [pm, qm] : align(p, q)) {
    const double v = f_cell_value(pm, qm, spec);
    if (std::isinf(v)) return kPosInf;
    s += v;
  }
  return s;
}

namespace detail {

inline double affinity_term(double pm, double qm, double lambda) {
  if (pm <= 0.0 || qm <= 0.0) return 0.0;  // 0^lambda := 0
  return std::exp(lambda * std::log(pm) + (1.0 - lambda) * std::log(qm));
}

}  // namespace detail

// Hellinger-lambda affinity beta_lambda = sum_x P(x)^lambda Q(x)^(1-lambda).
inline double hellinger_affinity(const Distribution& p, const Distribution& q, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) fail(errc::lambda_out_of_range, "lambda must be in (0,1)");
  double s = 0.0;
  for (const auto& [pm, qm] : align(p, q)) s += detail::affinity_term(pm, qm, lambda);
  return std::min(1.0, std::max(0.0, s));
}

// Same, over two mass vectors indexed identically (e.g. transcript laws).
inline double hellinger_affinity(const std::vector<double>& p, const std::vector<double>& q, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) fail(errc::lambda_out_of_range, "lambda must be in (0,1)");
  if (p.size() != q.size()) fail(errc::dimension_mismatch, "mass vector length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += detail::affinity_term(p[i], q[i], lambda);
  return std::min(1.0, std::max(0.0, s));
}

inline double hellinger_divergence(const Distribution& p, const Distribution& q, double lambda) {
  return 1.0 - hellinger_affinity(p, q, lambda);
}

// beta^n in log space; the n-sample affinity of product measures.
inline double tensorized_affinity(double beta, std::int64_t n) {
  if (!(beta >= 0.0 && beta <= 1.0)) fail(errc::precondition_violated, "beta must be in [0,1]");
  if (n < 1) fail(errc::precondition_violated, "n must be positive");
  if (beta == 0.0) return 0.0;
  if (beta == 1.0) return 1.0;
  return std::exp(static_cast<double>(n) * std::log(beta));
}

}  // namespace hypotest
