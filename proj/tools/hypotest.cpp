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

// Command-line front end. All numeric work happens in the library; this file
// only parses inputs, formats JSON/CSV, and maps errors onto exit codes:
//   0 ok, 1 verification violation, 2 parse error, 3 validation error,
//   4 precondition/gate violation.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypotest/bayes.hpp"
#include "hypotest/caps.hpp"
#include "hypotest/distribution.hpp"
#include "hypotest/divergence.hpp"
#include "hypotest/io.hpp"
#include "hypotest/protocols.hpp"
#include "hypotest/quantize.hpp"
#include "hypotest/sample_complexity.hpp"
#include "hypotest/verify.hpp"

namespace {

using hypotest::Caps;
using hypotest::Distribution;
using hypotest::fmt17;
using hypotest::PairInput;
using hypotest::Prior;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitGate = 4;

struct ParseFailure {
  std::string message;
};

PairInput load_pair(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseFailure{"cannot open input file '" + path + "'"};
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseFailure{std::string("malformed JSON: ") + e.what()};
  }
  return hypotest::pair_from_json(j);
}

Caps caps_from_env() {
  Caps caps;
  if (const char* v = std::getenv("HYPOTEST_CAPS")) {
    std::string s(v);
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseFailure{"HYPOTEST_CAPS must be 'typeclass:transcript'"};
    try {
      caps.type_class_cap = std::stoll(s.substr(0, colon));
      caps.transcript_cap = std::stoll(s.substr(colon + 1));
    } catch (const std::exception&) {
      throw ParseFailure{"HYPOTEST_CAPS must be 'typeclass:transcript'"};
    }
  }
  return caps;
}

std::string ratio_or_inf(double r) {
  return std::isinf(r) ? std::string("\"inf\"") : fmt17(r);
}

int cmd_divergence(const std::string& input, double lambda, const std::string& fname) {
  const PairInput pq = load_pair(input);
  std::string out;
  if (!fname.empty()) {
    hypotest::DivergenceSpec spec = fname == "tv"     ? hypotest::total_variation_spec()
                                    : fname == "kl"   ? hypotest::kl_spec()
                                    : fname == "chi2" ? hypotest::chi_squared_spec()
                                                      : hypotest::hellinger_spec(lambda);
    out = "{\"" + spec.name() + "\":" + fmt17(hypotest::f_divergence(pq.p, pq.q, spec)) + "}";
  } else {
    const double beta = hypotest::hellinger_affinity(pq.p, pq.q, lambda);
    const double h = hypotest::f_divergence(pq.p, pq.q, hypotest::hellinger_spec(lambda));
    const double tv = hypotest::f_divergence(pq.p, pq.q, hypotest::total_variation_spec());
    out = "{\"beta\":" + fmt17(beta) + ",\"h\":" + fmt17(h) + ",\"tv\":" + fmt17(tv) + "}";
  }
  std::cout << out << "\n";
  return kExitOk;
}

int cmd_sample_complexity(const std::string& input, double pi, double delta, const std::string& mode,
                          std::int64_t n_max, bool permissive, const Caps& caps) {
  const PairInput pq = load_pair(input);
  const Prior prior(pi);
  const hypotest::ScBounds b = hypotest::sc_bounds(pq.p, pq.q, prior, delta, permissive);
  std::string exact = "null";
  std::string extra;
  if (mode == "exact") {
    const auto e = hypotest::sc_exact(pq.p, pq.q, prior, delta, n_max, caps);
    exact = e ? std::to_string(*e) : "null";
  } else if (mode == "simplified") {
    extra = ",\"simplified\":" + fmt17(hypotest::sc_simplified(pq.p, pq.q, prior, delta, permissive));
  }
  std::cout << "{\"lower\":" << b.lower << ",\"upper\":" << b.upper << ",\"exact\":" << exact
            << ",\"lambda_star\":" << fmt17(b.lambda_star.value) << extra << "}\n";
  return kExitOk;
}

int cmd_quantize(const std::string& input, int levels, double lambda, const std::string& mode) {
  const PairInput pq = load_pair(input);
  const hypotest::DivergenceSpec spec = hypotest::hellinger_spec(lambda);
  const auto prof = hypotest::ratio_profile(pq.p, pq.q);
  const double h = hypotest::f_divergence(prof, spec);

  hypotest::ThresholdChannel channel;
  std::string extra;
  double achieved = 0.0;
  if (mode == "constructive") {
    const auto rep = hypotest::constructive_hellinger_quantizer(pq.p, pq.q, lambda, levels);
    channel = rep.channel;
    achieved = rep.achieved;
    extra = ",\"guarantee\":" + fmt17(rep.guarantee) + ",\"case\":" +
            (rep.case_taken == hypotest::QuantizerCase::heavy_tail ? "\"heavy_tail\"" : "\"bounded_part\"") +
            ",\"R\":" + fmt17(rep.R);
  } else {
    const auto best = hypotest::best_threshold_channel(prof, levels, spec);
    channel = best.channel;
    achieved = best.value;
  }

  std::string cells = "[";
  for (std::size_t c = 0; c < channel.cell_count(); ++c) {
    auto [lo, hi] = channel.cell(c, prof.size());
    if (c) cells += ",";
    cells += "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  }
  cells += "]";
  std::string ratios = "[";
  for (std::size_t i = 0; i < prof.size(); ++i) {
    if (i) ratios += ",";
    ratios += ratio_or_inf(prof.entries[i].ratio);
  }
  ratios += "]";
  std::cout << "{\"h\":" << fmt17(h) << ",\"achieved\":" << fmt17(achieved) << ",\"cells\":" << cells
            << ",\"ratios\":" << ratios << extra << "}\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::int64_t trials, const Caps& caps) {
  hypotest::RunConfig cfg;
  cfg.seed = seed;
  cfg.trials = trials;
  cfg.caps = caps;
  const auto results = hypotest::run_suite(suite, cfg);
  bool ok = true;
  for (const auto& r : results) {
    std::printf("%s %-34s trials=%lld violations=%lld worst_margin=%s\n", r.pass ? "PASS" : "FAIL",
                r.id.c_str(), static_cast<long long>(r.trials), static_cast<long long>(r.violations),
                fmt17(r.worst_margin).c_str());
    if (!r.pass) {
      ok = false;
      std::printf("counterexample %s %s\n", r.id.c_str(),
                  r.counterexample.empty() ? "{}" : r.counterexample.c_str());
    }
  }
  std::printf("%s: %zu criteria, seed %llu\n", ok ? "OK" : "VIOLATIONS FOUND", results.size(),
              static_cast<unsigned long long>(seed));
  return ok ? kExitOk : kExitViolation;
}

std::vector<double> parse_log_range(const std::string& range) {
  double lo = 0, hi = 0;
  long count = 0;
  char trail = 0;
  if (std::sscanf(range.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &count, &trail) != 3 || lo <= 0 || hi <= 0 ||
      count < 1)
    throw ParseFailure{"range must be 'lo:hi:count' with positive endpoints"};
  std::vector<double> out;
  for (long i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    out.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
  }
  return out;
}

std::vector<int> parse_int_range(const std::string& range) {
  int lo = 0, hi = 0;
  char trail = 0;
  if (std::sscanf(range.c_str(), "%d:%d%c", &lo, &hi, &trail) != 2 || lo > hi || lo < 0)
    throw ParseFailure{"range must be 'lo:hi' with lo <= hi"};
  std::vector<int> out;
  for (int v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

int cmd_sweep(const std::string& param, const std::string& range, const std::string& csv_path,
              const std::string& input, double pi, double lambda, std::int64_t n_max, bool permissive,
              const Caps& caps) {
  std::ostringstream csv;
  if (param == "delta") {
    if (input.empty()) throw ParseFailure{"delta sweep needs an input file"};
    const PairInput pq = load_pair(input);
    const Prior prior(pi);
    csv << "delta,lambda_star,lower,upper,exact\n";
    for (double delta : parse_log_range(range)) {
      const auto b = hypotest::sc_bounds(pq.p, pq.q, prior, delta, permissive);
      const auto e = b.upper <= n_max ? hypotest::sc_exact(pq.p, pq.q, prior, delta, n_max, caps)
                                      : std::nullopt;
      csv << fmt17(delta) << "," << fmt17(b.lambda_star.value) << "," << b.lower << "," << b.upper << ","
          << (e ? std::to_string(*e) : "") << "\n";
    }
  } else if (param == "D") {
    if (input.empty()) throw ParseFailure{"D sweep needs an input file"};
    const PairInput pq = load_pair(input);
    const auto spec = hypotest::hellinger_spec(lambda);
    const auto prof = hypotest::ratio_profile(pq.p, pq.q);
    const double h = hypotest::f_divergence(prof, spec);
    csv << "D,h,optimal,constructive,guarantee\n";
    for (int d : parse_int_range(range)) {
      if (d < 2) throw ParseFailure{"D sweep needs D >= 2"};
      const auto best = hypotest::best_threshold_channel(prof, d, spec);
      const auto rep = hypotest::constructive_hellinger_quantizer(pq.p, pq.q, lambda, d);
      csv << d << "," << fmt17(h) << "," << fmt17(best.value) << "," << fmt17(rep.achieved) << ","
          << fmt17(rep.guarantee) << "\n";
    }
  } else if (param == "rho") {
    const auto spec = hypotest::hellinger_spec(lambda);
    csv << "rho,k,H_lambda,best_D2,ratio\n";
    for (double rho : parse_log_range(range)) {
      const auto inst = hypotest::hard_instance(lambda, rho);
      const double h = hypotest::hellinger_divergence(inst.p, inst.q, lambda);
      const double best2 = hypotest::best_threshold_channel(inst.p, inst.q, 2, spec).value;
      csv << fmt17(rho) << "," << inst.scales << "," << fmt17(h) << "," << fmt17(best2) << ","
          << fmt17(best2 / h) << "\n";
    }
  } else {
    throw ParseFailure{"unknown sweep parameter '" + param + "'"};
  }

  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(csv_path);
    if (!out) throw ParseFailure{"cannot open CSV output '" + csv_path + "'"};
    out << csv.str();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binary hypothesis testing toolkit: divergences, exact Bayes errors,\n"
               "sample-complexity bounds, threshold quantisers, protocol certificates"};
  app.require_subcommand(1);

  std::string input, fname, mode = "bounds", suite = "all", param, range, csv_path;
  double lambda = 0.5, pi = 0.5, delta = 0.0;
  int levels = 2;
  std::int64_t n_max = 200, trials = 0;
  std::uint64_t seed = 20250809;
  bool permissive = false;

  auto* divergence = app.add_subcommand("divergence", "Hellinger affinity/divergence and TV of a pair");
  divergence->add_option("input", input, "JSON file with p and q mass arrays")->required();
  divergence->add_option("--lambda", lambda, "Hellinger exponent in (0,1), default 0.5");
  divergence->add_option("--f", fname, "named divergence instead: tv, kl, chi2");

  auto* sc = app.add_subcommand("sample-complexity", "two-sided bounds and exact oracle");
  sc->add_option("input", input, "JSON file with p and q mass arrays")->required();
  sc->add_option("--pi", pi, "prior in (0, 0.5]")->required();
  sc->add_option("--delta", delta, "target error in (0, pi/16]")->required();
  sc->add_option("--mode", mode, "bounds | exact | simplified (default bounds)");
  sc->add_option("--n-max", n_max, "search limit for exact mode (default 200)");
  sc->add_flag("--permissive", permissive, "compute outside delta <= pi/16 without a guarantee");

  auto* quant = app.add_subcommand("quantize", "optimal or constructive threshold quantiser");
  quant->add_option("input", input, "JSON file with p and q mass arrays")->required();
  quant->add_option("--levels", levels, "output alphabet size D >= 2")->required();
  quant->add_option("--lambda", lambda, "Hellinger exponent in (0,1), default 0.5");
  quant->add_option("--mode", mode, "optimal | constructive (default optimal)");

  auto* verify = app.add_subcommand("verify", "run the property suites");
  verify->add_option("--suite", suite, "all | one-shot | sandwich | revdpi | sequential | hardness");
  verify->add_option("--seed", seed, "RNG seed (default 20250809)");
  verify->add_option("--trials", trials, "override per-criterion trial counts");

  auto* sweep = app.add_subcommand("sweep", "CSV sweeps over delta, D, or rho");
  sweep->add_option("--param", param, "delta | D | rho")->required();
  sweep->add_option("--range", range, "'lo:hi:count' (log-spaced) or 'lo:hi' for D")->required();
  sweep->add_option("--csv", csv_path, "output file (default stdout)");
  sweep->add_option("input", input, "JSON file with p and q mass arrays (delta and D sweeps)");
  sweep->add_option("--pi", pi, "prior for the delta sweep");
  sweep->add_option("--lambda", lambda, "Hellinger exponent (D and rho sweeps)");
  sweep->add_option("--n-max", n_max, "exact-search limit for the delta sweep");
  sweep->add_flag("--permissive", permissive, "compute outside delta <= pi/16 without a guarantee");

  try {
    app.parse(argc, argv);
    const Caps caps = caps_from_env();
    if (divergence->parsed()) {
      if (mode == "bounds") mode.clear();  // unused here
      return cmd_divergence(input, lambda, fname);
    }
    if (sc->parsed())
      return cmd_sample_complexity(input, pi, delta, mode, n_max, permissive, caps);
    if (quant->parsed()) {
      if (mode == "bounds") mode = "optimal";
      return cmd_quantize(input, levels, lambda, mode);
    }
    if (verify->parsed()) return cmd_verify(suite, seed, trials, caps);
    if (sweep->parsed())
      return cmd_sweep(param, range, csv_path, input, pi, lambda, n_max, permissive, caps);
    return kExitParse;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "argument error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParseFailure& e) {
    std::cerr << "parse error: " << e.message << "\n";
    return kExitParse;
  } catch (const hypotest::error& e) {
    const bool validation = hypotest::is_validation_error(e.code());
    std::cerr << (validation ? "validation error: " : "precondition error: ") << e.what() << "\n";
    return validation ? kExitValidation : kExitGate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGate;
  }
}
