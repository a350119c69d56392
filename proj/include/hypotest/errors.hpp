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

#include <stdexcept>
#include <string>

namespace hypotest {

enum class errc {
  negative_mass,
  mass_sum_out_of_tolerance,
  duplicate_label,
  label_mismatch,
  dimension_mismatch,
  invalid_divergence_spec,
  enumeration_too_large,
  lambda_out_of_range,
  prior_out_of_range,
  delta_out_of_range,
  precondition_violated,
  degenerate_error,
  identical_distributions,
  regime_violation,
  d_less_than_two,
  empty_expectation,
  support_exceeds_bound,
  missing_tvlike_params,
  zero_divergence,
  rho_too_large,
  transcript_space_too_large,
  support_too_large,
};

// Library errors carry a code so callers (in particular the CLI) can map them
// onto an exit-code contract without parsing messages.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Input-shape problems (bad masses, mismatched labels) versus mathematical
// precondition gates (delta out of range, degenerate Bayes error, ...).
inline bool is_validation_error(errc c) {
  switch (c) {
    case errc::negative_mass:
    case errc::mass_sum_out_of_tolerance:
    case errc::duplicate_label:
    case errc::label_mismatch:
    case errc::dimension_mismatch:
    case errc::invalid_divergence_spec:
      return true;
    default:
      return false;
  }
}

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace hypotest
