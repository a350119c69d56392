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

#include <cstdint>

namespace hypotest {

// Enumeration budgets for the exact (exponential-in-principle) computations.
// These are plain data so callers can raise them on larger machines.
struct Caps {
  std::int64_t type_class_cap = 10'000'000;  // compositions of n into k parts
  std::int64_t transcript_cap = 1'000'000;   // transcripts D^n
};

}  // namespace hypotest
