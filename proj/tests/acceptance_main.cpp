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

// Acceptance driver: runs every property suite at full trial counts with the
// default seed and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria (0 = all pass).

#include <cstdio>

#include "hypotest/io.hpp"
#include "hypotest/verify.hpp"

int main() {
  hypotest::RunConfig cfg;  // defaults: seed 20250809, per-criterion trials
  int failures = 0;
  for (const char* suite : {"one-shot", "sandwich", "revdpi", "sequential", "hardness"}) {
    const auto results = hypotest::run_suite(suite, cfg);
    for (const auto& r : results) {
      std::printf("%s %-36s trials=%-6lld violations=%-4lld worst_margin=%s\n", r.pass ? "PASS" : "FAIL",
                  r.id.c_str(), static_cast<long long>(r.trials), static_cast<long long>(r.violations),
                  hypotest::fmt17(r.worst_margin).c_str());
      if (!r.pass) {
        ++failures;
        std::printf("  counterexample: %s\n", r.counterexample.empty() ? "{}" : r.counterexample.c_str());
      }
    }
  }
  std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed" : "acceptance: FAILURES");
  return failures;
}
