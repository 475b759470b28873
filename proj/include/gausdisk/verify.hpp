// Copyright 2026 The gausdisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Module-level invariant suite behind the `verify` command.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gausdisk {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// Deterministic for a given seed. Errors raised by a check mark it failed.
VerifyReport run_verify(std::uint64_t seed = 1);

}  // namespace gausdisk
