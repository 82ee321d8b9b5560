//
// Copyright 2026 The LabelDP Authors
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
//

#ifndef LABELDP_CHECKS_H_
#define LABELDP_CHECKS_H_

#include <string>
#include <vector>

namespace labeldp {

struct CheckOptions {
  // Runs the score recursion with the sensitivity dropped from its
  // increment, which must make the mechanism identity checks fail.
  bool inject_recursion_fault = false;
  // When set, golden tables are read from <dir>/table_999.csv and
  // <dir>/table_95.csv instead of the embedded copies.
  std::string golden_dir;
};

struct CheckResult {
  std::string id;
  std::string description;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct CheckReport {
  std::vector<CheckResult> results;

  bool AllPassed() const;
  std::vector<std::string> FailedIds() const;
};

// The full invariant suite: truncated-binomial properties, the DP bound,
// the exponential-mechanism / randomized-response identity, loss checks
// and the golden budget tables.
CheckReport RunChecks(const CheckOptions& options = {});

std::string CheckReportJson(const CheckReport& report);

}  // namespace labeldp

#endif  // LABELDP_CHECKS_H_
