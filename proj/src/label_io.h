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

#ifndef LABELDP_LABEL_IO_H_
#define LABELDP_LABEL_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "em_core.h"

namespace labeldp {

// Contents of an `id,label` CSV file.
struct LabelFile {
  std::vector<std::string> ids;
  LabelVector labels;
};

// Parses CSV text with the header `id,label` and labels in {-1, 1}.
// Malformed content yields DataLoss with the offending 1-based line number.
absl::StatusOr<LabelFile> ParseLabelCsv(std::string_view text);
absl::StatusOr<LabelFile> ReadLabelCsv(const std::string& path);

std::string FormatLabelCsv(const std::vector<std::string>& ids,
                           const LabelVector& labels);
absl::Status WriteLabelCsv(const std::string& path,
                           const std::vector<std::string>& ids,
                           const LabelVector& labels);

// Sidecar {epsilon, delta, seed, n, q, flip_count}.
std::string PrivatizationRecordJson(const PrivatizationRecord& record);

absl::StatusOr<std::string> ReadTextFile(const std::string& path);
absl::Status WriteTextFile(const std::string& path, std::string_view text);

}  // namespace labeldp

#endif  // LABELDP_LABEL_IO_H_
