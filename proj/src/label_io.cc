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

#include "label_io.h"

#include <fstream>
#include <sstream>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "nlohmann/json.hpp"

namespace labeldp {

absl::StatusOr<LabelFile> ParseLabelCsv(std::string_view text) {
  std::vector<std::string> ids;
  std::vector<int8_t> labels;
  int line_number = 0;
  bool saw_header = false;
  for (absl::string_view raw :
       absl::StrSplit(absl::string_view(text.data(), text.size()), '\n')) {
    ++line_number;
    absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    if (!saw_header) {
      if (fields.size() != 2 || absl::StripAsciiWhitespace(fields[0]) != "id" ||
          absl::StripAsciiWhitespace(fields[1]) != "label") {
        return absl::DataLossError(
            absl::StrCat("line ", line_number, ": expected header 'id,label'"));
      }
      saw_header = true;
      continue;
    }
    if (fields.size() != 2) {
      return absl::DataLossError(absl::StrCat(
          "line ", line_number, ": expected 2 fields, found ", fields.size()));
    }
    int label = 0;
    if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(fields[1]), &label) ||
        (label != 1 && label != -1)) {
      return absl::DataLossError(absl::StrCat("line ", line_number, ": label '",
                                              fields[1], "' is not -1 or 1"));
    }
    ids.emplace_back(absl::StripAsciiWhitespace(fields[0]));
    labels.push_back(static_cast<int8_t>(label));
  }
  if (!saw_header) return absl::DataLossError("line 1: missing header");
  if (labels.empty()) {
    return absl::DataLossError(
        absl::StrCat("line ", line_number, ": no label rows"));
  }
  absl::StatusOr<LabelVector> vector = LabelVector::Create(std::move(labels));
  if (!vector.ok()) return vector.status();
  return LabelFile{std::move(ids), *std::move(vector)};
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteTextFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

absl::StatusOr<LabelFile> ReadLabelCsv(const std::string& path) {
  absl::StatusOr<std::string> text = ReadTextFile(path);
  if (!text.ok()) return text.status();
  return ParseLabelCsv(*text);
}

std::string FormatLabelCsv(const std::vector<std::string>& ids,
                           const LabelVector& labels) {
  std::string out = "id,label\n";
  for (size_t i = 0; i < labels.size(); ++i) {
    absl::StrAppend(&out, ids[i], ",", static_cast<int>(labels[i]), "\n");
  }
  return out;
}

absl::Status WriteLabelCsv(const std::string& path,
                           const std::vector<std::string>& ids,
                           const LabelVector& labels) {
  return WriteTextFile(path, FormatLabelCsv(ids, labels));
}

std::string PrivatizationRecordJson(const PrivatizationRecord& record) {
  nlohmann::ordered_json json;
  json["epsilon"] = record.params.epsilon();
  json["delta"] = record.params.sensitivity();
  json["seed"] = record.seed;
  json["n"] = record.output.size();
  json["q"] = record.score;
  json["flip_count"] = record.flip_count;
  return json.dump(2) + "\n";
}

}  // namespace labeldp
