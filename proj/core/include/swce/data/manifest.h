// core/include/swce/data/manifest.h

// Copyright 2026  The SWCE Workbench Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SWCE_DATA_MANIFEST_H_
#define SWCE_DATA_MANIFEST_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace swce::data {

enum class Label { kAD = 0, kMCI = 1, kHC = 2 };
inline constexpr std::array<Label, 3> kLabels = {Label::kAD, Label::kMCI, Label::kHC};

enum class Split { kTrain, kDev, kTest };

std::string_view label_name(Label label);
std::string_view split_name(Split split);
// Exact, case-sensitive; throw FormatError.
Label parse_label(std::string_view text);
Split parse_split(std::string_view text);

inline std::size_t label_index(Label label) { return static_cast<std::size_t>(label); }

struct ManifestRecord {
  std::string id;
  std::string path;  // relative to the manifest directory
  Label label = Label::kAD;
  Split split = Split::kTrain;
  double duration_s = 0.0;

  bool operator==(const ManifestRecord&) const = default;
};

struct CorpusManifest {
  std::vector<ManifestRecord> records;

  std::vector<ManifestRecord> in_split(Split split) const;
  // Throws ContractError on duplicate ids, and on missing files when `root`
  // is given.
  void validate(const std::filesystem::path& root = {}) const;
  bool operator==(const CorpusManifest&) const = default;
};

// CSV with header `id,path,label,split,duration_s`.
std::string manifest_csv(const CorpusManifest& manifest);
CorpusManifest parse_manifest_csv(const std::string& text);
void write_manifest(const std::filesystem::path& path, const CorpusManifest& manifest);
CorpusManifest read_manifest(const std::filesystem::path& path);

}  // namespace swce::data

#endif  // SWCE_DATA_MANIFEST_H_
