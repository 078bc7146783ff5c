// core/src/data/manifest.cc

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

#include "swce/data/manifest.h"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "swce/common/errors.h"

namespace swce::data {

namespace {

constexpr std::string_view kHeader = "id,path,label,split,duration_s";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string_view label_name(Label label) {
  switch (label) {
    case Label::kAD: return "AD";
    case Label::kMCI: return "MCI";
    case Label::kHC: return "HC";
  }
  throw ContractError("unknown label");
}

std::string_view split_name(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  throw ContractError("unknown split");
}

Label parse_label(std::string_view text) {
  for (Label l : kLabels)
    if (label_name(l) == text) return l;
  throw FormatError(fmt::format("label: expected AD|MCI|HC, got '{}'", text));
}

Split parse_split(std::string_view text) {
  for (Split s : {Split::kTrain, Split::kDev, Split::kTest})
    if (split_name(s) == text) return s;
  throw FormatError(fmt::format("split: expected train|dev|test, got '{}'", text));
}

std::vector<ManifestRecord> CorpusManifest::in_split(Split split) const {
  std::vector<ManifestRecord> out;
  for (const auto& r : records)
    if (r.split == split) out.push_back(r);
  return out;
}

void CorpusManifest::validate(const std::filesystem::path& root) const {
  std::unordered_set<std::string> ids;
  for (const auto& r : records) {
    if (!ids.insert(r.id).second) throw ContractError("manifest: duplicate clip id " + r.id);
    if (!root.empty() && !std::filesystem::exists(root / r.path))
      throw ContractError("manifest: missing file " + (root / r.path).string());
  }
}

std::string manifest_csv(const CorpusManifest& manifest) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& r : manifest.records) {
    if (r.id.find_first_of(",\n") != std::string::npos ||
        r.path.find_first_of(",\n") != std::string::npos)
      throw ContractError("manifest: ids and paths may not contain commas or newlines");
    out += fmt::format("{},{},{},{},{:.3f}\n", r.id, r.path, label_name(r.label),
                       split_name(r.split), r.duration_s);
  }
  return out;
}

CorpusManifest parse_manifest_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw FormatError(fmt::format("manifest header: expected '{}'", kHeader));
  CorpusManifest manifest;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 5)
      throw FormatError(fmt::format("manifest line {}: expected 5 fields, got {}", number,
                                    f.size()));
    ManifestRecord r;
    r.id = f[0];
    r.path = f[1];
    r.label = parse_label(f[2]);
    r.split = parse_split(f[3]);
    const char* end = f[4].data() + f[4].size();
    auto [ptr, ec] = std::from_chars(f[4].data(), end, r.duration_s);
    if (ec != std::errc() || ptr != end)
      throw FormatError(fmt::format("duration_s: line {} has '{}'", number, f[4]));
    manifest.records.push_back(std::move(r));
  }
  return manifest;
}

void write_manifest(const std::filesystem::path& path, const CorpusManifest& manifest) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << manifest_csv(manifest);
}

CorpusManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  return parse_manifest_csv(
      std::string((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>()));
}

}  // namespace swce::data
