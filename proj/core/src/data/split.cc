// core/src/data/split.cc

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

#include "swce/data/split.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "swce/common/errors.h"

namespace swce::data {

std::array<std::size_t, 3> dev_quota(const std::array<std::size_t, 3>& class_counts,
                                     double fraction) {
  const std::size_t total = std::accumulate(class_counts.begin(), class_counts.end(),
                                            std::size_t{0});
  const auto target = static_cast<std::size_t>(std::llround(fraction * total));
  std::array<std::size_t, 3> quota{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < 3; ++c) {
    const double exact = fraction * class_counts[c];
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    remainder[c] = exact - quota[c];
    assigned += quota[c];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < target && k < 3; ++k, ++assigned) ++quota[order[k]];
  return quota;
}

CorpusManifest split_corpus(const CorpusManifest& large, const CorpusManifest& small,
                            std::uint64_t seed) {
  std::array<std::vector<std::size_t>, 3> by_class;
  std::array<std::size_t, 3> small_counts{};
  for (std::size_t i = 0; i < large.records.size(); ++i)
    by_class[label_index(large.records[i].label)].push_back(i);
  for (const auto& r : small.records) ++small_counts[label_index(r.label)];
  for (Label l : kLabels) {
    if (by_class[label_index(l)].empty())
      throw ContractError(fmt::format("split: class {} is absent from the large set",
                                      label_name(l)));
    if (small_counts[label_index(l)] == 0)
      throw ContractError(fmt::format("split: class {} is absent from the small set",
                                      label_name(l)));
  }
  std::unordered_set<std::string> ids;
  for (const auto& r : large.records) ids.insert(r.id);
  for (const auto& r : small.records)
    if (ids.count(r.id)) throw ContractError("split: clip id " + r.id + " is in both sets");

  const auto quota = dev_quota({by_class[0].size(), by_class[1].size(), by_class[2].size()});
  std::mt19937_64 rng(seed);
  std::vector<bool> is_dev(large.records.size(), false);
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<std::size_t> members = by_class[c];
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t k = 0; k < quota[c]; ++k) is_dev[members[k]] = true;
  }

  CorpusManifest out;
  for (std::size_t i = 0; i < large.records.size(); ++i) {
    ManifestRecord r = large.records[i];
    r.split = is_dev[i] ? Split::kDev : Split::kTrain;
    out.records.push_back(std::move(r));
  }
  for (ManifestRecord r : small.records) {
    r.split = Split::kTest;
    out.records.push_back(std::move(r));
  }
  return out;
}

}  // namespace swce::data
