// core/include/swce/data/split.h

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

#ifndef SWCE_DATA_SPLIT_H_
#define SWCE_DATA_SPLIT_H_

#include <array>
#include <cstdint>

#include "swce/data/manifest.h"

namespace swce::data {

inline constexpr double kDevFraction = 0.2;

// Per-class dev counts: round(fraction * total) clips distributed over the
// classes by largest remainder of fraction * class_count (ties to the lower
// class index).
std::array<std::size_t, 3> dev_quota(const std::array<std::size_t, 3>& class_counts,
                                     double fraction = kDevFraction);

// test = every record of `small`; dev = a seeded, class-stratified
// dev_quota() sample of `large`; train = the rest of `large`. Records keep
// their relative order (large first). Throws ContractError when a class is
// missing from either manifest or the two share a clip id.
CorpusManifest split_corpus(const CorpusManifest& large, const CorpusManifest& small,
                            std::uint64_t seed);

}  // namespace swce::data

#endif  // SWCE_DATA_SPLIT_H_
