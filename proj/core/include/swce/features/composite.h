// core/include/swce/features/composite.h

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

#ifndef SWCE_FEATURES_COMPOSITE_H_
#define SWCE_FEATURES_COMPOSITE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "swce/features/audio.h"

namespace swce::features {

// Row-major (num_frames x dim) per-frame feature matrix.
struct FeatureSequence {
  std::size_t num_frames = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  std::span<const double> row(std::size_t frame) const {
    return std::span<const double>(data).subspan(frame * dim, dim);
  }
  bool operator==(const FeatureSequence&) const = default;
};

// Per-column z-normalization statistics.
struct FeatureStats {
  std::vector<double> mean;
  std::vector<double> stddev;

  static FeatureStats identity(std::size_t dim);
  // Column mean and population standard deviation over every frame of
  // `sequences`. Columns with (numerically) zero spread get stddev 1 so they
  // pass through centered but unscaled.
  static FeatureStats estimate(std::span<const FeatureSequence> sequences);
};

// Un-normalized [mfcc(13) | f0(1) | cqt(24)] for every frame.
FeatureSequence raw_composite_features(const AudioSignal& signal);

// (x - mean) / stddev column by column.
void normalize_in_place(FeatureSequence& features, const FeatureStats& stats);

// raw_composite_features followed by normalization with caller-supplied
// (training split) statistics.
FeatureSequence composite_features(const AudioSignal& signal, const FeatureStats& stats);

}  // namespace swce::features

#endif  // SWCE_FEATURES_COMPOSITE_H_
