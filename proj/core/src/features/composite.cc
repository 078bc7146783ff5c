// core/src/features/composite.cc

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

#include "swce/features/composite.h"

#include <fmt/format.h>

#include <cmath>

#include "swce/common/errors.h"
#include "swce/features/cqt.h"
#include "swce/features/framing.h"
#include "swce/features/mfcc.h"
#include "swce/features/pitch.h"

namespace swce::features {

FeatureStats FeatureStats::identity(std::size_t dim) {
  return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

FeatureStats FeatureStats::estimate(std::span<const FeatureSequence> sequences) {
  if (sequences.empty()) throw ContractError("feature statistics need at least one sequence");
  const std::size_t dim = sequences[0].dim;
  std::vector<double> mean(dim, 0.0), var(dim, 0.0);
  std::size_t frames = 0;
  for (const FeatureSequence& s : sequences) {
    if (s.dim != dim) throw DimensionError("feature sequences differ in dimension");
    for (std::size_t t = 0; t < s.num_frames; ++t)
      for (std::size_t j = 0; j < dim; ++j) mean[j] += s.data[t * dim + j];
    frames += s.num_frames;
  }
  for (double& m : mean) m /= static_cast<double>(frames);
  for (const FeatureSequence& s : sequences)
    for (std::size_t t = 0; t < s.num_frames; ++t)
      for (std::size_t j = 0; j < dim; ++j) {
        const double d = s.data[t * dim + j] - mean[j];
        var[j] += d * d;
      }
  FeatureStats stats{mean, std::vector<double>(dim)};
  for (std::size_t j = 0; j < dim; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(frames));
    stats.stddev[j] = sd > 1e-12 ? sd : 1.0;
  }
  return stats;
}

FeatureSequence raw_composite_features(const AudioSignal& signal) {
  const auto frames = frame_signal(signal);
  FeatureSequence out{frames.size(), kFeatureDim, {}};
  out.data.reserve(frames.size() * kFeatureDim);
  for (const auto& frame : frames) {
    const auto m = mfcc(frame);
    out.data.insert(out.data.end(), m.begin(), m.end());
    out.data.push_back(estimate_f0(frame));
    const auto c = cqt(frame);
    out.data.insert(out.data.end(), c.begin(), c.end());
  }
  return out;
}

void normalize_in_place(FeatureSequence& features, const FeatureStats& stats) {
  if (stats.mean.size() != features.dim || stats.stddev.size() != features.dim)
    throw DimensionError(fmt::format("statistics of dim {} for features of dim {}",
                                     stats.mean.size(), features.dim));
  for (std::size_t t = 0; t < features.num_frames; ++t)
    for (std::size_t j = 0; j < features.dim; ++j) {
      double& v = features.data[t * features.dim + j];
      v = (v - stats.mean[j]) / stats.stddev[j];
    }
}

FeatureSequence composite_features(const AudioSignal& signal, const FeatureStats& stats) {
  FeatureSequence f = raw_composite_features(signal);
  normalize_in_place(f, stats);
  return f;
}

}  // namespace swce::features
