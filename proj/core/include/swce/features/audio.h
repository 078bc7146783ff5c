// core/include/swce/features/audio.h

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

#ifndef SWCE_FEATURES_AUDIO_H_
#define SWCE_FEATURES_AUDIO_H_

#include <cstddef>
#include <vector>

namespace swce::features {

inline constexpr int kSampleRate = 16000;
// 250 ms analysis window, 50 ms overlap between neighbours -> 200 ms hop.
inline constexpr std::size_t kWindowSamples = 4000;
inline constexpr std::size_t kHopSamples = 3200;

inline constexpr std::size_t kNumMfcc = 13;
inline constexpr std::size_t kNumMelBands = 26;
inline constexpr std::size_t kNumCqtBins = 24;
inline constexpr std::size_t kFeatureDim = kNumMfcc + 1 + kNumCqtBins;

// Floor applied before every log in the feature pipeline.
inline constexpr double kLogFloor = 1e-10;

struct AudioSignal {
  std::vector<double> samples;
  int sample_rate = kSampleRate;

  // Throws FormatError on a sample rate other than 16 kHz and NumericError
  // on non-finite samples.
  void validate() const;
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

}  // namespace swce::features

#endif  // SWCE_FEATURES_AUDIO_H_
