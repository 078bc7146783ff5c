// core/src/features/framing.cc

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

#include "swce/features/framing.h"

#include <fmt/format.h>

#include <cmath>

#include "swce/common/errors.h"

namespace swce::features {

void AudioSignal::validate() const {
  if (sample_rate != kSampleRate)
    throw FormatError(fmt::format("sample rate {} Hz, expected {}", sample_rate, kSampleRate));
  for (double s : samples)
    if (!std::isfinite(s)) throw NumericError("audio signal has non-finite samples");
}

std::size_t frame_count(std::size_t num_samples) {
  if (num_samples < kWindowSamples)
    throw TooShortError(fmt::format("signal of {} samples is shorter than one {}-sample window",
                                    num_samples, kWindowSamples));
  return (num_samples - kWindowSamples) / kHopSamples + 1;
}

std::vector<std::span<const double>> frame_signal(const AudioSignal& signal) {
  signal.validate();
  const std::size_t n = frame_count(signal.samples.size());
  std::vector<std::span<const double>> frames;
  frames.reserve(n);
  const std::span<const double> all(signal.samples);
  for (std::size_t i = 0; i < n; ++i)
    frames.push_back(all.subspan(i * kHopSamples, kWindowSamples));
  return frames;
}

}  // namespace swce::features
