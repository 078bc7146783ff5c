// core/src/features/cqt.cc

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

#include "swce/features/cqt.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "swce/common/errors.h"
#include "swce/features/audio.h"
#include "swce/features/mfcc.h"

namespace swce::features {

namespace {

struct Kernel {
  std::size_t offset = 0;
  std::vector<std::complex<double>> taps;
};

const std::vector<Kernel>& kernels() {
  static const std::vector<Kernel> bank = [] {
    const double q = cqt_quality_factor();
    std::vector<Kernel> out(kNumCqtBins);
    for (std::size_t b = 0; b < kNumCqtBins; ++b) {
      const std::size_t len = cqt_kernel_length(b);
      const std::vector<double> window = hann_window(len);
      Kernel& k = out[b];
      k.offset = (kWindowSamples - len) / 2;
      k.taps.resize(len);
      for (std::size_t n = 0; n < len; ++n) {
        const double phase = -2.0 * std::numbers::pi * q * static_cast<double>(n) / len;
        k.taps[n] = window[n] / static_cast<double>(len) * std::polar(1.0, phase);
      }
    }
    return out;
  }();
  return bank;
}

}  // namespace

double cqt_quality_factor() { return 1.0 / (std::pow(2.0, 1.0 / kCqtBinsPerOctave) - 1.0); }

std::vector<double> cqt_center_frequencies() {
  std::vector<double> f(kNumCqtBins);
  for (std::size_t b = 0; b < kNumCqtBins; ++b)
    f[b] = kCqtMinHz * std::pow(2.0, static_cast<double>(b) / kCqtBinsPerOctave);
  return f;
}

std::size_t cqt_kernel_length(std::size_t bin) {
  const double f = cqt_center_frequencies().at(bin);
  const auto len = static_cast<std::size_t>(std::ceil(cqt_quality_factor() * kSampleRate / f));
  return std::min(len, kWindowSamples);
}

std::vector<double> cqt(std::span<const double> frame) {
  if (frame.size() != kWindowSamples)
    throw DimensionError(fmt::format("frame of {} samples, expected {}", frame.size(),
                                     kWindowSamples));
  std::vector<double> out(kNumCqtBins);
  const auto& bank = kernels();
  for (std::size_t b = 0; b < kNumCqtBins; ++b) {
    std::complex<double> acc = 0.0;
    const Kernel& k = bank[b];
    for (std::size_t n = 0; n < k.taps.size(); ++n) acc += frame[k.offset + n] * k.taps[n];
    out[b] = std::log(std::max(std::abs(acc), kLogFloor));
  }
  return out;
}

}  // namespace swce::features
