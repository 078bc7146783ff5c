// core/src/features/pitch.cc

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

#include "swce/features/pitch.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "fft.h"
#include "swce/common/errors.h"
#include "swce/features/audio.h"

namespace swce::features {

std::vector<double> normalized_autocorrelation(std::span<const double> frame,
                                               std::size_t max_lag) {
  const std::size_t n = frame.size();
  if (max_lag >= n)
    throw DimensionError(fmt::format("lag {} does not fit a frame of {}", max_lag, n));
  std::size_t fft_n = 1;
  while (fft_n < 2 * n) fft_n <<= 1;
  auto spec = detail::real_fft(frame, fft_n);
  for (auto& c : spec) c = std::norm(c);
  const std::vector<double> raw = detail::inverse_real_fft(spec, fft_n);

  // prefix[i] = sum_{k < i} x[k]^2
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + frame[i] * frame[i];

  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    const double head = prefix[n - lag];
    const double tail = prefix[n] - prefix[lag];
    const double denom = std::sqrt(head * tail);
    if (denom > 0.0) r[lag] = raw[lag] / static_cast<double>(fft_n) / denom;
  }
  return r;
}

double estimate_f0(std::span<const double> frame) {
  if (frame.size() != kWindowSamples)
    throw DimensionError(fmt::format("frame of {} samples, expected {}", frame.size(),
                                     kWindowSamples));
  double energy = 0.0;
  for (double x : frame) energy += x * x;
  if (energy <= 1e-12) return 0.0;

  const auto min_lag = static_cast<std::size_t>(std::floor(kSampleRate / kMaxF0Hz));
  const auto max_lag = static_cast<std::size_t>(std::ceil(kSampleRate / kMinF0Hz));
  const std::vector<double> r = normalized_autocorrelation(frame, max_lag + 1);

  double best = -1.0;
  for (std::size_t lag = min_lag; lag <= max_lag; ++lag) best = std::max(best, r[lag]);
  if (best < kVoicingThreshold) return 0.0;

  std::size_t chosen = 0;
  for (std::size_t lag = min_lag; lag <= max_lag; ++lag) {
    const bool peak = r[lag] >= r[lag - 1] && r[lag] >= r[lag + 1];
    if (peak && r[lag] >= 0.9 * best) {
      chosen = lag;
      break;
    }
  }
  if (chosen == 0) return 0.0;

  const double a = r[chosen - 1], b = r[chosen], c = r[chosen + 1];
  const double curvature = a - 2.0 * b + c;
  double offset = curvature < 0.0 ? 0.5 * (a - c) / curvature : 0.0;
  offset = std::clamp(offset, -0.5, 0.5);
  const double f0 = kSampleRate / (static_cast<double>(chosen) + offset);
  return std::clamp(f0, kMinF0Hz, kMaxF0Hz);
}

}  // namespace swce::features
