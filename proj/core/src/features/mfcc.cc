// core/src/features/mfcc.cc

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

#include "swce/features/mfcc.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.h"
#include "swce/common/errors.h"

namespace swce::features {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank::MelFilterbank() {
  const double top = hz_to_mel(kSampleRate / 2.0);
  edges_hz_.resize(kNumMelBands + 2);
  for (std::size_t i = 0; i < edges_hz_.size(); ++i)
    edges_hz_[i] = mel_to_hz(top * static_cast<double>(i) / (kNumMelBands + 1));
  const std::size_t bins = kMfccFftSize / 2 + 1;
  weights_.assign(kNumMelBands, std::vector<double>(bins, 0.0));
  for (std::size_t b = 0; b < kNumMelBands; ++b)
    for (std::size_t k = 0; k < bins; ++k)
      weights_[b][k] = weight(b, static_cast<double>(k) * kSampleRate / kMfccFftSize);
}

const MelFilterbank& MelFilterbank::standard() {
  static const MelFilterbank bank;
  return bank;
}

double MelFilterbank::weight(std::size_t band, double hz) const {
  const double lo = edges_hz_[band], mid = edges_hz_[band + 1], hi = edges_hz_[band + 2];
  if (hz <= lo || hz >= hi) return 0.0;
  return hz <= mid ? (hz - lo) / (mid - lo) : (hi - hz) / (hi - mid);
}

std::vector<double> MelFilterbank::apply(std::span<const double> power) const {
  if (power.size() != kMfccFftSize / 2 + 1)
    throw DimensionError(fmt::format("mel filterbank expects {} bins, got {}",
                                     kMfccFftSize / 2 + 1, power.size()));
  std::vector<double> out(kNumMelBands, 0.0);
  for (std::size_t b = 0; b < kNumMelBands; ++b)
    for (std::size_t k = 0; k < power.size(); ++k) out[b] += weights_[b][k] * power[k];
  return out;
}

std::vector<double> hann_window(std::size_t length) {
  std::vector<double> w(length);
  if (length == 1) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t n = 0; n < length; ++n)
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / (length - 1));
  return w;
}

std::vector<double> power_spectrum(std::span<const double> frame) {
  if (frame.size() != kWindowSamples)
    throw DimensionError(fmt::format("frame of {} samples, expected {}", frame.size(),
                                     kWindowSamples));
  static const std::vector<double> window = hann_window(kWindowSamples);
  std::vector<double> windowed(kWindowSamples);
  for (std::size_t n = 0; n < kWindowSamples; ++n) windowed[n] = frame[n] * window[n];
  const auto bins = detail::real_fft(windowed, kMfccFftSize);
  std::vector<double> power(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k) power[k] = std::norm(bins[k]);
  return power;
}

std::vector<double> cepstrum_from_mel(std::span<const double> mel_energies) {
  const std::size_t m = mel_energies.size();
  std::vector<double> logs(m);
  for (std::size_t i = 0; i < m; ++i) logs[i] = std::log(std::max(mel_energies[i], kLogFloor));
  std::vector<double> out(kNumMfcc);
  for (std::size_t k = 0; k < kNumMfcc; ++k) {
    const double s = k == 0 ? std::sqrt(1.0 / m) : std::sqrt(2.0 / m);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      acc += logs[i] * std::cos(std::numbers::pi * k * (i + 0.5) / m);
    out[k] = s * acc;
  }
  return out;
}

std::vector<double> mfcc_from_power(std::span<const double> power) {
  return cepstrum_from_mel(MelFilterbank::standard().apply(power));
}

std::vector<double> mfcc(std::span<const double> frame) {
  return mfcc_from_power(power_spectrum(frame));
}

}  // namespace swce::features
