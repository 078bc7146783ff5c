// core/include/swce/features/mfcc.h

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

#ifndef SWCE_FEATURES_MFCC_H_
#define SWCE_FEATURES_MFCC_H_

#include <span>
#include <vector>

#include "swce/features/audio.h"

namespace swce::features {

// FFT length used for a 4000-sample frame (zero-padded).
inline constexpr std::size_t kMfccFftSize = 4096;

// HTK mel scale.
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// 26 triangular filters, equally spaced on the mel scale over 0-8000 Hz,
// evaluated on the continuous frequency of each FFT bin.
class MelFilterbank {
 public:
  static const MelFilterbank& standard();

  // Band edges in Hz, kNumMelBands + 2 points; band b spans
  // [edges[b], edges[b + 2]] and peaks at edges[b + 1].
  const std::vector<double>& edges_hz() const { return edges_hz_; }
  double center_hz(std::size_t band) const { return edges_hz_[band + 1]; }
  // Weight of `band` at frequency `hz`.
  double weight(std::size_t band, double hz) const;

  // Power spectrum (kMfccFftSize / 2 + 1 bins) -> band energies.
  std::vector<double> apply(std::span<const double> power) const;

 private:
  MelFilterbank();
  std::vector<double> edges_hz_;
  // weights_[b][k] for FFT bin k
  std::vector<std::vector<double>> weights_;
};

// |FFT|^2 of the Hann-windowed frame, zero-padded to kMfccFftSize.
std::vector<double> power_spectrum(std::span<const double> frame);

// Symmetric Hann window.
std::vector<double> hann_window(std::size_t length);

// log(max(energy, 1e-10)) followed by an orthonormal DCT-II; first 13
// coefficients, c0 included.
std::vector<double> cepstrum_from_mel(std::span<const double> mel_energies);

// Full chain from an already computed power spectrum.
std::vector<double> mfcc_from_power(std::span<const double> power);

// 13 MFCCs of one 4000-sample frame. An all-zero frame yields the cepstrum
// of the log floor (c0 = sqrt(26) * log(1e-10), the rest zero).
std::vector<double> mfcc(std::span<const double> frame);

}  // namespace swce::features

#endif  // SWCE_FEATURES_MFCC_H_
