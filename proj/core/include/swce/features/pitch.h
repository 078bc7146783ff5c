// core/include/swce/features/pitch.h

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

#ifndef SWCE_FEATURES_PITCH_H_
#define SWCE_FEATURES_PITCH_H_

#include <span>
#include <vector>

namespace swce::features {

inline constexpr double kMinF0Hz = 60.0;
inline constexpr double kMaxF0Hz = 400.0;
inline constexpr double kVoicingThreshold = 0.3;

// Normalized autocorrelation
//   r(lag) = sum_n x[n] x[n+lag] / sqrt(sum_n x[n]^2 * sum_n x[n+lag]^2)
// for lag = 0 .. max_lag, sums over the overlapping part of the frame.
// Lags with zero energy give 0.
std::vector<double> normalized_autocorrelation(std::span<const double> frame,
                                               std::size_t max_lag);

// Autocorrelation pitch estimate of a 4000-sample frame in Hz, searched over
// 60-400 Hz. Returns 0 for unvoiced frames (peak below 0.3, or silence).
//
// The shortest lag that is a local peak within 90% of the strongest peak is
// taken, which avoids reporting subharmonics; the lag is refined by
// parabolic interpolation.
double estimate_f0(std::span<const double> frame);

}  // namespace swce::features

#endif  // SWCE_FEATURES_PITCH_H_
