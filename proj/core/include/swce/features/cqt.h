// core/include/swce/features/cqt.h

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

#ifndef SWCE_FEATURES_CQT_H_
#define SWCE_FEATURES_CQT_H_

#include <span>
#include <vector>

namespace swce::features {

inline constexpr double kCqtMinHz = 110.0;
inline constexpr int kCqtBinsPerOctave = 12;

// Q = 1 / (2^(1/12) - 1)
double cqt_quality_factor();

// fmin * 2^(b / 12) for b = 0 .. 23.
std::vector<double> cqt_center_frequencies();

// Kernel length in samples of bin b: ceil(Q * fs / f_b).
std::size_t cqt_kernel_length(std::size_t bin);

// 24 log-magnitudes (floored at 1e-10) of a 4000-sample frame, each the
// modulus of the inner product with a Hann-windowed complex exponential at
// the bin's center frequency, centered in the frame and normalized by its
// length.
std::vector<double> cqt(std::span<const double> frame);

}  // namespace swce::features

#endif  // SWCE_FEATURES_CQT_H_
