// core/src/features/fft.h

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

#ifndef SWCE_FEATURES_FFT_H_
#define SWCE_FEATURES_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace swce::features::detail {

// Real-input DFT of size n (input zero-padded or truncated to n), returning
// the n/2 + 1 non-negative-frequency bins. Thread-safe.
std::vector<std::complex<double>> real_fft(std::span<const double> input, std::size_t n);

// Inverse of real_fft, unnormalized (result is n times the true inverse).
std::vector<double> inverse_real_fft(std::span<const std::complex<double>> bins,
                                     std::size_t n);

}  // namespace swce::features::detail

#endif  // SWCE_FEATURES_FFT_H_
