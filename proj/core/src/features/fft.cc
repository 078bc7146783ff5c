// core/src/features/fft.cc

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

#include "fft.h"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace swce::features::detail {

namespace {

// Planning is not thread-safe in FFTW; execution with the new-array
// interface is. FFTW_ESTIMATE keeps plan choice (and hence rounding)
// reproducible from run to run.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan forward_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard lock(plan_mutex());
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  std::vector<double> in(n);
  std::vector<fftw_complex> out(n / 2 + 1);
  fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(n, p);
  return p;
}

fftw_plan inverse_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> plans;
  std::lock_guard lock(plan_mutex());
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  std::vector<fftw_complex> in(n / 2 + 1);
  std::vector<double> out(n);
  fftw_plan p = fftw_plan_dft_c2r_1d(static_cast<int>(n), in.data(), out.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(n, p);
  return p;
}

}  // namespace

std::vector<std::complex<double>> real_fft(std::span<const double> input, std::size_t n) {
  std::vector<double> in(n, 0.0);
  std::copy_n(input.begin(), std::min(n, input.size()), in.begin());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(forward_plan(n), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> inverse_real_fft(std::span<const std::complex<double>> bins,
                                     std::size_t n) {
  std::vector<std::complex<double>> in(bins.begin(), bins.end());
  in.resize(n / 2 + 1);
  std::vector<double> out(n);
  fftw_execute_dft_c2r(inverse_plan(n), reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  return out;
}

}  // namespace swce::features::detail
