// core/src/autodiff/conv.cc

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

#include <fmt/format.h>

#include "node.h"
#include "swce/autodiff/ops.h"
#include "swce/common/errors.h"

namespace swce::ad {

using detail::make_result;
using detail::Node;

std::size_t conv1d_output_length(std::size_t length, std::size_t kernel,
                                 std::size_t stride, std::size_t padding) {
  const std::size_t padded = length + 2 * padding;
  if (kernel == 0 || stride == 0 || padded < kernel) return 0;
  return (padded - kernel) / stride + 1;
}

Tensor conv1d(const Tensor& x, const Tensor& weight, const Tensor& bias,
              std::size_t kernel, std::size_t stride, std::size_t padding) {
  if (x.rank() != 2 || weight.rank() != 2 || bias.rank() != 1)
    throw DimensionError(fmt::format("conv1d: expected x[T,C], w[K*C,O], b[O]; got {} {} {}",
                                     shape_string(x.shape()), shape_string(weight.shape()),
                                     shape_string(bias.shape())));
  const std::size_t t_in = x.rows(), c_in = x.cols(), c_out = weight.cols();
  if (weight.rows() != kernel * c_in || bias.size() != c_out)
    throw DimensionError(fmt::format(
        "conv1d: weight {} / bias {} do not fit kernel {} over {} input channels",
        shape_string(weight.shape()), shape_string(bias.shape()), kernel, c_in));
  const std::size_t t_out = conv1d_output_length(t_in, kernel, stride, padding);
  if (t_out == 0)
    throw DimensionError(fmt::format("conv1d: input {} shorter than kernel {}",
                                     shape_string(x.shape()), kernel));

  auto xv = x.values(), wv = weight.values(), bv = bias.values();
  std::vector<double> out(t_out * c_out);
  for (std::size_t t = 0; t < t_out; ++t) {
    double* o = out.data() + t * c_out;
    std::copy(bv.begin(), bv.end(), o);
    for (std::size_t k = 0; k < kernel; ++k) {
      const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t * stride + k) -
                                 static_cast<std::ptrdiff_t>(padding);
      if (src < 0 || src >= static_cast<std::ptrdiff_t>(t_in)) continue;
      const double* xr = xv.data() + static_cast<std::size_t>(src) * c_in;
      const double* wk = wv.data() + k * c_in * c_out;
      for (std::size_t c = 0; c < c_in; ++c) {
        const double xc = xr[c];
        const double* wr = wk + c * c_out;
        for (std::size_t j = 0; j < c_out; ++j) o[j] += xc * wr[j];
      }
    }
  }

  return make_result(
      {t_out, c_out}, std::move(out), {x, weight, bias},
      [t_in, c_in, c_out, t_out, kernel, stride, padding](Node& self) {
        Node& x = *self.parents[0];
        Node& w = *self.parents[1];
        Node& b = *self.parents[2];
        const double* g = self.grad.data();
        if (b.requires_grad) {
          auto gb = b.grad_buffer();
          for (std::size_t t = 0; t < t_out; ++t)
            for (std::size_t j = 0; j < c_out; ++j) gb[j] += g[t * c_out + j];
        }
        double* gx = x.requires_grad ? x.grad_buffer().data() : nullptr;
        double* gw = w.requires_grad ? w.grad_buffer().data() : nullptr;
        for (std::size_t t = 0; t < t_out; ++t) {
          const double* gt = g + t * c_out;
          for (std::size_t k = 0; k < kernel; ++k) {
            const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t * stride + k) -
                                       static_cast<std::ptrdiff_t>(padding);
            if (src < 0 || src >= static_cast<std::ptrdiff_t>(t_in)) continue;
            const std::size_t s = static_cast<std::size_t>(src);
            for (std::size_t c = 0; c < c_in; ++c) {
              const std::size_t row = (k * c_in + c) * c_out;
              if (gx) {
                double acc = 0.0;
                for (std::size_t j = 0; j < c_out; ++j) acc += gt[j] * w.value[row + j];
                gx[s * c_in + c] += acc;
              }
              if (gw) {
                const double xc = x.value[s * c_in + c];
                if (xc == 0.0) continue;
                for (std::size_t j = 0; j < c_out; ++j) gw[row + j] += xc * gt[j];
              }
            }
          }
        }
      });
}

}  // namespace swce::ad
