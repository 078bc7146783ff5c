// core/include/swce/autodiff/ops.h

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

#ifndef SWCE_AUTODIFF_OPS_H_
#define SWCE_AUTODIFF_OPS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "swce/autodiff/tensor.h"

// Differentiable ops. Every op validates shapes up front and throws
// DimensionError naming the offending shapes. "Matrix" means rank 2,
// "row-vector" means rank 1 of the matrix's column count.
namespace swce::ad {

// Elementwise, identical shapes.
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);

// x[..., N] + bias[N], broadcast over every leading index.
Tensor add_bias(const Tensor& x, const Tensor& bias);
// x[..., N] * scale[N].
Tensor mul_bias(const Tensor& x, const Tensor& scale);

Tensor scale(const Tensor& x, double factor);
Tensor add_scalar(const Tensor& x, double offset);
Tensor neg(const Tensor& x);

Tensor sigmoid(const Tensor& x);
Tensor tanh(const Tensor& x);
// Exact form x * Phi(x) with the Gaussian CDF.
Tensor gelu(const Tensor& x);
Tensor exp(const Tensor& x);
// Throws NumericError on non-positive entries.
Tensor log(const Tensor& x);
Tensor sqrt(const Tensor& x);
Tensor square(const Tensor& x);

// Reductions to a scalar.
Tensor sum(const Tensor& x);
Tensor mean(const Tensor& x);
// [M, N] -> [N]: average over rows (time).
Tensor mean_rows(const Tensor& x);
// [M, N] -> [M].
Tensor sum_cols(const Tensor& x);

// [M, K] x [K, N] -> [M, N].
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& x);
Tensor reshape(const Tensor& x, Shape shape);

// Matrices stacked along rows (equal column counts) or columns (equal row
// counts).
Tensor concat_rows(std::span<const Tensor> parts);
Tensor concat_cols(std::span<const Tensor> parts);
Tensor slice_rows(const Tensor& x, std::size_t start, std::size_t count);
Tensor slice_cols(const Tensor& x, std::size_t start, std::size_t count);
// Row reverse of a matrix.
Tensor reverse_rows(const Tensor& x);

// out[i, :] = x[indices[i], :]; repeated indices accumulate in backward.
Tensor gather_rows(const Tensor& x, std::span<const std::size_t> indices);
// out[i, j] = x[i, indices[i][j]]; every inner list has the same length.
Tensor gather_cols(const Tensor& x,
                   const std::vector<std::vector<std::size_t>>& indices);
// [B, N], labels[B] -> [B] with out[i] = x[i, labels[i]].
Tensor pick(const Tensor& x, std::span<const std::size_t> labels);
// Rows whose mask entry is set are replaced by fill[N].
Tensor replace_rows(const Tensor& x, const std::vector<bool>& mask,
                    const Tensor& fill);

// Value of `value_source`, gradient routed to `grad_target` as identity
// (and to `value_source` as usual). Shapes must match.
Tensor straight_through(const Tensor& value_source, const Tensor& grad_target);

// Softmax / log-softmax over the last dimension with max subtraction.
// Throw NumericError on non-finite input.
Tensor softmax(const Tensor& x);
Tensor log_softmax(const Tensor& x);

// Normalizes the last dimension to zero mean and unit population variance.
Tensor normalize_last(const Tensor& x, double eps = 1e-5);
// normalize_last followed by the learned affine gamma * x + beta.
Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  double eps = 1e-5);

// Time-major 1-D convolution.
//   x:      [T, C_in]
//   weight: [K * C_in, C_out], row index k * C_in + c
//   bias:   [C_out]
// Output [floor((T + 2*padding - K) / stride) + 1, C_out]; zero padding.
Tensor conv1d(const Tensor& x, const Tensor& weight, const Tensor& bias,
              std::size_t kernel, std::size_t stride, std::size_t padding = 0);
std::size_t conv1d_output_length(std::size_t length, std::size_t kernel,
                                 std::size_t stride, std::size_t padding);

// Pairwise cosine similarity of rows: [M, D], [P, D] -> [M, P]. Throws
// ContractError when a row has zero norm.
Tensor cosine_similarity(const Tensor& a, const Tensor& b);

}  // namespace swce::ad

#endif  // SWCE_AUTODIFF_OPS_H_
