// core/src/autodiff/ops.cc

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

#include "swce/autodiff/ops.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "node.h"
#include "swce/common/errors.h"

namespace swce::ad {

using detail::make_result;
using detail::Node;

namespace {

void require_same_shape(const char* op, const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape())
    throw DimensionError(fmt::format("{}: shape mismatch {} vs {}", op,
                                     shape_string(a.shape()),
                                     shape_string(b.shape())));
}

void require_matrix(const char* op, const Tensor& x) {
  if (x.rank() != 2)
    throw DimensionError(fmt::format("{}: expected a matrix, got {}", op,
                                     shape_string(x.shape())));
}

void require_finite(const char* op, std::span<const double> v) {
  for (double d : v)
    if (!std::isfinite(d)) throw NumericError(fmt::format("{}: non-finite input", op));
}

std::size_t last_dim(const Tensor& x) {
  return x.rank() == 0 ? 1 : x.shape().back();
}

// Elementwise unary op given f(x) and f'(x, y).
template <typename F, typename DF>
Tensor unary(const Tensor& x, F f, DF df) {
  std::vector<double> out(x.size());
  auto xv = x.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(xv[i]);
  return make_result(x.shape(), std::move(out), {x}, [df](Node& self) {
    Node& p = *self.parents[0];
    auto g = p.grad_buffer();
    for (std::size_t i = 0; i < g.size(); ++i)
      g[i] += self.grad[i] * df(p.value[i], self.value[i]);
  });
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape("add", a, b);
  std::vector<double> out(a.size());
  auto av = a.values(), bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] + bv[i];
  return make_result(a.shape(), std::move(out), {a, b}, [](Node& self) {
    for (auto& p : self.parents) {
      if (!p->requires_grad) continue;
      auto g = p->grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
    }
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape("sub", a, b);
  std::vector<double> out(a.size());
  auto av = a.values(), bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] - bv[i];
  return make_result(a.shape(), std::move(out), {a, b}, [](Node& self) {
    for (int k = 0; k < 2; ++k) {
      auto& p = self.parents[k];
      if (!p->requires_grad) continue;
      const double sign = k == 0 ? 1.0 : -1.0;
      auto g = p->grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += sign * self.grad[i];
    }
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape("mul", a, b);
  std::vector<double> out(a.size());
  auto av = a.values(), bv = b.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
  return make_result(a.shape(), std::move(out), {a, b}, [](Node& self) {
    Node& a = *self.parents[0];
    Node& b = *self.parents[1];
    if (a.requires_grad) {
      auto g = a.grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * b.value[i];
    }
    if (b.requires_grad) {
      auto g = b.grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * a.value[i];
    }
  });
}

Tensor add_bias(const Tensor& x, const Tensor& bias) {
  const std::size_t n = last_dim(x);
  if (bias.rank() != 1 || bias.size() != n)
    throw DimensionError(fmt::format("add_bias: bias {} does not match {}",
                                     shape_string(bias.shape()),
                                     shape_string(x.shape())));
  std::vector<double> out(x.values().begin(), x.values().end());
  auto bv = bias.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += bv[i % n];
  return make_result(x.shape(), std::move(out), {x, bias}, [n](Node& self) {
    Node& x = *self.parents[0];
    Node& b = *self.parents[1];
    if (x.requires_grad) {
      auto g = x.grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
    }
    if (b.requires_grad) {
      auto g = b.grad_buffer();
      for (std::size_t i = 0; i < self.grad.size(); ++i) g[i % n] += self.grad[i];
    }
  });
}

Tensor mul_bias(const Tensor& x, const Tensor& scale_vec) {
  const std::size_t n = last_dim(x);
  if (scale_vec.rank() != 1 || scale_vec.size() != n)
    throw DimensionError(fmt::format("mul_bias: scale {} does not match {}",
                                     shape_string(scale_vec.shape()),
                                     shape_string(x.shape())));
  std::vector<double> out(x.size());
  auto xv = x.values(), sv = scale_vec.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = xv[i] * sv[i % n];
  return make_result(x.shape(), std::move(out), {x, scale_vec}, [n](Node& self) {
    Node& x = *self.parents[0];
    Node& s = *self.parents[1];
    if (x.requires_grad) {
      auto g = x.grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * s.value[i % n];
    }
    if (s.requires_grad) {
      auto g = s.grad_buffer();
      for (std::size_t i = 0; i < self.grad.size(); ++i)
        g[i % n] += self.grad[i] * x.value[i];
    }
  });
}

Tensor scale(const Tensor& x, double factor) {
  return unary(
      x, [factor](double v) { return v * factor; },
      [factor](double, double) { return factor; });
}

Tensor add_scalar(const Tensor& x, double offset) {
  return unary(
      x, [offset](double v) { return v + offset; },
      [](double, double) { return 1.0; });
}

Tensor neg(const Tensor& x) { return scale(x, -1.0); }

Tensor sigmoid(const Tensor& x) {
  return unary(
      x,
      [](double v) {
        if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
        const double e = std::exp(v);
        return e / (1.0 + e);
      },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor tanh(const Tensor& x) {
  return unary(
      x, [](double v) { return std::tanh(v); },
      [](double, double y) { return 1.0 - y * y; });
}

Tensor gelu(const Tensor& x) {
  return unary(
      x, [](double v) { return 0.5 * v * (1.0 + std::erf(v / std::numbers::sqrt2)); },
      [](double v, double) {
        const double cdf = 0.5 * (1.0 + std::erf(v / std::numbers::sqrt2));
        const double pdf = std::exp(-0.5 * v * v) * 0.5 * std::numbers::inv_sqrtpi *
                           std::numbers::sqrt2;
        return cdf + v * pdf;
      });
}

Tensor exp(const Tensor& x) {
  return unary(
      x, [](double v) { return std::exp(v); }, [](double, double y) { return y; });
}

Tensor log(const Tensor& x) {
  for (double v : x.values())
    if (!(v > 0)) throw NumericError("log: non-positive input");
  return unary(
      x, [](double v) { return std::log(v); }, [](double v, double) { return 1.0 / v; });
}

Tensor sqrt(const Tensor& x) {
  for (double v : x.values())
    if (v < 0) throw NumericError("sqrt: negative input");
  return unary(
      x, [](double v) { return std::sqrt(v); },
      [](double, double y) { return 0.5 / y; });
}

Tensor square(const Tensor& x) {
  return unary(
      x, [](double v) { return v * v; }, [](double v, double) { return 2.0 * v; });
}

Tensor sum(const Tensor& x) {
  double s = 0.0;
  for (double v : x.values()) s += v;
  return make_result({}, {s}, {x}, [](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (double& gi : g) gi += self.grad[0];
  });
}

Tensor mean(const Tensor& x) {
  double s = 0.0;
  for (double v : x.values()) s += v;
  const double n = static_cast<double>(x.size());
  return make_result({}, {s / n}, {x}, [n](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (double& gi : g) gi += self.grad[0] / n;
  });
}

Tensor mean_rows(const Tensor& x) {
  require_matrix("mean_rows", x);
  const std::size_t m = x.rows(), n = x.cols();
  std::vector<double> out(n, 0.0);
  auto xv = x.values();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j] += xv[i * n + j];
  for (double& v : out) v /= static_cast<double>(m);
  return make_result({n}, std::move(out), {x}, [m, n](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    const double inv = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i * n + j] += self.grad[j] * inv;
  });
}

Tensor sum_cols(const Tensor& x) {
  require_matrix("sum_cols", x);
  const std::size_t m = x.rows(), n = x.cols();
  std::vector<double> out(m, 0.0);
  auto xv = x.values();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i] += xv[i * n + j];
  return make_result({m}, std::move(out), {x}, [m, n](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i * n + j] += self.grad[i];
  });
}

namespace {

// c[m x n] += a[m x k] * b[k x n]
void gemm_nn(const double* a, const double* b, double* c, std::size_t m,
             std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      if (aip == 0.0) continue;
      const double* bp = b + p * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

// c[m x k] += g[m x n] * b[k x n]^T
void gemm_nt(const double* g, const double* b, double* c, std::size_t m,
             std::size_t n, std::size_t k) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* gi = g + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double* bp = b + p * n;
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += gi[j] * bp[j];
      c[i * k + p] += acc;
    }
  }
}

// c[k x n] += a[m x k]^T * g[m x n]
void gemm_tn(const double* a, const double* g, double* c, std::size_t m,
             std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* gi = g + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      if (aip == 0.0) continue;
      double* cp = c + p * n;
      for (std::size_t j = 0; j < n; ++j) cp[j] += aip * gi[j];
    }
  }
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix("matmul", a);
  require_matrix("matmul", b);
  if (a.cols() != b.rows())
    throw DimensionError(fmt::format("matmul: inner dimensions differ, {} x {}",
                                     shape_string(a.shape()),
                                     shape_string(b.shape())));
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  std::vector<double> out(m * n, 0.0);
  gemm_nn(a.values().data(), b.values().data(), out.data(), m, k, n);
  return make_result({m, n}, std::move(out), {a, b}, [m, k, n](Node& self) {
    Node& a = *self.parents[0];
    Node& b = *self.parents[1];
    if (a.requires_grad)
      gemm_nt(self.grad.data(), b.value.data(), a.grad_buffer().data(), m, n, k);
    if (b.requires_grad)
      gemm_tn(a.value.data(), self.grad.data(), b.grad_buffer().data(), m, k, n);
  });
}

Tensor transpose(const Tensor& x) {
  require_matrix("transpose", x);
  const std::size_t m = x.rows(), n = x.cols();
  std::vector<double> out(m * n);
  auto xv = x.values();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * m + i] = xv[i * n + j];
  return make_result({n, m}, std::move(out), {x}, [m, n](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) g[i * n + j] += self.grad[j * m + i];
  });
}

Tensor reshape(const Tensor& x, Shape shape) {
  if (shape_size(shape) != x.size())
    throw DimensionError(fmt::format("reshape: {} cannot become {}",
                                     shape_string(x.shape()), shape_string(shape)));
  std::vector<double> out(x.values().begin(), x.values().end());
  return make_result(std::move(shape), std::move(out), {x}, [](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
  });
}

Tensor concat_rows(std::span<const Tensor> parts) {
  if (parts.empty()) throw ContractError("concat_rows: no inputs");
  const std::size_t n = parts[0].cols();
  std::size_t m = 0;
  for (const Tensor& p : parts) {
    require_matrix("concat_rows", p);
    if (p.cols() != n)
      throw DimensionError(fmt::format("concat_rows: {} vs {}",
                                       shape_string(parts[0].shape()),
                                       shape_string(p.shape())));
    m += p.rows();
  }
  std::vector<double> out;
  out.reserve(m * n);
  for (const Tensor& p : parts) out.insert(out.end(), p.values().begin(), p.values().end());
  std::vector<Tensor> parents(parts.begin(), parts.end());
  return make_result({m, n}, std::move(out), std::move(parents), [](Node& self) {
    std::size_t offset = 0;
    for (auto& p : self.parents) {
      const std::size_t len = p->value.size();
      if (p->requires_grad) {
        auto g = p->grad_buffer();
        for (std::size_t i = 0; i < len; ++i) g[i] += self.grad[offset + i];
      }
      offset += len;
    }
  });
}

Tensor concat_cols(std::span<const Tensor> parts) {
  if (parts.empty()) throw ContractError("concat_cols: no inputs");
  const std::size_t m = parts[0].rows();
  std::size_t n = 0;
  for (const Tensor& p : parts) {
    require_matrix("concat_cols", p);
    if (p.rows() != m)
      throw DimensionError(fmt::format("concat_cols: {} vs {}",
                                       shape_string(parts[0].shape()),
                                       shape_string(p.shape())));
    n += p.cols();
  }
  std::vector<double> out(m * n);
  std::size_t col = 0;
  for (const Tensor& p : parts) {
    const std::size_t w = p.cols();
    auto pv = p.values();
    for (std::size_t i = 0; i < m; ++i)
      std::copy_n(pv.begin() + i * w, w, out.begin() + i * n + col);
    col += w;
  }
  std::vector<Tensor> parents(parts.begin(), parts.end());
  return make_result({m, n}, std::move(out), std::move(parents), [m, n](Node& self) {
    std::size_t col = 0;
    for (auto& p : self.parents) {
      const std::size_t w = p->shape[1];
      if (p->requires_grad) {
        auto g = p->grad_buffer();
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < w; ++j) g[i * w + j] += self.grad[i * n + col + j];
      }
      col += w;
    }
  });
}

Tensor slice_rows(const Tensor& x, std::size_t start, std::size_t count) {
  require_matrix("slice_rows", x);
  if (count == 0 || start + count > x.rows())
    throw DimensionError(fmt::format("slice_rows: [{}, {}) outside {}", start,
                                     start + count, shape_string(x.shape())));
  const std::size_t n = x.cols();
  auto xv = x.values();
  std::vector<double> out(xv.begin() + start * n, xv.begin() + (start + count) * n);
  return make_result({count, n}, std::move(out), {x}, [start, n](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < self.grad.size(); ++i) g[start * n + i] += self.grad[i];
  });
}

Tensor slice_cols(const Tensor& x, std::size_t start, std::size_t count) {
  require_matrix("slice_cols", x);
  if (count == 0 || start + count > x.cols())
    throw DimensionError(fmt::format("slice_cols: [{}, {}) outside {}", start,
                                     start + count, shape_string(x.shape())));
  const std::size_t m = x.rows(), n = x.cols();
  auto xv = x.values();
  std::vector<double> out(m * count);
  for (std::size_t i = 0; i < m; ++i)
    std::copy_n(xv.begin() + i * n + start, count, out.begin() + i * count);
  return make_result({m, count}, std::move(out), {x}, [m, n, start, count](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < count; ++j)
        g[i * n + start + j] += self.grad[i * count + j];
  });
}

Tensor reverse_rows(const Tensor& x) {
  require_matrix("reverse_rows", x);
  const std::size_t m = x.rows(), n = x.cols();
  auto xv = x.values();
  std::vector<double> out(m * n);
  for (std::size_t i = 0; i < m; ++i)
    std::copy_n(xv.begin() + (m - 1 - i) * n, n, out.begin() + i * n);
  return make_result({m, n}, std::move(out), {x}, [m, n](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) g[(m - 1 - i) * n + j] += self.grad[i * n + j];
  });
}

Tensor gather_rows(const Tensor& x, std::span<const std::size_t> indices) {
  require_matrix("gather_rows", x);
  if (indices.empty()) throw DimensionError("gather_rows: empty index list");
  const std::size_t m = x.rows(), n = x.cols();
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  std::vector<double> out(idx.size() * n);
  auto xv = x.values();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= m)
      throw DimensionError(fmt::format("gather_rows: row {} outside {}", idx[i],
                                       shape_string(x.shape())));
    std::copy_n(xv.begin() + idx[i] * n, n, out.begin() + i * n);
  }
  const std::size_t len = idx.size();
  return make_result({len, n}, std::move(out), {x}, [idx = std::move(idx), n](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) g[idx[i] * n + j] += self.grad[i * n + j];
  });
}

Tensor gather_cols(const Tensor& x, const std::vector<std::vector<std::size_t>>& indices) {
  require_matrix("gather_cols", x);
  const std::size_t m = x.rows(), n = x.cols();
  if (indices.size() != m)
    throw DimensionError(fmt::format("gather_cols: {} index lists for {}",
                                     indices.size(), shape_string(x.shape())));
  const std::size_t width = indices.empty() ? 0 : indices[0].size();
  if (width == 0) throw DimensionError("gather_cols: empty index lists");
  std::vector<double> out(m * width);
  auto xv = x.values();
  for (std::size_t i = 0; i < m; ++i) {
    if (indices[i].size() != width)
      throw DimensionError("gather_cols: ragged index lists");
    for (std::size_t j = 0; j < width; ++j) {
      if (indices[i][j] >= n)
        throw DimensionError(fmt::format("gather_cols: column {} outside {}",
                                         indices[i][j], shape_string(x.shape())));
      out[i * width + j] = xv[i * n + indices[i][j]];
    }
  }
  return make_result({m, width}, std::move(out), {x},
                     [indices, n, width](Node& self) {
                       auto g = self.parents[0]->grad_buffer();
                       for (std::size_t i = 0; i < indices.size(); ++i)
                         for (std::size_t j = 0; j < width; ++j)
                           g[i * n + indices[i][j]] += self.grad[i * width + j];
                     });
}

Tensor pick(const Tensor& x, std::span<const std::size_t> labels) {
  require_matrix("pick", x);
  const std::size_t m = x.rows(), n = x.cols();
  if (labels.size() != m)
    throw DimensionError(fmt::format("pick: {} labels for {}", labels.size(),
                                     shape_string(x.shape())));
  std::vector<std::size_t> idx(labels.begin(), labels.end());
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (idx[i] >= n)
      throw ContractError(fmt::format("pick: label {} out of range [0, {})", idx[i], n));
    out[i] = x.values()[i * n + idx[i]];
  }
  return make_result({m}, std::move(out), {x}, [idx = std::move(idx), n](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t i = 0; i < idx.size(); ++i) g[i * n + idx[i]] += self.grad[i];
  });
}

Tensor replace_rows(const Tensor& x, const std::vector<bool>& mask, const Tensor& fill) {
  require_matrix("replace_rows", x);
  const std::size_t m = x.rows(), n = x.cols();
  if (mask.size() != m || fill.size() != n)
    throw DimensionError(fmt::format("replace_rows: mask {} / fill {} vs {}", mask.size(),
                                     shape_string(fill.shape()), shape_string(x.shape())));
  std::vector<double> out(x.values().begin(), x.values().end());
  auto fv = fill.values();
  for (std::size_t i = 0; i < m; ++i)
    if (mask[i]) std::copy(fv.begin(), fv.end(), out.begin() + i * n);
  return make_result({m, n}, std::move(out), {x, fill}, [mask, m, n](Node& self) {
    Node& x = *self.parents[0];
    Node& f = *self.parents[1];
    if (x.requires_grad) {
      auto g = x.grad_buffer();
      for (std::size_t i = 0; i < m; ++i)
        if (!mask[i])
          for (std::size_t j = 0; j < n; ++j) g[i * n + j] += self.grad[i * n + j];
    }
    if (f.requires_grad) {
      auto g = f.grad_buffer();
      for (std::size_t i = 0; i < m; ++i)
        if (mask[i])
          for (std::size_t j = 0; j < n; ++j) g[j] += self.grad[i * n + j];
    }
  });
}

Tensor straight_through(const Tensor& value_source, const Tensor& grad_target) {
  require_same_shape("straight_through", value_source, grad_target);
  std::vector<double> out(value_source.values().begin(), value_source.values().end());
  return make_result(value_source.shape(), std::move(out), {value_source, grad_target},
                     [](Node& self) {
                       for (auto& p : self.parents) {
                         if (!p->requires_grad) continue;
                         auto g = p->grad_buffer();
                         for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
                       }
                     });
}

Tensor softmax(const Tensor& x) {
  require_finite("softmax", x.values());
  const std::size_t n = last_dim(x);
  const std::size_t rows = x.size() / n;
  auto xv = x.values();
  std::vector<double> out(x.size());
  for (std::size_t r = 0; r < rows; ++r) {
    const double* in = xv.data() + r * n;
    double* o = out.data() + r * n;
    const double mx = *std::max_element(in, in + n);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += (o[j] = std::exp(in[j] - mx));
    for (std::size_t j = 0; j < n; ++j) o[j] /= s;
  }
  return make_result(x.shape(), std::move(out), {x}, [n, rows](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t r = 0; r < rows; ++r) {
      const double* y = self.value.data() + r * n;
      const double* gy = self.grad.data() + r * n;
      double dot = 0.0;
      for (std::size_t j = 0; j < n; ++j) dot += gy[j] * y[j];
      for (std::size_t j = 0; j < n; ++j) g[r * n + j] += y[j] * (gy[j] - dot);
    }
  });
}

Tensor log_softmax(const Tensor& x) {
  require_finite("log_softmax", x.values());
  const std::size_t n = last_dim(x);
  const std::size_t rows = x.size() / n;
  auto xv = x.values();
  std::vector<double> out(x.size());
  for (std::size_t r = 0; r < rows; ++r) {
    const double* in = xv.data() + r * n;
    double* o = out.data() + r * n;
    const double mx = *std::max_element(in, in + n);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::exp(in[j] - mx);
    const double lse = mx + std::log(s);
    for (std::size_t j = 0; j < n; ++j) o[j] = in[j] - lse;
  }
  return make_result(x.shape(), std::move(out), {x}, [n, rows](Node& self) {
    auto g = self.parents[0]->grad_buffer();
    for (std::size_t r = 0; r < rows; ++r) {
      const double* y = self.value.data() + r * n;
      const double* gy = self.grad.data() + r * n;
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) total += gy[j];
      for (std::size_t j = 0; j < n; ++j) g[r * n + j] += gy[j] - std::exp(y[j]) * total;
    }
  });
}

Tensor normalize_last(const Tensor& x, double eps) {
  const std::size_t n = last_dim(x);
  const std::size_t rows = x.size() / n;
  auto xv = x.values();
  std::vector<double> out(x.size());
  std::vector<double> inv_std(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* in = xv.data() + r * n;
    double mu = 0.0;
    for (std::size_t j = 0; j < n; ++j) mu += in[j];
    mu /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t j = 0; j < n; ++j) var += (in[j] - mu) * (in[j] - mu);
    var /= static_cast<double>(n);
    inv_std[r] = 1.0 / std::sqrt(var + eps);
    for (std::size_t j = 0; j < n; ++j) out[r * n + j] = (in[j] - mu) * inv_std[r];
  }
  return make_result(x.shape(), std::move(out), {x},
                     [n, rows, inv_std = std::move(inv_std)](Node& self) {
                       auto g = self.parents[0]->grad_buffer();
                       const double dn = static_cast<double>(n);
                       for (std::size_t r = 0; r < rows; ++r) {
                         const double* y = self.value.data() + r * n;
                         const double* gy = self.grad.data() + r * n;
                         double sum_g = 0.0, sum_gy = 0.0;
                         for (std::size_t j = 0; j < n; ++j) {
                           sum_g += gy[j];
                           sum_gy += gy[j] * y[j];
                         }
                         for (std::size_t j = 0; j < n; ++j)
                           g[r * n + j] += inv_std[r] *
                                           (gy[j] - sum_g / dn - y[j] * sum_gy / dn);
                       }
                     });
}

Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta, double eps) {
  return add_bias(mul_bias(normalize_last(x, eps), gamma), beta);
}

Tensor cosine_similarity(const Tensor& a, const Tensor& b) {
  require_matrix("cosine_similarity", a);
  require_matrix("cosine_similarity", b);
  if (a.cols() != b.cols())
    throw DimensionError(fmt::format("cosine_similarity: {} vs {}",
                                     shape_string(a.shape()), shape_string(b.shape())));
  const std::size_t m = a.rows(), p = b.rows(), d = a.cols();
  auto norms = [d](std::span<const double> v, std::size_t rows) {
    std::vector<double> out(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += v[i * d + j] * v[i * d + j];
      out[i] = std::sqrt(s);
      if (out[i] == 0.0)
        throw ContractError("cosine_similarity: zero-norm vector, cosine undefined");
    }
    return out;
  };
  std::vector<double> na = norms(a.values(), m), nb = norms(b.values(), p);
  std::vector<double> out(m * p);
  auto av = a.values(), bv = b.values();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < p; ++k) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) dot += av[i * d + j] * bv[k * d + j];
      out[i * p + k] = dot / (na[i] * nb[k]);
    }
  return make_result(
      {m, p}, std::move(out), {a, b},
      [m, p, d, na = std::move(na), nb = std::move(nb)](Node& self) {
        Node& a = *self.parents[0];
        Node& b = *self.parents[1];
        // d cos / d a_i = b_k / (|a||b|) - cos * a_i / |a|^2
        if (a.requires_grad) {
          auto g = a.grad_buffer();
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < p; ++k) {
              const double gs = self.grad[i * p + k];
              if (gs == 0.0) continue;
              const double s = self.value[i * p + k];
              const double c1 = gs / (na[i] * nb[k]);
              const double c2 = gs * s / (na[i] * na[i]);
              for (std::size_t j = 0; j < d; ++j)
                g[i * d + j] += c1 * b.value[k * d + j] - c2 * a.value[i * d + j];
            }
        }
        if (b.requires_grad) {
          auto g = b.grad_buffer();
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < p; ++k) {
              const double gs = self.grad[i * p + k];
              if (gs == 0.0) continue;
              const double s = self.value[i * p + k];
              const double c1 = gs / (na[i] * nb[k]);
              const double c2 = gs * s / (nb[k] * nb[k]);
              for (std::size_t j = 0; j < d; ++j)
                g[k * d + j] += c1 * a.value[i * d + j] - c2 * b.value[k * d + j];
            }
        }
      });
}

}  // namespace swce::ad
