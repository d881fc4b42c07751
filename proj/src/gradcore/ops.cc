// gradcore/ops.cc

// Copyright 2026  CJFE Authors

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

#include "gradcore/ops.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "util/common.h"
#include "util/logging.h"

namespace cjfe {
namespace {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using ConstMapMat = Eigen::Map<const RowMat>;

// Geometry shared by Conv2d, Conv2dTranspose and their backward rules. The
// "input" side is always the large (pre-convolution) side.
struct ConvGeom {
  int64_t batch, in_t, in_f, cin, cout, kt, kf, st, sf;
  int64_t out_t, out_f, pad_t0, pad_f0;
  int64_t PatchSize() const { return kt * kf * cin; }
  int64_t OutPositions() const { return batch * out_t * out_f; }
};

ConvGeom MakeConvGeom(const Shape &in, const Shape &kernel, int64_t stride_t,
                      int64_t stride_f, PadMode pad, const char *op) {
  std::string who(op);
  if (in.NumAxes() != 4) {
    throw DimensionError(who + ": input must be rank 4 [B, T, F, Cin], got " +
                         in.ToString());
  }
  if (kernel.NumAxes() != 4) {
    throw DimensionError(who + ": kernel must be rank 4 [kt, kf, Cin, Cout], got " +
                         kernel.ToString());
  }
  if (stride_t < 1 || stride_f < 1) {
    throw ContractError(who + ": strides must be >= 1");
  }
  ConvGeom g;
  g.batch = in.Dim(0);
  g.in_t = in.Dim(1);
  g.in_f = in.Dim(2);
  g.cin = in.Dim(3);
  g.kt = kernel.Dim(0);
  g.kf = kernel.Dim(1);
  g.cout = kernel.Dim(3);
  g.st = stride_t;
  g.sf = stride_f;
  if (kernel.Dim(2) != g.cin) {
    throw DimensionError(who + ": kernel input channels (axis 2: " +
                         std::to_string(kernel.Dim(2)) +
                         ") != input channels (axis 3: " +
                         std::to_string(g.cin) + ")");
  }
  if (pad == PadMode::kValid) {
    if (g.kt > g.in_t) {
      throw DimensionError(who + ": kernel time extent " + std::to_string(g.kt) +
                           " exceeds input time extent " +
                           std::to_string(g.in_t) + " (axis 1) with valid padding");
    }
    if (g.kf > g.in_f) {
      throw DimensionError(who + ": kernel frequency extent " +
                           std::to_string(g.kf) + " exceeds input frequency extent " +
                           std::to_string(g.in_f) + " (axis 2) with valid padding");
    }
    g.out_t = (g.in_t - g.kt) / g.st + 1;
    g.out_f = (g.in_f - g.kf) / g.sf + 1;
    g.pad_t0 = 0;
    g.pad_f0 = 0;
  } else {
    g.out_t = (g.in_t + g.st - 1) / g.st;
    g.out_f = (g.in_f + g.sf - 1) / g.sf;
    int64_t total_t = std::max<int64_t>((g.out_t - 1) * g.st + g.kt - g.in_t, 0);
    int64_t total_f = std::max<int64_t>((g.out_f - 1) * g.sf + g.kf - g.in_f, 0);
    // Excess padding goes after, as in the usual "same" convention.
    g.pad_t0 = total_t / 2;
    g.pad_f0 = total_f / 2;
  }
  return g;
}

// cols: [B * out_t * out_f, kt * kf * cin]; out-of-range taps are zero.
void Im2Col(const double *in, const ConvGeom &g, double *cols) {
  const int64_t ps = g.PatchSize();
  double *dst = cols;
  for (int64_t b = 0; b < g.batch; ++b) {
    const double *in_b = in + b * g.in_t * g.in_f * g.cin;
    for (int64_t ot = 0; ot < g.out_t; ++ot) {
      for (int64_t of = 0; of < g.out_f; ++of) {
        for (int64_t dt = 0; dt < g.kt; ++dt) {
          int64_t t = ot * g.st + dt - g.pad_t0;
          for (int64_t df = 0; df < g.kf; ++df) {
            int64_t f = of * g.sf + df - g.pad_f0;
            double *cell = dst + (dt * g.kf + df) * g.cin;
            if (t >= 0 && t < g.in_t && f >= 0 && f < g.in_f) {
              std::memcpy(cell, in_b + (t * g.in_f + f) * g.cin,
                          g.cin * sizeof(double));
            } else {
              std::memset(cell, 0, g.cin * sizeof(double));
            }
          }
        }
        dst += ps;
      }
    }
  }
}

// Adjoint of Im2Col: scatter-add patch rows back onto the input plane.
void Col2ImAdd(const double *cols, const ConvGeom &g, double *in_grad) {
  const int64_t ps = g.PatchSize();
  const double *src = cols;
  for (int64_t b = 0; b < g.batch; ++b) {
    double *out_b = in_grad + b * g.in_t * g.in_f * g.cin;
    for (int64_t ot = 0; ot < g.out_t; ++ot) {
      for (int64_t of = 0; of < g.out_f; ++of) {
        for (int64_t dt = 0; dt < g.kt; ++dt) {
          int64_t t = ot * g.st + dt - g.pad_t0;
          if (t < 0 || t >= g.in_t) continue;
          for (int64_t df = 0; df < g.kf; ++df) {
            int64_t f = of * g.sf + df - g.pad_f0;
            if (f < 0 || f >= g.in_f) continue;
            const double *cell = src + (dt * g.kf + df) * g.cin;
            double *dst = out_b + (t * g.in_f + f) * g.cin;
            for (int64_t c = 0; c < g.cin; ++c) dst[c] += cell[c];
          }
        }
        src += ps;
      }
    }
  }
}

}  // namespace

Value Conv2d(const Value &input, const Value &kernel, int64_t stride_t,
             int64_t stride_f, PadMode pad) {
  ConvGeom g = MakeConvGeom(input.shape(), kernel.shape(), stride_t, stride_f,
                            pad, "conv2d");
  const int64_t rows = g.OutPositions();
  const int64_t ps = g.PatchSize();
  auto cols = std::make_shared<std::vector<double>>(rows * ps);
  Im2Col(input.Data().data(), g, cols->data());

  std::vector<double> out(rows * g.cout);
  {
    ConstMapMat cols_m(cols->data(), rows, ps);
    ConstMapMat w(kernel.Data().data(), ps, g.cout);
    MapMat out_m(out.data(), rows, g.cout);
    out_m.noalias() = cols_m * w;
  }

  Value in_ref = input, k_ref = kernel;
  return Value::Result(
      "conv2d", Shape{g.batch, g.out_t, g.out_f, g.cout}, std::move(out),
      {input, kernel}, [g, cols, in_ref, k_ref](internal::Node &self) mutable {
        const int64_t rows = g.OutPositions();
        const int64_t ps = g.PatchSize();
        ConstMapMat dy(self.grad.data(), rows, g.cout);
        ConstMapMat cols_m(cols->data(), rows, ps);
        MapMat dw(k_ref.MutableGrad().data(), ps, g.cout);
        dw.noalias() += cols_m.transpose() * dy;

        std::vector<double> dcols(rows * ps);
        ConstMapMat w(k_ref.Data().data(), ps, g.cout);
        MapMat dcols_m(dcols.data(), rows, ps);
        dcols_m.noalias() = dy * w.transpose();
        Col2ImAdd(dcols.data(), g, in_ref.MutableGrad().data());
      });
}

Value Conv2dTranspose(const Value &input, const Value &kernel,
                      int64_t stride_t, int64_t stride_f, PadMode pad,
                      int64_t out_t, int64_t out_f) {
  const Shape &in_shape = input.shape();
  const Shape &k_shape = kernel.shape();
  if (in_shape.NumAxes() != 4) {
    throw DimensionError("conv2d_transpose: input must be rank 4, got " +
                         in_shape.ToString());
  }
  if (k_shape.NumAxes() != 4 || k_shape.Dim(3) != in_shape.Dim(3)) {
    throw DimensionError(
        "conv2d_transpose: kernel output channels (axis 3: " +
        std::to_string(k_shape.NumAxes() == 4 ? k_shape.Dim(3) : -1) +
        ") != input channels (axis 3: " + std::to_string(in_shape.Dim(3)) + ")");
  }
  const int64_t batch = in_shape.Dim(0);
  const int64_t cin = k_shape.Dim(2);
  // Geometry of the forward conv this op is the adjoint of.
  ConvGeom g = MakeConvGeom(Shape{batch, out_t, out_f, cin}, k_shape, stride_t,
                            stride_f, pad, "conv2d_transpose");
  if (g.out_t != in_shape.Dim(1) || g.out_f != in_shape.Dim(2)) {
    throw DimensionError(
        "conv2d_transpose: input extents " + in_shape.ToString() +
        " inconsistent with requested output [" + std::to_string(out_t) + ", " +
        std::to_string(out_f) + "] (forward map would give [" +
        std::to_string(g.out_t) + ", " + std::to_string(g.out_f) + "])");
  }

  const int64_t rows = g.OutPositions();  // = batch * in_t * in_f of `input`
  const int64_t ps = g.PatchSize();
  std::vector<double> out(batch * out_t * out_f * cin, 0.0);
  {
    std::vector<double> cols(rows * ps);
    ConstMapMat x(input.Data().data(), rows, g.cout);
    ConstMapMat w(kernel.Data().data(), ps, g.cout);
    MapMat cols_m(cols.data(), rows, ps);
    cols_m.noalias() = x * w.transpose();
    Col2ImAdd(cols.data(), g, out.data());
  }

  Value in_ref = input, k_ref = kernel;
  return Value::Result(
      "conv2d_transpose", Shape{batch, out_t, out_f, cin}, std::move(out),
      {input, kernel}, [g, in_ref, k_ref](internal::Node &self) mutable {
        const int64_t rows = g.OutPositions();
        const int64_t ps = g.PatchSize();
        std::vector<double> dy_cols(rows * ps);
        Im2Col(self.grad.data(), g, dy_cols.data());
        ConstMapMat dy_cols_m(dy_cols.data(), rows, ps);

        ConstMapMat w(k_ref.Data().data(), ps, g.cout);
        MapMat dx(in_ref.MutableGrad().data(), rows, g.cout);
        dx.noalias() += dy_cols_m * w;

        ConstMapMat x(in_ref.Data().data(), rows, g.cout);
        MapMat dw(k_ref.MutableGrad().data(), ps, g.cout);
        dw.noalias() += dy_cols_m.transpose() * x;
      });
}

Value ChannelBias(const Value &input, const Value &bias) {
  const Shape &s = input.shape();
  if (s.NumAxes() < 2) {
    throw DimensionError("channel_bias: input must have a channel axis, got " +
                         s.ToString());
  }
  const int64_t c = s.Dim(s.NumAxes() - 1);
  if (bias.shape().NumAxes() != 1 || bias.shape().Dim(0) != c) {
    throw DimensionError("channel_bias: bias shape " + bias.shape().ToString() +
                         " != channels (last axis: " + std::to_string(c) + ")");
  }
  std::vector<double> out(input.Data().begin(), input.Data().end());
  const double *b = bias.Data().data();
  const int64_t n = static_cast<int64_t>(out.size());
  for (int64_t i = 0; i < n; ++i) out[i] += b[i % c];

  Value in_ref = input, b_ref = bias;
  return Value::Result(
      "channel_bias", s, std::move(out), {input, bias},
      [c, in_ref, b_ref](internal::Node &self) mutable {
        const int64_t n = static_cast<int64_t>(self.grad.size());
        double *din = in_ref.MutableGrad().data();
        double *db = b_ref.MutableGrad().data();
        for (int64_t i = 0; i < n; ++i) {
          din[i] += self.grad[i];
          db[i % c] += self.grad[i];
        }
      });
}

Value Dense(const Value &input, const Value &weight, const Value &bias) {
  const Shape &xs = input.shape();
  const Shape &ws = weight.shape();
  if (xs.NumAxes() != 2 || ws.NumAxes() != 2) {
    throw DimensionError("dense: expected input [B, D] and weight [D, H], got " +
                         xs.ToString() + " and " + ws.ToString());
  }
  if (xs.Dim(1) != ws.Dim(0)) {
    throw DimensionError("dense: inner dimensions disagree, input axis 1 is " +
                         std::to_string(xs.Dim(1)) + " but weight axis 0 is " +
                         std::to_string(ws.Dim(0)));
  }
  const int64_t b = xs.Dim(0), d = xs.Dim(1), h = ws.Dim(1);
  if (bias.shape().NumAxes() != 1 || bias.shape().Dim(0) != h) {
    throw DimensionError("dense: bias shape " + bias.shape().ToString() +
                         " != [" + std::to_string(h) + "]");
  }
  std::vector<double> out(b * h);
  {
    ConstMapMat x(input.Data().data(), b, d);
    ConstMapMat w(weight.Data().data(), d, h);
    MapMat out_m(out.data(), b, h);
    out_m.noalias() = x * w;
    out_m.rowwise() +=
        Eigen::Map<const Eigen::RowVectorXd>(bias.Data().data(), h);
  }

  Value x_ref = input, w_ref = weight, b_ref = bias;
  return Value::Result(
      "dense", Shape{b, h}, std::move(out), {input, weight, bias},
      [b, d, h, x_ref, w_ref, b_ref](internal::Node &self) mutable {
        ConstMapMat dy(self.grad.data(), b, h);
        ConstMapMat x(x_ref.Data().data(), b, d);
        ConstMapMat w(w_ref.Data().data(), d, h);
        MapMat dx(x_ref.MutableGrad().data(), b, d);
        MapMat dw(w_ref.MutableGrad().data(), d, h);
        dx.noalias() += dy * w.transpose();
        dw.noalias() += x.transpose() * dy;
        Eigen::Map<Eigen::RowVectorXd> db(b_ref.MutableGrad().data(), h);
        db += dy.colwise().sum();
      });
}

Value LeakyRelu(const Value &input, double slope) {
  if (!(slope > 0.0 && slope < 1.0)) {
    throw ContractError("leaky_relu: slope must be in (0, 1), got " +
                        std::to_string(slope));
  }
  std::span<const double> x = input.Data();
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] >= 0.0 ? x[i] : slope * x[i];

  Value in_ref = input;
  return Value::Result("leaky_relu", input.shape(), std::move(out), {input},
                       [slope, in_ref](internal::Node &self) mutable {
                         const double *x = in_ref.Data().data();
                         double *dx = in_ref.MutableGrad().data();
                         for (size_t i = 0; i < self.grad.size(); ++i) {
                           dx[i] += (x[i] >= 0.0 ? 1.0 : slope) * self.grad[i];
                         }
                       });
}

Value BatchNorm(const Value &input, const Value &gamma, const Value &beta,
                const BnState &state, BnMode mode, double momentum,
                double epsilon) {
  const Shape &s = input.shape();
  const int64_t c = s.Dim(s.NumAxes() - 1);
  if (gamma.shape().NumAxes() != 1 || gamma.shape().Dim(0) != c ||
      beta.shape().NumAxes() != 1 || beta.shape().Dim(0) != c) {
    throw DimensionError("batch_norm: gamma/beta must be length " +
                         std::to_string(c) + " (channel axis), got " +
                         gamma.shape().ToString() + " and " +
                         beta.shape().ToString());
  }
  if (!(epsilon > 0.0)) throw ContractError("batch_norm: epsilon must be > 0");
  if (static_cast<int64_t>(state.running_mean->size()) != c ||
      static_cast<int64_t>(state.running_var->size()) != c) {
    throw DimensionError("batch_norm: running stats length != channels");
  }
  const int64_t total = s.NumElements();
  const int64_t n = total / c;  // positions reduced per channel
  const double *x = input.Data().data();

  auto mean = std::make_shared<std::vector<double>>(c, 0.0);
  auto inv_std = std::make_shared<std::vector<double>>(c, 0.0);
  if (mode == BnMode::kTrain) {
    std::vector<double> var(c, 0.0);
    for (int64_t i = 0; i < total; ++i) (*mean)[i % c] += x[i];
    for (int64_t k = 0; k < c; ++k) (*mean)[k] /= n;
    for (int64_t i = 0; i < total; ++i) {
      double d = x[i] - (*mean)[i % c];
      var[i % c] += d * d;
    }
    for (int64_t k = 0; k < c; ++k) var[k] /= n;
    for (int64_t k = 0; k < c; ++k) (*inv_std)[k] = 1.0 / std::sqrt(var[k] + epsilon);
    for (int64_t k = 0; k < c; ++k) {
      (*state.running_mean)[k] =
          momentum * (*state.running_mean)[k] + (1.0 - momentum) * (*mean)[k];
      (*state.running_var)[k] =
          momentum * (*state.running_var)[k] + (1.0 - momentum) * var[k];
    }
    (*state.batches_tracked)[0] += 1.0;
  } else {
    if ((*state.batches_tracked)[0] == 0.0) {
      LogWarn("batch_norm: infer mode before any train-mode update; "
              "using initialized statistics (mean 0, var 1)");
    }
    *mean = *state.running_mean;
    for (int64_t k = 0; k < c; ++k) {
      (*inv_std)[k] = 1.0 / std::sqrt((*state.running_var)[k] + epsilon);
    }
  }

  auto xhat = std::make_shared<std::vector<double>>(total);
  const double *g = gamma.Data().data();
  const double *bt = beta.Data().data();
  std::vector<double> out(total);
  for (int64_t i = 0; i < total; ++i) {
    int64_t k = i % c;
    (*xhat)[i] = (x[i] - (*mean)[k]) * (*inv_std)[k];
    out[i] = g[k] * (*xhat)[i] + bt[k];
  }

  Value in_ref = input, g_ref = gamma, b_ref = beta;
  return Value::Result(
      "batch_norm", s, std::move(out), {input, gamma, beta},
      [c, n, mode, xhat, inv_std, in_ref, g_ref, b_ref](internal::Node &self) mutable {
        const int64_t total = static_cast<int64_t>(self.grad.size());
        const double *dy = self.grad.data();
        const double *xh = xhat->data();
        const double *g = g_ref.Data().data();
        double *dgamma = g_ref.MutableGrad().data();
        double *dbeta = b_ref.MutableGrad().data();
        double *dx = in_ref.MutableGrad().data();

        std::vector<double> sum_dy(c, 0.0), sum_dy_xhat(c, 0.0);
        for (int64_t i = 0; i < total; ++i) {
          int64_t k = i % c;
          sum_dy[k] += dy[i];
          sum_dy_xhat[k] += dy[i] * xh[i];
        }
        for (int64_t k = 0; k < c; ++k) {
          dgamma[k] += sum_dy_xhat[k];
          dbeta[k] += sum_dy[k];
        }
        if (mode == BnMode::kTrain) {
          for (int64_t i = 0; i < total; ++i) {
            int64_t k = i % c;
            dx[i] += g[k] * (*inv_std)[k] *
                     (dy[i] - sum_dy[k] / n - xh[i] * sum_dy_xhat[k] / n);
          }
        } else {
          for (int64_t i = 0; i < total; ++i) {
            int64_t k = i % c;
            dx[i] += g[k] * (*inv_std)[k] * dy[i];
          }
        }
      });
}

Value Mse(const Value &pred, std::span<const double> target) {
  const int64_t n = pred.NumElements();
  if (static_cast<int64_t>(target.size()) != n) {
    throw DimensionError("mse: pred has " + std::to_string(n) +
                         " elements (shape " + pred.shape().ToString() +
                         ") but target has " + std::to_string(target.size()));
  }
  auto t = std::make_shared<std::vector<double>>(target.begin(), target.end());
  const double *p = pred.Data().data();
  double acc = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    double d = p[i] - (*t)[i];
    acc += d * d;
  }
  Value p_ref = pred;
  return Value::Result(
      "mse", Shape{1}, {acc / n}, {pred},
      [n, t, p_ref](internal::Node &self) mutable {
        const double g = self.grad[0];
        const double *p = p_ref.Data().data();
        double *dp = p_ref.MutableGrad().data();
        for (int64_t i = 0; i < n; ++i) {
          dp[i] += g * 2.0 * (p[i] - (*t)[i]) / n;
        }
      });
}

Value GaussianKl(const Value &mu, const Value &logvar) {
  if (mu.shape() != logvar.shape() || mu.shape().NumAxes() != 2) {
    throw DimensionError("gaussian_kl: mu and logvar must share shape [B, K], got " +
                         mu.shape().ToString() + " and " +
                         logvar.shape().ToString());
  }
  const int64_t b = mu.shape().Dim(0);
  const int64_t total = mu.NumElements();
  const double *m = mu.Data().data();
  const double *lv = logvar.Data().data();
  double acc = 0.0;
  for (int64_t i = 0; i < total; ++i) {
    acc += -0.5 * (1.0 + lv[i] - m[i] * m[i] - std::exp(lv[i]));
  }
  // Each per-dim term is analytically >= 0; the max guards rounding at the
  // q == prior point so the non-negativity contract holds exactly.
  double kl = std::max(0.0, acc / b);

  Value m_ref = mu, lv_ref = logvar;
  return Value::Result(
      "gaussian_kl", Shape{1}, {kl}, {mu, logvar},
      [b, total, m_ref, lv_ref](internal::Node &self) mutable {
        const double g = self.grad[0];
        const double *m = m_ref.Data().data();
        const double *lv = lv_ref.Data().data();
        double *dm = m_ref.MutableGrad().data();
        double *dlv = lv_ref.MutableGrad().data();
        for (int64_t i = 0; i < total; ++i) {
          dm[i] += g * m[i] / b;
          dlv[i] += g * 0.5 * (std::exp(lv[i]) - 1.0) / b;
        }
      });
}

Value Reparameterize(const Value &mu, const Value &logvar,
                     std::span<const double> noise) {
  if (mu.shape() != logvar.shape()) {
    throw DimensionError("reparameterize: mu shape " + mu.shape().ToString() +
                         " != logvar shape " + logvar.shape().ToString());
  }
  const int64_t n = mu.NumElements();
  if (static_cast<int64_t>(noise.size()) != n) {
    throw DimensionError("reparameterize: noise length " +
                         std::to_string(noise.size()) + " != " +
                         std::to_string(n));
  }
  auto eps = std::make_shared<std::vector<double>>(noise.begin(), noise.end());
  const double *m = mu.Data().data();
  const double *lv = logvar.Data().data();
  std::vector<double> out(n);
  for (int64_t i = 0; i < n; ++i) {
    out[i] = m[i] + std::exp(0.5 * lv[i]) * (*eps)[i];
  }
  Value m_ref = mu, lv_ref = logvar;
  return Value::Result(
      "reparameterize", mu.shape(), std::move(out), {mu, logvar},
      [n, eps, m_ref, lv_ref](internal::Node &self) mutable {
        const double *lv = lv_ref.Data().data();
        double *dm = m_ref.MutableGrad().data();
        double *dlv = lv_ref.MutableGrad().data();
        for (int64_t i = 0; i < n; ++i) {
          dm[i] += self.grad[i];
          dlv[i] += self.grad[i] * 0.5 * std::exp(0.5 * lv[i]) * (*eps)[i];
        }
      });
}

Value SoftmaxCrossEntropy(const Value &logits, std::span<const int64_t> labels) {
  const Shape &s = logits.shape();
  if (s.NumAxes() != 2) {
    throw DimensionError("softmax_cross_entropy: logits must be [B, C], got " +
                         s.ToString());
  }
  const int64_t b = s.Dim(0), c = s.Dim(1);
  if (static_cast<int64_t>(labels.size()) != b) {
    throw DimensionError("softmax_cross_entropy: labels length " +
                         std::to_string(labels.size()) + " != batch " +
                         std::to_string(b));
  }
  auto lab = std::make_shared<std::vector<int64_t>>(labels.begin(), labels.end());
  for (int64_t i = 0; i < b; ++i) {
    if ((*lab)[i] < 0 || (*lab)[i] >= c) {
      throw ContractError("softmax_cross_entropy: label " +
                          std::to_string((*lab)[i]) + " out of range [0, " +
                          std::to_string(c) + ")");
    }
  }
  const double *x = logits.Data().data();
  auto softmax = std::make_shared<std::vector<double>>(b * c);
  double acc = 0.0;
  for (int64_t i = 0; i < b; ++i) {
    const double *row = x + i * c;
    double m = row[0];
    for (int64_t j = 1; j < c; ++j) m = std::max(m, row[j]);
    double z = 0.0;
    for (int64_t j = 0; j < c; ++j) z += std::exp(row[j] - m);
    double lse = m + std::log(z);
    for (int64_t j = 0; j < c; ++j) (*softmax)[i * c + j] = std::exp(row[j] - lse);
    acc += lse - row[(*lab)[i]];
  }
  Value x_ref = logits;
  return Value::Result(
      "softmax_cross_entropy", Shape{1}, {acc / b}, {logits},
      [b, c, lab, softmax, x_ref](internal::Node &self) mutable {
        const double g = self.grad[0];
        double *dx = x_ref.MutableGrad().data();
        for (int64_t i = 0; i < b; ++i) {
          for (int64_t j = 0; j < c; ++j) {
            double ind = (j == (*lab)[i]) ? 1.0 : 0.0;
            dx[i * c + j] += g * ((*softmax)[i * c + j] - ind) / b;
          }
        }
      });
}

Value Add(const Value &a, const Value &b) {
  if (a.shape() != b.shape()) {
    throw DimensionError("add: shapes disagree, " + a.shape().ToString() +
                         " vs " + b.shape().ToString());
  }
  std::span<const double> av = a.Data(), bv = b.Data();
  std::vector<double> out(av.size());
  for (size_t i = 0; i < av.size(); ++i) out[i] = av[i] + bv[i];
  Value a_ref = a, b_ref = b;
  return Value::Result("add", a.shape(), std::move(out), {a, b},
                       [a_ref, b_ref](internal::Node &self) mutable {
                         double *da = a_ref.MutableGrad().data();
                         double *db = b_ref.MutableGrad().data();
                         for (size_t i = 0; i < self.grad.size(); ++i) {
                           da[i] += self.grad[i];
                           db[i] += self.grad[i];
                         }
                       });
}

Value Scale(const Value &a, double c) {
  std::span<const double> av = a.Data();
  std::vector<double> out(av.size());
  for (size_t i = 0; i < av.size(); ++i) out[i] = c * av[i];
  Value a_ref = a;
  return Value::Result("scale", a.shape(), std::move(out), {a},
                       [c, a_ref](internal::Node &self) mutable {
                         double *da = a_ref.MutableGrad().data();
                         for (size_t i = 0; i < self.grad.size(); ++i) {
                           da[i] += c * self.grad[i];
                         }
                       });
}

Value Reshape(const Value &a, const Shape &shape) {
  if (shape.NumElements() != a.NumElements()) {
    throw DimensionError("reshape: cannot view " + a.shape().ToString() +
                         " as " + shape.ToString());
  }
  std::vector<double> out(a.Data().begin(), a.Data().end());
  Value a_ref = a;
  return Value::Result("reshape", shape, std::move(out), {a},
                       [a_ref](internal::Node &self) mutable {
                         double *da = a_ref.MutableGrad().data();
                         for (size_t i = 0; i < self.grad.size(); ++i) {
                           da[i] += self.grad[i];
                         }
                       });
}

Value Sum(const Value &a) {
  double acc = 0.0;
  for (double v : a.Data()) acc += v;
  Value a_ref = a;
  return Value::Result("sum", Shape{1}, {acc}, {a},
                       [a_ref](internal::Node &self) mutable {
                         double *da = a_ref.MutableGrad().data();
                         const double g = self.grad[0];
                         for (size_t i = 0; i < a_ref.Data().size(); ++i) {
                           da[i] += g;
                         }
                       });
}

void LogSoftmaxRows(int64_t rows, int64_t cols, const double *in, double *out) {
  for (int64_t i = 0; i < rows; ++i) {
    const double *row = in + i * cols;
    double m = row[0];
    for (int64_t j = 1; j < cols; ++j) m = std::max(m, row[j]);
    double z = 0.0;
    for (int64_t j = 0; j < cols; ++j) z += std::exp(row[j] - m);
    double lse = m + std::log(z);
    for (int64_t j = 0; j < cols; ++j) out[i * cols + j] = row[j] - lse;
  }
}

}  // namespace cjfe
