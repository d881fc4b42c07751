// gradcore/ops.h

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

#ifndef CJFE_GRADCORE_OPS_H_
#define CJFE_GRADCORE_OPS_H_

#include <memory>
#include <span>
#include <vector>

#include "gradcore/value.h"

namespace cjfe {

enum class PadMode { kValid, kSame };
enum class BnMode { kTrain, kInfer };

// 2-D convolution. input [B, T, F, Cin], kernel [kt, kf, Cin, Cout] ->
// [B, T', F', Cout]. Valid: T' = floor((T - kt) / stride_t) + 1.
// Same: T' = ceil(T / stride_t), zero-padded (extra padding goes after).
Value Conv2d(const Value &input, const Value &kernel, int64_t stride_t,
             int64_t stride_f, PadMode pad);

// Adjoint of Conv2d with respect to its input: maps [B, T', F', Cout] back to
// [B, out_t, out_f, Cin], where Conv2d from [out_t, out_f] with the same
// kernel/strides/pad would produce [T', F']. out_t resolves the ceil
// ambiguity of strided same-padding.
Value Conv2dTranspose(const Value &input, const Value &kernel,
                      int64_t stride_t, int64_t stride_f, PadMode pad,
                      int64_t out_t, int64_t out_f);

// input [B, T, F, C] + bias [C], broadcast over (B, T, F).
Value ChannelBias(const Value &input, const Value &bias);

// input [B, D] x weight [D, H] + bias [H].
Value Dense(const Value &input, const Value &weight, const Value &bias);

// x if x >= 0 else slope * x; slope in (0, 1).
Value LeakyRelu(const Value &input, double slope);

// Batch-norm running statistics; one entry per channel, plus a one-element
// update counter. Lives outside the graph (see StateSet).
struct BnState {
  std::shared_ptr<std::vector<double>> running_mean;
  std::shared_ptr<std::vector<double>> running_var;
  std::shared_ptr<std::vector<double>> batches_tracked;  // single element
};

// Per-channel batch normalization over all non-channel axes (channels last).
// Train mode normalizes with batch statistics and folds them into the running
// stats by EMA; infer mode normalizes with the running stats. Infer before
// any train update falls back to the (0, 1) init and warns in the run log.
Value BatchNorm(const Value &input, const Value &gamma, const Value &beta,
                const BnState &state, BnMode mode, double momentum,
                double epsilon);

// Mean over all elements of squared difference against a constant target.
Value Mse(const Value &pred, std::span<const double> target);

// Mean over batch of -1/2 * sum_k (1 + logvar - mu^2 - exp(logvar)).
// mu, logvar: [B, K]. Non-negative; zero iff mu = 0 and logvar = 0.
Value GaussianKl(const Value &mu, const Value &logvar);

// z = mu + exp(logvar / 2) * noise, elementwise. noise is a constant supplied
// by the caller; gradients flow to mu and logvar only.
Value Reparameterize(const Value &mu, const Value &logvar,
                     std::span<const double> noise);

// Mean over batch of -log softmax(logits)[label]. logits [B, C].
Value SoftmaxCrossEntropy(const Value &logits, std::span<const int64_t> labels);

Value Add(const Value &a, const Value &b);  // same shape, elementwise
Value Scale(const Value &a, double c);
Value Reshape(const Value &a, const Shape &shape);  // element count preserved
Value Sum(const Value &a);                          // scalar

// Numerically stable log-softmax over each row; plain data helper for
// inference paths (no graph).
void LogSoftmaxRows(int64_t rows, int64_t cols, const double *in, double *out);

}  // namespace cjfe

#endif  // CJFE_GRADCORE_OPS_H_
