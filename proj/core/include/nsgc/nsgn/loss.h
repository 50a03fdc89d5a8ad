// Copyright 2026 The nsgc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NSGC_NSGN_LOSS_H_
#define NSGC_NSGN_LOSS_H_

#include "nsgc/types.h"

namespace nsgc::nsgn {

struct LossValue {
  double value = 0.0;
  Vector gradient;  // d value / d prediction
};

// |pred - target|. The subgradient at pred == target is 0.
LossValue loss_mae(double prediction, double target);

// Softmax cross-entropy of `logits` against class index `label`.
LossValue loss_ce(const Vector& logits, int label);

}  // namespace nsgc::nsgn

#endif  // NSGC_NSGN_LOSS_H_
