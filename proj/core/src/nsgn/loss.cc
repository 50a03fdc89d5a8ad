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

#include "nsgc/nsgn/loss.h"

#include <cmath>
#include <string>

#include "nsgc/error.h"

namespace nsgc::nsgn {

LossValue loss_mae(double prediction, double target) {
  const double diff = prediction - target;
  LossValue out;
  out.value = std::abs(diff);
  out.gradient = Vector::Constant(1, diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0));
  return out;
}

LossValue loss_ce(const Vector& logits, int label) {
  if (label < 0 || label >= logits.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "class label " + std::to_string(label) + " outside [0, " +
                    std::to_string(logits.size()) + ")");
  }
  const double peak = logits.maxCoeff();
  const Vector shifted = logits.array() - peak;
  const Vector expd = shifted.array().exp();
  const double total = expd.sum();
  LossValue out;
  out.value = std::log(total) - shifted(label);
  out.gradient = expd / total;
  out.gradient(label) -= 1.0;
  return out;
}

}  // namespace nsgc::nsgn
