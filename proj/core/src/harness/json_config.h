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

// JSON conversions for configuration records. Private to the library so the
// JSON dependency stays out of the installed headers.

#ifndef NSGC_SRC_HARNESS_JSON_CONFIG_H_
#define NSGC_SRC_HARNESS_JSON_CONFIG_H_

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nsgc/harness/synthetic.h"
#include "nsgc/nsgn/train.h"

namespace nsgc::harness::detail {

using Json = nlohmann::json;

// Throws kBadConfig naming `where` if `obj` is not an object or carries a key
// outside `allowed`.
void require_keys(const Json& obj, std::string_view where,
                  std::initializer_list<std::string_view> allowed);

// Reads a number; strings of the form "a/b" are accepted so exact fractions
// such as 1/3 can be written down.
double read_real(const Json& value, std::string_view where);
int read_int(const Json& value, std::string_view where);
std::string read_string(const Json& value, std::string_view where);
bool read_bool(const Json& value, std::string_view where);

// Fields absent from `obj` keep the value already in `out`.
void read_model(const Json& obj, nsgn::ModelConfig& out);
void read_optimizer(const Json& obj, nsgn::OptimizerConfig& out);
void read_task(const Json& obj, SyntheticTaskSpec& out);

Json to_json(const nsgn::ModelConfig& c);
Json to_json(const nsgn::BasisSpec& b);
Json to_json(const nsgn::OptimizerConfig& o);
Json to_json(const nsgn::TrainConfig& t);
Json to_json(const SyntheticTaskSpec& s);

nsgn::TrainConfig train_config_from_json(const Json& obj);

}  // namespace nsgc::harness::detail

#endif  // NSGC_SRC_HARNESS_JSON_CONFIG_H_
