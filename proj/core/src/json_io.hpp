// Copyright 2026 The rfkit Authors.
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

#ifndef RFKIT_SRC_JSON_IO_HPP_
#define RFKIT_SRC_JSON_IO_HPP_

#include <json.hpp>

#include "rfkit/feature_maps.hpp"
#include "rfkit/kernels.hpp"

namespace rfkit::detail {

nlohmann::json kernel_to_json(const KernelSpec& spec);
KernelSpec kernel_from_json(const nlohmann::json& j);

nlohmann::json operator_to_json(const FeatureOperator& op);
FeatureOperator operator_from_json(const nlohmann::json& j);

}  // namespace rfkit::detail

#endif  // RFKIT_SRC_JSON_IO_HPP_
