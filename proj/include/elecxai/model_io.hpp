/*
 * Copyright 2026 The elecxai Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Versioned JSON documents for trained models.

#ifndef ELECXAI_MODEL_IO_HPP_
#define ELECXAI_MODEL_IO_HPP_

#include <string>
#include <string_view>

#include <json.hpp>

#include "elecxai/models.hpp"

namespace elecxai::models {

inline constexpr int kModelFormatVersion = 1;

nlohmann::json SpecToJson(const ModelSpec& spec);
ModelSpec SpecFromJson(const nlohmann::json& j);

nlohmann::json ModelToJson(const TrainedModel& model);
TrainedModel ModelFromJson(const nlohmann::json& j);

std::string SerializeModel(const TrainedModel& model);
TrainedModel DeserializeModel(std::string_view text);

}  // namespace elecxai::models

#endif  // ELECXAI_MODEL_IO_HPP_
