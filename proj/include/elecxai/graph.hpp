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

#ifndef ELECXAI_GRAPH_HPP_
#define ELECXAI_GRAPH_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "elecxai/common.hpp"

namespace elecxai::graph {

// Aggregated tower-to-tower activity; `count` is minutes for call length.
struct InteractionRecord {
  std::string from_tower;
  std::string to_tower;
  EventType event_type = EventType::kCalls;
  double count = 0;
};

class UnknownTowerError : public DataError {
 public:
  UnknownTowerError(std::size_t record_index, std::string tower_id);
  std::size_t record_index() const { return record_index_; }
  const std::string& tower_id() const { return tower_id_; }

 private:
  std::size_t record_index_;
  std::string tower_id_;
};

// Ordered set of tower ids; matrix row/column k belongs to ids()[k].
class TowerRegistry {
 public:
  TowerRegistry() = default;
  explicit TowerRegistry(std::vector<std::string> ids);

  const std::vector<std::string>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  // -1 when absent.
  std::ptrdiff_t Find(std::string_view id) const;

  bool operator==(const TowerRegistry& other) const { return ids_ == other.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

// weights(i, j): total events from tower i to tower j; the diagonal holds
// events within a cell.
struct InteractionMatrix {
  EventType event_type = EventType::kCalls;
  TowerRegistry registry;
  Eigen::MatrixXd weights;
};

InteractionMatrix BuildNetwork(std::span<const InteractionRecord> records,
                               EventType event_type,
                               const TowerRegistry& registry);

// Fraction of the other towers linked to `i` in either direction.
double DegreeCentrality(const InteractionMatrix& m, Eigen::Index i);

// Wasserman-Faust closeness over unweighted outgoing hops.
double ClosenessCentrality(const InteractionMatrix& m, Eigen::Index i);

// N x 6: te, out, in, dc, cc, ratio for one network.
Eigen::MatrixXd NetworkFeatures(const InteractionMatrix& m);

// N x 18 in schema order (CN, CL, SN sextets). Matrices must be CN, CL, SN
// over the same registry.
Eigen::MatrixXd ExtractFeatures(const std::array<InteractionMatrix, 3>& networks);

// `from_tower,to_tower,event_type,count`
std::vector<InteractionRecord> ParseRecordsCsv(std::string_view text);
std::string FormatRecordsCsv(std::span<const InteractionRecord> records);

}  // namespace elecxai::graph

#endif  // ELECXAI_GRAPH_HPP_
