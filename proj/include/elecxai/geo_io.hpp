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

// File formats of the geography stage: tower CSV, commune and boundary
// GeoJSON, labeled-cell CSV. Geographic inputs are lon/lat degrees.

#ifndef ELECXAI_GEO_IO_HPP_
#define ELECXAI_GEO_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "elecxai/geo.hpp"

namespace elecxai::geo {

struct TowerLocation {
  std::string tower_id;
  double lon = 0;
  double lat = 0;
};

// `tower_id,lon,lat`
std::vector<TowerLocation> ParseTowersCsv(std::string_view text);
std::string FormatTowersCsv(const std::vector<TowerLocation>& towers);

// FeatureCollection of Polygon/MultiPolygon features carrying
// `households_total`, `households_electrified`, `population`. Coordinates
// stay in lon/lat; project them before use.
std::vector<Commune> ParseCommunesGeoJson(std::string_view text);
std::string FormatCommunesGeoJson(const std::vector<Commune>& communes_lonlat);

// Either a bare Polygon geometry, a Feature, or a FeatureCollection whose
// features are merged into one ring set.
Polygon ParseBoundaryGeoJson(std::string_view text);
std::string FormatBoundaryGeoJson(const Polygon& boundary_lonlat);

// `tower_id,rate,population,density,urbanicity`
struct CellLabel {
  std::string tower_id;
  double rate = 0;
  double population = 0;
  double density = 0;
  Urbanicity urbanicity = Urbanicity::kRural;
};
std::string FormatCellsCsv(const std::vector<VoronoiCell>& cells);
std::vector<CellLabel> ParseCellsCsv(std::string_view text);

}  // namespace elecxai::geo

#endif  // ELECXAI_GEO_IO_HPP_
