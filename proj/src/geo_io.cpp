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

#include "elecxai/geo_io.hpp"

#include <json.hpp>

#include "elecxai/csv.hpp"

namespace elecxai::geo {
namespace {

using nlohmann::json;

Ring ParseRing(const json& coords, bool exterior) {
  Ring ring;
  for (const auto& pt : coords) {
    if (!pt.is_array() || pt.size() < 2) {
      throw DataError("GeoJSON position must be [lon, lat]");
    }
    ring.emplace_back(pt[0].get<double>(), pt[1].get<double>());
  }
  if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  if (ring.size() < 3) throw DataError("GeoJSON ring has fewer than 3 vertices");
  geometry::Orient(ring, exterior);
  return ring;
}

void AppendGeometry(const json& geometry, Polygon& out) {
  const auto type = geometry.at("type").get<std::string>();
  const auto& coords = geometry.at("coordinates");
  auto add_polygon = [&](const json& rings) {
    bool first = true;
    for (const auto& r : rings) {
      out.push_back(ParseRing(r, first));
      first = false;
    }
  };
  if (type == "Polygon") {
    add_polygon(coords);
  } else if (type == "MultiPolygon") {
    for (const auto& p : coords) add_polygon(p);
  } else {
    throw DataError("unsupported GeoJSON geometry type " + type);
  }
}

json RingJson(const Ring& ring) {
  json arr = json::array();
  for (const auto& p : ring) arr.push_back({p.x(), p.y()});
  if (!ring.empty()) arr.push_back({ring.front().x(), ring.front().y()});
  return arr;
}

json PolygonJson(const Polygon& polygon) {
  json rings = json::array();
  for (const auto& r : polygon) rings.push_back(RingJson(r));
  return {{"type", "Polygon"}, {"coordinates", rings}};
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid GeoJSON: ") + e.what());
  }
}

}  // namespace

std::vector<TowerLocation> ParseTowersCsv(std::string_view text) {
  const auto table = csv::Parse(text, "towers");
  const auto id = table.Column("tower_id");
  const auto lon = table.Column("lon");
  const auto lat = table.Column("lat");
  std::vector<TowerLocation> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    out.push_back({row[id], csv::ToDouble(row[lon], "towers.lon"),
                   csv::ToDouble(row[lat], "towers.lat")});
  }
  return out;
}

std::string FormatTowersCsv(const std::vector<TowerLocation>& towers) {
  std::string out = "tower_id,lon,lat\n";
  for (const auto& t : towers) {
    out += csv::JoinRow({t.tower_id, FormatDouble(t.lon), FormatDouble(t.lat)});
  }
  return out;
}

std::vector<Commune> ParseCommunesGeoJson(std::string_view text) {
  const json doc = ParseJson(text);
  if (doc.value("type", "") != "FeatureCollection") {
    throw DataError("communes file must be a GeoJSON FeatureCollection");
  }
  std::vector<Commune> out;
  std::size_t index = 0;
  for (const auto& feature : doc.at("features")) {
    Commune c;
    const auto& props = feature.at("properties");
    if (props.contains("id")) {
      c.id = props["id"].is_string() ? props["id"].get<std::string>()
                                     : props["id"].dump();
    } else if (feature.contains("id")) {
      c.id = feature["id"].is_string() ? feature["id"].get<std::string>()
                                       : feature["id"].dump();
    } else {
      c.id = "commune_" + std::to_string(index);
    }
    try {
      c.households_total = props.at("households_total").get<double>();
      c.households_electrified = props.at("households_electrified").get<double>();
      c.population = props.at("population").get<double>();
    } catch (const json::exception& e) {
      throw DataError("commune " + c.id + ": " + e.what());
    }
    AppendGeometry(feature.at("geometry"), c.polygon);
    out.push_back(std::move(c));
    ++index;
  }
  return out;
}

std::string FormatCommunesGeoJson(const std::vector<Commune>& communes) {
  json features = json::array();
  for (const auto& c : communes) {
    features.push_back({{"type", "Feature"},
                        {"properties",
                         {{"id", c.id},
                          {"households_total", c.households_total},
                          {"households_electrified", c.households_electrified},
                          {"population", c.population}}},
                        {"geometry", PolygonJson(c.polygon)}});
  }
  json doc = {{"type", "FeatureCollection"}, {"features", features}};
  return doc.dump(1) + "\n";
}

Polygon ParseBoundaryGeoJson(std::string_view text) {
  const json doc = ParseJson(text);
  Polygon out;
  const auto type = doc.value("type", "");
  if (type == "FeatureCollection") {
    for (const auto& f : doc.at("features")) AppendGeometry(f.at("geometry"), out);
  } else if (type == "Feature") {
    AppendGeometry(doc.at("geometry"), out);
  } else {
    AppendGeometry(doc, out);
  }
  if (out.empty()) throw DataError("boundary GeoJSON contains no polygon");
  return out;
}

std::string FormatBoundaryGeoJson(const Polygon& boundary) {
  json doc = {{"type", "Feature"},
              {"properties", json::object()},
              {"geometry", PolygonJson(boundary)}};
  return doc.dump(1) + "\n";
}

std::string FormatCellsCsv(const std::vector<VoronoiCell>& cells) {
  std::string out = "tower_id,rate,population,density,urbanicity\n";
  for (const auto& c : cells) {
    out += csv::JoinRow({c.tower_id, FormatDouble(c.electrification_rate),
                         FormatDouble(c.population), FormatDouble(c.density),
                         std::string(UrbanicityName(c.urbanicity))});
  }
  return out;
}

std::vector<CellLabel> ParseCellsCsv(std::string_view text) {
  const auto table = csv::Parse(text, "cells");
  const auto id = table.Column("tower_id");
  const auto rate = table.Column("rate");
  const auto pop = table.Column("population");
  const auto dens = table.Column("density");
  const auto urb = table.Column("urbanicity");
  std::vector<CellLabel> out;
  for (const auto& row : table.rows) {
    out.push_back({row[id], csv::ToDouble(row[rate], "cells.rate"),
                   csv::ToDouble(row[pop], "cells.population"),
                   csv::ToDouble(row[dens], "cells.density"),
                   ParseUrbanicity(row[urb])});
  }
  return out;
}

}  // namespace elecxai::geo
