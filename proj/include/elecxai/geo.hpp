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

#ifndef ELECXAI_GEO_HPP_
#define ELECXAI_GEO_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "elecxai/common.hpp"
#include "elecxai/geometry.hpp"

namespace elecxai::geo {

using Point = geometry::Point2<double>;
using Ring = geometry::Ring<double>;
using Polygon = geometry::Polygon<double>;

// Census unit. Coordinates are planar kilometres.
struct Commune {
  std::string id;
  Polygon polygon;
  double households_total = 0;
  double households_electrified = 0;
  double population = 0;

  // Fraction of households with stable access; throws on an empty commune.
  double ElectrificationRate() const;
};

enum class Urbanicity { kUrban, kRural };

std::string_view UrbanicityName(Urbanicity u);
Urbanicity ParseUrbanicity(std::string_view name);

struct TowerSite {
  std::string tower_id;
  Point position;
};

struct VoronoiCell {
  std::string tower_id;
  Point site;
  Polygon polygon;
  double area = 0;
  // Filled by LabelCell.
  double electrification_rate = 0;
  double population = 0;
  double density = 0;
  Urbanicity urbanicity = Urbanicity::kRural;
};

// Intersections smaller than this (km^2) are ignored when weighting.
inline constexpr double kSliverArea = 1e-9;
inline constexpr double kDefaultUrbanThreshold = 1000.0;

class DuplicateSiteError : public InvalidArgument {
 public:
  DuplicateSiteError(std::string first, std::string second);
  const std::string& first_id() const { return first_; }
  const std::string& second_id() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

// A cell that overlaps no commune and therefore has no label.
class UnlabeledCellError : public DataError {
 public:
  explicit UnlabeledCellError(std::string tower_id);
  const std::string& tower_id() const { return tower_id_; }

 private:
  std::string tower_id_;
};

// Voronoi tessellation of `sites` clipped to `boundary`, one cell per site in
// input order. Requires at least three distinct sites strictly inside the
// boundary.
std::vector<VoronoiCell> ComputeVoronoi(std::span<const TowerSite> sites,
                                        const Polygon& boundary);

// Overlap area of two simple polygons. Symmetric bit for bit.
double PolygonIntersectionArea(const Polygon& a, const Polygon& b);

// Area-weighted mean electrification rate of the communes overlapping `cell`.
double AreaWeightedRate(const VoronoiCell& cell,
                        std::span<const Commune> communes);

// Population assigned to `cell` assuming each commune is homogeneous.
double AreaWeightedPopulation(const VoronoiCell& cell,
                              std::span<const Commune> communes);

// Strict comparison: density == threshold is rural.
Urbanicity ClassifyUrbanicity(double density,
                              double threshold = kDefaultUrbanThreshold);

// Fills rate, population, density and urbanicity of `cell`.
void LabelCell(VoronoiCell& cell, std::span<const Commune> communes,
               double urban_threshold = kDefaultUrbanThreshold);

// Labels every cell; cells that overlap no commune are returned in
// `unlabeled` instead of aborting.
struct LabelResult {
  std::vector<VoronoiCell> labeled;
  std::vector<std::string> unlabeled;
};
LabelResult LabelCells(std::vector<VoronoiCell> cells,
                       std::span<const Commune> communes,
                       double urban_threshold = kDefaultUrbanThreshold);

// Equirectangular projection to kilometres about a fixed reference.
class Projection {
 public:
  Projection(double ref_lon, double ref_lat);
  // Centred on the area centroid of the first ring of `boundary_lonlat`.
  static Projection CenteredOn(const Polygon& boundary_lonlat);

  Point Forward(double lon, double lat) const;
  Point Inverse(const Point& km) const;  // returns (lon, lat)
  Polygon Forward(const Polygon& lonlat) const;
  Polygon Inverse(const Polygon& km) const;

  double ref_lon() const { return ref_lon_; }
  double ref_lat() const { return ref_lat_; }

 private:
  double ref_lon_;
  double ref_lat_;
  double cos_ref_;
};

}  // namespace elecxai::geo

#endif  // ELECXAI_GEO_HPP_
