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

#include "elecxai/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <unordered_set>
#include <utility>

namespace elecxai::geo {
namespace {

using geometry::BoundingBox;
using geometry::ClipConvex;
using geometry::ClipHalfPlane;
using geometry::OverlapArea;
using geometry::SignedArea;

constexpr double kEarthRadiusKm = 6371.0088;

Polygon CounterClockwise(Polygon polygon) {
  if (SignedArea(polygon) < 0) {
    for (auto& ring : polygon) std::reverse(ring.begin(), ring.end());
  }
  return polygon;
}

// Lexicographic order on vertex data, used to make overlap symmetric.
bool CanonicalLess(const Polygon& a, const Polygon& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != b[r].size()) return a[r].size() < b[r].size();
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t i = 0; i < a[r].size(); ++i) {
      for (int k = 0; k < 2; ++k) {
        if (a[r][i][k] != b[r][i][k]) return a[r][i][k] < b[r][i][k];
      }
    }
  }
  return false;
}

struct Overlap {
  std::size_t commune;
  double area;
};

std::vector<Overlap> CellOverlaps(const VoronoiCell& cell,
                                  std::span<const Commune> communes) {
  std::vector<Overlap> out;
  const auto cell_box = BoundingBox(cell.polygon);
  for (std::size_t c = 0; c < communes.size(); ++c) {
    if (!cell_box.Overlaps(BoundingBox(communes[c].polygon))) continue;
    const double area = OverlapArea(cell.polygon, communes[c].polygon);
    if (area >= kSliverArea) out.push_back({c, area});
  }
  if (out.empty()) throw UnlabeledCellError(cell.tower_id);
  return out;
}

double WeightedRate(const std::vector<Overlap>& overlaps,
                    std::span<const Commune> communes) {
  double num = 0;
  double den = 0;
  for (const auto& o : overlaps) {
    num += o.area * communes[o.commune].ElectrificationRate();
    den += o.area;
  }
  return num / den;
}

double WeightedPopulation(const std::vector<Overlap>& overlaps,
                          std::span<const Commune> communes) {
  double population = 0;
  for (const auto& o : overlaps) {
    const auto& commune = communes[o.commune];
    const double commune_area = geometry::Area(commune.polygon);
    if (commune_area <= 0) {
      throw InvalidArgument("commune " + commune.id + " has zero area");
    }
    population += commune.population * (o.area / commune_area);
  }
  return population;
}

}  // namespace

double Commune::ElectrificationRate() const {
  if (!(households_total > 0)) {
    throw InvalidArgument("commune " + id + " has no households");
  }
  if (households_electrified < 0 || households_electrified > households_total) {
    throw InvalidArgument("commune " + id +
                          ": electrified households outside [0, total]");
  }
  return households_electrified / households_total;
}

std::string_view UrbanicityName(Urbanicity u) {
  return u == Urbanicity::kUrban ? "urban" : "rural";
}

Urbanicity ParseUrbanicity(std::string_view name) {
  if (name == "urban") return Urbanicity::kUrban;
  if (name == "rural") return Urbanicity::kRural;
  throw DataError("unknown urbanicity '" + std::string(name) + "'");
}

DuplicateSiteError::DuplicateSiteError(std::string first, std::string second)
    : InvalidArgument("duplicate tower site: " + first + " and " + second +
                      " share a location"),
      first_(std::move(first)),
      second_(std::move(second)) {}

UnlabeledCellError::UnlabeledCellError(std::string tower_id)
    : DataError("cell of tower " + tower_id + " intersects no commune"),
      tower_id_(std::move(tower_id)) {}

std::vector<VoronoiCell> ComputeVoronoi(std::span<const TowerSite> sites,
                                        const Polygon& boundary_in) {
  const std::size_t n = sites.size();
  if (n < 3) {
    throw InvalidArgument("Voronoi tessellation needs at least 3 sites, got " +
                          std::to_string(n));
  }
  if (!geometry::IsSimple(boundary_in)) {
    throw InvalidArgument("boundary polygon is not simple");
  }
  const Polygon boundary = CounterClockwise(boundary_in);

  std::unordered_set<std::string> ids;
  for (const auto& s : sites) {
    if (!ids.insert(s.tower_id).second) {
      throw InvalidArgument("duplicate tower id " + s.tower_id);
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = sites[a].position;
    const auto& pb = sites[b].position;
    return pa.x() != pb.x() ? pa.x() < pb.x() : pa.y() < pb.y();
  });
  for (std::size_t k = 1; k < n; ++k) {
    if (sites[order[k]].position == sites[order[k - 1]].position) {
      throw DuplicateSiteError(sites[order[k - 1]].tower_id,
                               sites[order[k]].tower_id);
    }
  }
  for (const auto& s : sites) {
    if (geometry::WindingNumber(boundary, s.position) == 0 ||
        geometry::BoundaryDistance(boundary, s.position) == 0.0) {
      throw InvalidArgument("tower " + s.tower_id +
                            " is not strictly inside the boundary");
    }
  }

  auto box = BoundingBox(boundary);
  const double margin = (box.max - box.min).norm() + 1.0;
  const Ring frame = {
      Point(box.min.x() - margin, box.min.y() - margin),
      Point(box.max.x() + margin, box.min.y() - margin),
      Point(box.max.x() + margin, box.max.y() + margin),
      Point(box.min.x() - margin, box.max.y() + margin),
  };

  std::vector<VoronoiCell> cells;
  cells.reserve(n);
  std::vector<std::pair<double, std::size_t>> neighbours(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& si = sites[i].position;
    for (std::size_t j = 0; j < n; ++j) {
      neighbours[j] = {(sites[j].position - si).squaredNorm(), j};
    }
    std::sort(neighbours.begin(), neighbours.end());

    Ring convex = frame;
    auto radius2 = [&] {
      double r = 0;
      for (const auto& v : convex) r = std::max(r, (v - si).squaredNorm());
      return r;
    };
    double r2 = radius2();
    for (const auto& [d2, j] : neighbours) {
      if (j == i) continue;
      // Bisectors farther than the cell radius cannot cut the cell.
      if (d2 > 4.0 * r2) break;
      const Point& sj = sites[j].position;
      const Point normal = sj - si;
      convex = ClipHalfPlane<double>(convex, normal, normal.dot(0.5 * (si + sj)));
      r2 = radius2();
    }

    VoronoiCell cell;
    cell.tower_id = sites[i].tower_id;
    cell.site = si;
    cell.polygon = ClipConvex<double>(boundary, convex);
    cell.area = SignedArea(cell.polygon);
    if (!(cell.area > 0)) {
      throw Error("degenerate Voronoi cell for tower " + cell.tower_id);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

double PolygonIntersectionArea(const Polygon& a, const Polygon& b) {
  if (!geometry::IsSimple(a) || !geometry::IsSimple(b)) {
    throw InvalidArgument("polygon intersection requires simple polygons");
  }
  const bool swap = CanonicalLess(b, a);
  const Polygon first = CounterClockwise(swap ? b : a);
  const Polygon second = CounterClockwise(swap ? a : b);
  return std::max(0.0, OverlapArea(first, second));
}

double AreaWeightedRate(const VoronoiCell& cell,
                        std::span<const Commune> communes) {
  return WeightedRate(CellOverlaps(cell, communes), communes);
}

double AreaWeightedPopulation(const VoronoiCell& cell,
                              std::span<const Commune> communes) {
  return WeightedPopulation(CellOverlaps(cell, communes), communes);
}

Urbanicity ClassifyUrbanicity(double density, double threshold) {
  return density > threshold ? Urbanicity::kUrban : Urbanicity::kRural;
}

void LabelCell(VoronoiCell& cell, std::span<const Commune> communes,
               double urban_threshold) {
  const auto overlaps = CellOverlaps(cell, communes);
  cell.electrification_rate = WeightedRate(overlaps, communes);
  cell.population = WeightedPopulation(overlaps, communes);
  cell.density = cell.population / cell.area;
  cell.urbanicity = ClassifyUrbanicity(cell.density, urban_threshold);
}

LabelResult LabelCells(std::vector<VoronoiCell> cells,
                       std::span<const Commune> communes,
                       double urban_threshold) {
  LabelResult result;
  result.labeled.reserve(cells.size());
  for (auto& cell : cells) {
    try {
      LabelCell(cell, communes, urban_threshold);
      result.labeled.push_back(std::move(cell));
    } catch (const UnlabeledCellError& e) {
      result.unlabeled.push_back(e.tower_id());
    }
  }
  return result;
}

Projection::Projection(double ref_lon, double ref_lat)
    : ref_lon_(ref_lon),
      ref_lat_(ref_lat),
      cos_ref_(std::cos(ref_lat * std::numbers::pi / 180.0)) {}

Projection Projection::CenteredOn(const Polygon& boundary_lonlat) {
  if (boundary_lonlat.empty() || boundary_lonlat.front().size() < 3) {
    throw InvalidArgument("projection reference needs a boundary ring");
  }
  const Point c = geometry::Centroid(boundary_lonlat.front());
  return Projection(c.x(), c.y());
}

Point Projection::Forward(double lon, double lat) const {
  constexpr double deg = std::numbers::pi / 180.0;
  return Point(kEarthRadiusKm * (lon - ref_lon_) * deg * cos_ref_,
               kEarthRadiusKm * (lat - ref_lat_) * deg);
}

Point Projection::Inverse(const Point& km) const {
  constexpr double deg = std::numbers::pi / 180.0;
  return Point(ref_lon_ + km.x() / (kEarthRadiusKm * deg * cos_ref_),
               ref_lat_ + km.y() / (kEarthRadiusKm * deg));
}

Polygon Projection::Forward(const Polygon& lonlat) const {
  Polygon out;
  for (const auto& ring : lonlat) {
    Ring r;
    r.reserve(ring.size());
    for (const auto& p : ring) r.push_back(Forward(p.x(), p.y()));
    out.push_back(std::move(r));
  }
  return out;
}

Polygon Projection::Inverse(const Polygon& km) const {
  Polygon out;
  for (const auto& ring : km) {
    Ring r;
    r.reserve(ring.size());
    for (const auto& p : ring) r.push_back(Inverse(p));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace elecxai::geo
