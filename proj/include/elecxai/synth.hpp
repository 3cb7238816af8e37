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

// Synthetic world and call-detail generator with a planted link between SMS
// activity and electrification.

#ifndef ELECXAI_SYNTH_HPP_
#define ELECXAI_SYNTH_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "elecxai/geo.hpp"
#include "elecxai/geo_io.hpp"
#include "elecxai/graph.hpp"

namespace elecxai::synth {

struct City {
  geo::Point center;  // km, relative to the boundary's bounding box origin
  double peak = 0;    // people per km^2 at the centre
  double radius = 0;  // km, Gaussian scale
};

// Population density: exponential west-east gradient plus Gaussian cities.
struct DensityField {
  double west = 150.0;  // people per km^2 on the western edge
  double east = 15.0;   // on the eastern edge
  std::vector<City> cities;

  double operator()(const geo::Point& p, const geometry::Box<double>& box) const;
};

struct SynthConfig {
  int n_towers = 500;
  int n_communes = 120;
  geo::Polygon boundary;  // km; empty selects DefaultBoundary()
  DensityField density;
  double sms_coupling = 3.0;
  double call_coupling = 1.0;
  std::uint64_t seed = 7;

  double min_separation_km = 0.2;
  double noise_sigma = 0.3;      // log-normal volume noise
  double volume_scale = 3e-6;    // events per person^2 per km^-2
  double softening_km = 1.0;
  double minutes_per_call = 2.0;
  double household_size = 8.0;
  // logit(rate) = slope * log10(density / pivot) + N(0, noise)
  double rate_slope = 2.5;
  double rate_pivot = 150.0;
  double rate_noise = 1.2;
  double grid_step_km = 0.5;     // quadrature step for commune populations
  // Geographic reference used when exporting lon/lat.
  double ref_lon = -14.5;
  double ref_lat = 14.5;

  void Validate() const;
};

// Convex octagon of roughly 300 x 200 km.
geo::Polygon DefaultBoundary();
DensityField DefaultDensityField();
SynthConfig DefaultConfig();

// Planar world, in km, centred so the boundary centroid is the origin.
struct World {
  geo::Polygon boundary;
  std::vector<geo::TowerSite> sites;
  std::vector<geo::Commune> communes;
  double ref_lon = 0;
  double ref_lat = 0;
};

World GenerateWorld(const SynthConfig& config);

// Per-tower inputs of the gravity model.
struct TowerProfile {
  std::string tower_id;
  geo::Point position;
  double population = 0;
  double electrification = 0;
  double area = 0;
};

// Expected directed volume of calls (CN) or messages (SN) before noise.
double ExpectedVolume(const TowerProfile& from, const TowerProfile& to,
                      EventType type, const SynthConfig& config);

// Samples CN, CL and SN records for every ordered pair including self-pairs;
// zero counts are omitted.
std::vector<graph::InteractionRecord> SampleInteractions(
    std::span<const TowerProfile> towers, const SynthConfig& config, Rng& rng);

// Labels the world's cells and samples its interactions from the
// "interactions" substream of config.seed.
std::vector<graph::InteractionRecord> GenerateInteractions(
    const World& world, const SynthConfig& config);

std::vector<TowerProfile> ProfilesFromCells(std::span<const geo::VoronoiCell> cells);

// lon/lat export of the world.
std::vector<geo::TowerLocation> ExportTowers(const World& world);
std::vector<geo::Commune> ExportCommunes(const World& world);
geo::Polygon ExportBoundary(const World& world);

}  // namespace elecxai::synth

#endif  // ELECXAI_SYNTH_HPP_
