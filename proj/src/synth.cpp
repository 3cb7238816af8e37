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

#include "elecxai/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace elecxai::synth {
namespace {

using geo::Point;

std::string PaddedId(char prefix, int k, int width) {
  std::string digits = std::to_string(k);
  if (static_cast<int>(digits.size()) < width) {
    digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
  }
  return std::string(1, prefix) + digits;
}

double Logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

bool StrictlyInside(const geo::Polygon& boundary, const Point& p) {
  return geometry::WindingNumber(boundary, p) != 0 &&
         geometry::BoundaryDistance(boundary, p) > 1e-6;
}

// Rejection sampling with intensity proportional to density^exponent.
std::vector<Point> SamplePoints(int count, const geo::Polygon& boundary,
                                const DensityField& field, double exponent,
                                double min_separation, Rng& rng) {
  const auto box = geometry::BoundingBox(boundary);
  const Point extent = box.max - box.min;
  double dmax = 0;
  for (int gx = 0; gx <= 200; ++gx) {
    for (int gy = 0; gy <= 200; ++gy) {
      const Point p = box.min + Point(extent.x() * gx / 200.0, extent.y() * gy / 200.0);
      dmax = std::max(dmax, field(p, box));
    }
  }
  for (const auto& city : field.cities) {
    dmax = std::max(dmax, field(box.min + city.center, box));
  }
  const double cap = std::pow(dmax, exponent) * 1.05;

  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(count));
  const long long max_attempts = 20000LL * count;
  const double sep2 = min_separation * min_separation;
  for (long long attempt = 0; static_cast<int>(points.size()) < count; ++attempt) {
    if (attempt >= max_attempts) {
      throw InvalidArgument("could not place " + std::to_string(count) +
                            " points with minimum separation " +
                            std::to_string(min_separation) +
                            " km inside the boundary");
    }
    const Point p = box.min + Point(extent.x() * UniformUnit(rng),
                                    extent.y() * UniformUnit(rng));
    const double u = UniformUnit(rng);
    if (!StrictlyInside(boundary, p)) continue;
    if (u * cap > std::pow(field(p, box), exponent)) continue;
    const bool crowded = std::any_of(points.begin(), points.end(), [&](const Point& q) {
      return (q - p).squaredNorm() < sep2;
    });
    if (crowded) continue;
    points.push_back(p);
  }
  return points;
}

// Grid quadrature of the density field over each commune. Communes are
// Voronoi cells of their seeds, so the nearest seed identifies the commune.
std::vector<double> CommunePopulations(const std::vector<Point>& seeds,
                                       const geo::Polygon& boundary,
                                       const DensityField& field, double step) {
  const auto box = geometry::BoundingBox(boundary);
  std::vector<double> population(seeds.size(), 0.0);
  const double cell = step * step;
  for (double x = box.min.x() + step / 2; x < box.max.x(); x += step) {
    for (double y = box.min.y() + step / 2; y < box.max.y(); y += step) {
      const Point p(x, y);
      if (geometry::WindingNumber(boundary, p) == 0) continue;
      std::size_t best = 0;
      double best_d2 = (seeds[0] - p).squaredNorm();
      for (std::size_t k = 1; k < seeds.size(); ++k) {
        const double d2 = (seeds[k] - p).squaredNorm();
        if (d2 < best_d2) {
          best_d2 = d2;
          best = k;
        }
      }
      population[best] += field(p, box) * cell;
    }
  }
  return population;
}

}  // namespace

double DensityField::operator()(const geo::Point& p,
                                const geometry::Box<double>& box) const {
  const double width = box.max.x() - box.min.x();
  const double t = width > 0 ? std::clamp((p.x() - box.min.x()) / width, 0.0, 1.0) : 0.0;
  double d = west * std::pow(east / west, t);
  for (const auto& city : cities) {
    const double r2 = (p - (box.min + city.center)).squaredNorm();
    d += city.peak * std::exp(-r2 / (2.0 * city.radius * city.radius));
  }
  return d;
}

void SynthConfig::Validate() const {
  if (n_towers < 10) throw InvalidArgument("n_towers must be at least 10");
  if (n_communes < 3) throw InvalidArgument("n_communes must be at least 3");
  if (sms_coupling < 0 || call_coupling < 0) {
    throw InvalidArgument("couplings must be non-negative");
  }
  if (!(density.west > 0) || !(density.east > 0)) {
    throw InvalidArgument("density gradient endpoints must be positive");
  }
  for (const auto& c : density.cities) {
    if (c.peak < 0 || !(c.radius > 0)) {
      throw InvalidArgument("city peaks must be >= 0 and radii > 0");
    }
  }
  if (!(volume_scale > 0) || noise_sigma < 0 || !(softening_km > 0) ||
      minutes_per_call < 1 || !(household_size > 0) || !(grid_step_km > 0) ||
      min_separation_km < 0 || !(rate_pivot > 0) || rate_noise < 0) {
    throw InvalidArgument("invalid generator parameter");
  }
}

geo::Polygon DefaultBoundary() {
  return {{Point(0, 30), Point(50, 0), Point(260, 0), Point(300, 50),
           Point(300, 180), Point(230, 200), Point(40, 200), Point(0, 160)}};
}

DensityField DefaultDensityField() {
  DensityField f;
  f.west = 150.0;
  f.east = 15.0;
  f.cities = {
      {Point(35, 110), 9000.0, 7.0},
      {Point(60, 175), 3000.0, 5.0},
      {Point(140, 70), 4000.0, 6.0},
      {Point(250, 150), 2000.0, 4.0},
  };
  return f;
}

SynthConfig DefaultConfig() {
  SynthConfig c;
  c.boundary = DefaultBoundary();
  c.density = DefaultDensityField();
  return c;
}

World GenerateWorld(const SynthConfig& config) {
  config.Validate();
  geo::Polygon boundary = config.boundary.empty() ? DefaultBoundary() : config.boundary;
  if (!geometry::IsSimple(boundary)) {
    throw InvalidArgument("synthetic boundary is not simple");
  }
  if (geometry::SignedArea(boundary) < 0) {
    for (auto& ring : boundary) std::reverse(ring.begin(), ring.end());
  }
  const Point centroid = geometry::Centroid(boundary.front());
  for (auto& ring : boundary) {
    for (auto& p : ring) p -= centroid;
  }

  Rng rng = MakeRng(config.seed, "world");
  World world;
  world.boundary = boundary;
  world.ref_lon = config.ref_lon;
  world.ref_lat = config.ref_lat;

  const auto towers = SamplePoints(config.n_towers, boundary, config.density, 1.0,
                                   config.min_separation_km, rng);
  for (int k = 0; k < config.n_towers; ++k) {
    world.sites.push_back({PaddedId('T', k, 4), towers[k]});
  }

  const auto seeds = SamplePoints(config.n_communes, boundary, config.density, 0.5,
                                  std::max(1.0, config.min_separation_km), rng);
  std::vector<geo::TowerSite> seed_sites;
  for (int k = 0; k < config.n_communes; ++k) {
    seed_sites.push_back({PaddedId('C', k, 3), seeds[k]});
  }
  auto cells = geo::ComputeVoronoi(seed_sites, boundary);
  auto population = CommunePopulations(seeds, boundary, config.density,
                                       config.grid_step_km);
  const auto box = geometry::BoundingBox(boundary);

  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    geo::Commune c;
    c.id = cells[k].tower_id;
    c.polygon = std::move(cells[k].polygon);
    const double area = geometry::Area(c.polygon);
    double pop = population[k];
    if (!(pop > 0)) pop = config.density(seeds[k], box) * area;
    c.population = std::round(pop);
    const double density = c.population / area;
    const double logit =
        config.rate_slope * std::log10(std::max(density, 1e-3) / config.rate_pivot) +
        config.rate_noise * noise(rng);
    const double rate = Logistic(logit);
    c.households_total = std::max(1.0, std::round(c.population / config.household_size));
    c.households_electrified = std::round(rate * c.households_total);
    world.communes.push_back(std::move(c));
  }
  return world;
}

double ExpectedVolume(const TowerProfile& from, const TowerProfile& to,
                      EventType type, const SynthConfig& config) {
  const bool self = from.tower_id == to.tower_id;
  const double d2 = self ? from.area / std::numbers::pi
                         : (from.position - to.position).squaredNorm();
  const double s2 = config.softening_km * config.softening_km;
  const double mass = from.population * to.population;
  if (type == EventType::kSms) {
    return 0.5 * config.volume_scale * mass *
           std::pow(from.electrification, config.sms_coupling) / (d2 + s2);
  }
  return config.volume_scale * std::pow(mass, config.call_coupling) / (d2 + s2);
}

std::vector<graph::InteractionRecord> SampleInteractions(
    std::span<const TowerProfile> towers, const SynthConfig& config, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sigma = config.noise_sigma;
  auto noisy = [&](double mean) {
    return mean * std::exp(sigma * gauss(rng) - 0.5 * sigma * sigma);
  };
  auto poisson = [&](double mean) -> double {
    if (!(mean > 0)) return 0.0;
    std::poisson_distribution<long long> draw(mean);
    return static_cast<double>(draw(rng));
  };

  std::vector<graph::InteractionRecord> records;
  for (const auto& from : towers) {
    for (const auto& to : towers) {
      const double calls =
          poisson(noisy(ExpectedVolume(from, to, EventType::kCalls, config)));
      const double minutes =
          calls > 0 ? calls + poisson(calls * (config.minutes_per_call - 1.0)) : 0.0;
      const double sms =
          poisson(noisy(ExpectedVolume(from, to, EventType::kSms, config)));
      if (calls > 0) {
        records.push_back({from.tower_id, to.tower_id, EventType::kCalls, calls});
        records.push_back({from.tower_id, to.tower_id, EventType::kCallLength, minutes});
      }
      if (sms > 0) {
        records.push_back({from.tower_id, to.tower_id, EventType::kSms, sms});
      }
    }
  }
  return records;
}

std::vector<TowerProfile> ProfilesFromCells(std::span<const geo::VoronoiCell> cells) {
  std::vector<TowerProfile> out;
  out.reserve(cells.size());
  for (const auto& c : cells) {
    out.push_back({c.tower_id, c.site, c.population, c.electrification_rate, c.area});
  }
  return out;
}

std::vector<graph::InteractionRecord> GenerateInteractions(const World& world,
                                                           const SynthConfig& config) {
  config.Validate();
  auto labeled = geo::LabelCells(geo::ComputeVoronoi(world.sites, world.boundary),
                                 world.communes);
  const auto profiles = ProfilesFromCells(labeled.labeled);
  Rng rng = MakeRng(config.seed, "interactions");
  return SampleInteractions(profiles, config, rng);
}

std::vector<geo::TowerLocation> ExportTowers(const World& world) {
  const geo::Projection proj(world.ref_lon, world.ref_lat);
  std::vector<geo::TowerLocation> out;
  for (const auto& s : world.sites) {
    const Point ll = proj.Inverse(s.position);
    out.push_back({s.tower_id, ll.x(), ll.y()});
  }
  return out;
}

std::vector<geo::Commune> ExportCommunes(const World& world) {
  const geo::Projection proj(world.ref_lon, world.ref_lat);
  std::vector<geo::Commune> out = world.communes;
  for (auto& c : out) c.polygon = proj.Inverse(c.polygon);
  return out;
}

geo::Polygon ExportBoundary(const World& world) {
  return geo::Projection(world.ref_lon, world.ref_lat).Inverse(world.boundary);
}

}  // namespace elecxai::synth
