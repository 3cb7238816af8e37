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

#include "elecxai/common.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace elecxai {

std::string_view EventTypeCode(EventType type) {
  switch (type) {
    case EventType::kCalls:
      return "CN";
    case EventType::kCallLength:
      return "CL";
    case EventType::kSms:
      return "SN";
  }
  return "??";
}

EventType ParseEventType(std::string_view code) {
  if (code == "CN") return EventType::kCalls;
  if (code == "CL") return EventType::kCallLength;
  if (code == "SN") return EventType::kSms;
  throw DataError("unknown event type '" + std::string(code) + "'");
}

const std::array<std::string, kNumFeatures>& FeatureNames() {
  static const std::array<std::string, kNumFeatures> names = [] {
    std::array<std::string, kNumFeatures> out;
    const std::array<std::string_view, 3> prefixes = {"cn", "cl", "sn"};
    const std::array<std::string_view, kFeaturesPerNetwork> suffixes = {
        "te", "out", "in", "dc", "cc", "ratio"};
    int k = 0;
    for (auto p : prefixes) {
      for (auto s : suffixes) {
        out[k++] = std::string(p) + "_" + std::string(s);
      }
    }
    return out;
  }();
  return names;
}

int FeatureIndex(std::string_view name) {
  const auto& names = FeatureNames();
  for (int i = 0; i < kNumFeatures; ++i) {
    if (names[i] == name) return i;
  }
  throw InvalidArgument("unknown feature '" + std::string(name) + "'");
}

bool IsSmsFeature(int feature) {
  return feature >= 2 * kFeaturesPerNetwork && feature < kNumFeatures;
}

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view stream) {
  return SplitMix64(SplitMix64(seed) ^ Fnv1a(stream));
}

std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("UniformIndex: empty range");
  // Rejection sampling on the largest multiple of n.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace elecxai
