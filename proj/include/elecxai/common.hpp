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

#ifndef ELECXAI_COMMON_HPP_
#define ELECXAI_COMMON_HPP_

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace elecxai {

// Number of ordinal electrification classes and per-tower features.
inline constexpr int kNumClasses = 10;
inline constexpr int kNumFeatures = 18;
inline constexpr int kFeaturesPerNetwork = 6;

enum class EventType { kCalls = 0, kCallLength = 1, kSms = 2 };

inline constexpr std::array<EventType, 3> kEventTypes = {
    EventType::kCalls, EventType::kCallLength, EventType::kSms};

// "CN", "CL" or "SN".
std::string_view EventTypeCode(EventType type);
EventType ParseEventType(std::string_view code);

// Column names in schema order: cn_te, cn_out, ..., sn_ratio.
const std::array<std::string, kNumFeatures>& FeatureNames();
int FeatureIndex(std::string_view name);
bool IsSmsFeature(int feature);

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an input violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A stage input (file, record, identifier) could not be parsed or resolved.
class DataError : public Error {
 public:
  using Error::Error;
};

using Rng = std::mt19937_64;

// Deterministic child seed for a named substream. The same (seed, stream)
// pair always yields the same value on every platform.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view stream);

inline Rng MakeRng(std::uint64_t seed, std::string_view stream) {
  return Rng(DeriveSeed(seed, stream));
}

// Uniform integer in [0, n) without the implementation-defined behaviour of
// std::uniform_int_distribution.
std::uint64_t UniformIndex(Rng& rng, std::uint64_t n);

// Uniform double in [0, 1) built from the top 53 bits.
double UniformUnit(Rng& rng);

// Shortest decimal text that round-trips to the same double.
std::string FormatDouble(double value);

}  // namespace elecxai

#endif  // ELECXAI_COMMON_HPP_
