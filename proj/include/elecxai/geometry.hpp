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

// Planar polygon primitives on Eigen 2-vectors.
//
// A polygon is a set of closed rings interpreted by winding number: exterior
// rings run counter-clockwise, holes clockwise. Clipping against convex
// windows keeps that interpretation exact even when the output ring has
// zero-width bridges, which is what makes non-convex regions safe to clip
// with Sutherland-Hodgman.

#ifndef ELECXAI_GEOMETRY_HPP_
#define ELECXAI_GEOMETRY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Core>

namespace elecxai::geometry {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Ring = std::vector<Point2<Scalar>>;

template <typename Scalar>
using Polygon = std::vector<Ring<Scalar>>;

template <typename Scalar>
struct Box {
  Point2<Scalar> min;
  Point2<Scalar> max;

  bool Overlaps(const Box& other) const {
    return (min.array() <= other.max.array()).all() &&
           (other.min.array() <= max.array()).all();
  }
};

template <typename Scalar>
Scalar Cross(const Point2<Scalar>& a, const Point2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Orientation of c relative to the directed line a->b (>0: left).
template <typename Scalar>
Scalar Orient(const Point2<Scalar>& a, const Point2<Scalar>& b,
              const Point2<Scalar>& c) {
  return Cross<Scalar>(b - a, c - a);
}

// Shoelace formula; positive for counter-clockwise rings.
template <typename Scalar>
Scalar SignedArea(const Ring<Scalar>& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return Scalar(0);
  Scalar twice = 0;
  for (std::size_t i = 0; i < n; ++i) {
    twice += Cross<Scalar>(ring[i], ring[(i + 1) % n]);
  }
  return twice / Scalar(2);
}

// Integral of the winding number over the plane.
template <typename Scalar>
Scalar SignedArea(const Polygon<Scalar>& polygon) {
  Scalar total = 0;
  for (const auto& ring : polygon) total += SignedArea(ring);
  return total;
}

template <typename Scalar>
Scalar Area(const Polygon<Scalar>& polygon) {
  return std::abs(SignedArea(polygon));
}

template <typename Scalar>
Box<Scalar> BoundingBox(const Polygon<Scalar>& polygon) {
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  Box<Scalar> box{Point2<Scalar>(inf, inf), Point2<Scalar>(-inf, -inf)};
  for (const auto& ring : polygon) {
    for (const auto& p : ring) {
      box.min = box.min.cwiseMin(p);
      box.max = box.max.cwiseMax(p);
    }
  }
  return box;
}

template <typename Scalar>
Point2<Scalar> Centroid(const Ring<Scalar>& ring) {
  const Scalar area = SignedArea(ring);
  Point2<Scalar> c = Point2<Scalar>::Zero();
  if (area == Scalar(0)) {
    for (const auto& p : ring) c += p;
    return c / static_cast<Scalar>(ring.size());
  }
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % n];
    c += (a + b) * Cross<Scalar>(a, b);
  }
  return c / (Scalar(6) * area);
}

// Reverses the ring if its orientation disagrees with `counter_clockwise`.
template <typename Scalar>
void Orient(Ring<Scalar>& ring, bool counter_clockwise) {
  const Scalar a = SignedArea(ring);
  if ((a < 0 && counter_clockwise) || (a > 0 && !counter_clockwise)) {
    std::reverse(ring.begin(), ring.end());
  }
}

// Winding number of p with respect to all rings (Sunday's crossing rule).
template <typename Scalar>
int WindingNumber(const Polygon<Scalar>& polygon, const Point2<Scalar>& p) {
  int wn = 0;
  for (const auto& ring : polygon) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = ring[i];
      const auto& b = ring[(i + 1) % n];
      if (a.y() <= p.y()) {
        if (b.y() > p.y() && Orient<Scalar>(a, b, p) > 0) ++wn;
      } else if (b.y() <= p.y() && Orient<Scalar>(a, b, p) < 0) {
        --wn;
      }
    }
  }
  return wn;
}

template <typename Scalar>
Scalar SegmentDistance(const Point2<Scalar>& p, const Point2<Scalar>& a,
                       const Point2<Scalar>& b) {
  const Point2<Scalar> ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  Scalar t = len2 > 0 ? (p - a).dot(ab) / len2 : Scalar(0);
  t = std::clamp(t, Scalar(0), Scalar(1));
  return (a + t * ab - p).norm();
}

template <typename Scalar>
Scalar BoundaryDistance(const Polygon<Scalar>& polygon,
                        const Point2<Scalar>& p) {
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (const auto& ring : polygon) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      best = std::min(best, SegmentDistance<Scalar>(p, ring[i], ring[(i + 1) % n]));
    }
  }
  return best;
}

// Sutherland-Hodgman step: keeps the part of `ring` where
// normal . p <= offset. The winding number of the result equals the winding
// number of the input inside the half-plane and zero outside it.
template <typename Scalar>
Ring<Scalar> ClipHalfPlane(const Ring<Scalar>& ring,
                           const Point2<Scalar>& normal, Scalar offset) {
  Ring<Scalar> out;
  const std::size_t n = ring.size();
  if (n == 0) return out;
  out.reserve(n + 4);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = ring[i];
    const auto& q = ring[(i + 1) % n];
    const Scalar sp = normal.dot(p) - offset;
    const Scalar sq = normal.dot(q) - offset;
    if (sp <= 0) {
      out.push_back(p);
      if (sq > 0) out.push_back(p + (q - p) * (sp / (sp - sq)));
    } else if (sq <= 0) {
      out.push_back(p + (q - p) * (sp / (sp - sq)));
    }
  }
  if (out.size() < 3) out.clear();
  return out;
}

// Clips against a convex, counter-clockwise window.
template <typename Scalar>
Ring<Scalar> ClipConvex(Ring<Scalar> ring, const Ring<Scalar>& window) {
  const std::size_t m = window.size();
  for (std::size_t i = 0; i < m && !ring.empty(); ++i) {
    const auto& a = window[i];
    const auto& b = window[(i + 1) % m];
    // Outward normal of a counter-clockwise edge.
    const Point2<Scalar> normal(b.y() - a.y(), a.x() - b.x());
    ring = ClipHalfPlane<Scalar>(ring, normal, normal.dot(a));
  }
  return ring;
}

template <typename Scalar>
Polygon<Scalar> ClipConvex(const Polygon<Scalar>& polygon,
                           const Ring<Scalar>& window) {
  Polygon<Scalar> out;
  for (const auto& ring : polygon) {
    auto clipped = ClipConvex<Scalar>(ring, window);
    if (!clipped.empty()) out.push_back(std::move(clipped));
  }
  return out;
}

// Area of the overlap of two winding-number regions, without validation.
//
// Each ring of `b` is fanned into signed triangles from its first vertex;
// the winding number of the ring is the signed sum of the triangle
// indicators, so the overlap is the signed sum of `a` clipped to each
// triangle.
template <typename Scalar>
Scalar OverlapArea(const Polygon<Scalar>& a, const Polygon<Scalar>& b) {
  Scalar total = 0;
  Ring<Scalar> tri(3);
  for (const auto& ring : b) {
    const std::size_t n = ring.size();
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const Scalar orient = Orient<Scalar>(ring[0], ring[k], ring[k + 1]);
      if (orient == Scalar(0)) continue;
      tri[0] = ring[0];
      tri[1] = orient > 0 ? ring[k] : ring[k + 1];
      tri[2] = orient > 0 ? ring[k + 1] : ring[k];
      Scalar piece = 0;
      for (const auto& ra : a) {
        piece += SignedArea(ClipConvex<Scalar>(ra, tri));
      }
      total += orient > 0 ? piece : -piece;
    }
  }
  return total;
}

namespace internal {

template <typename Scalar>
bool OnSegment(const Point2<Scalar>& a, const Point2<Scalar>& b,
               const Point2<Scalar>& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

template <typename Scalar>
int Sign(Scalar v) {
  return (v > 0) - (v < 0);
}

}  // namespace internal

// Closed-segment intersection test, including touching and collinear overlap.
template <typename Scalar>
bool SegmentsIntersect(const Point2<Scalar>& p1, const Point2<Scalar>& p2,
                       const Point2<Scalar>& q1, const Point2<Scalar>& q2) {
  using internal::OnSegment;
  using internal::Sign;
  const int d1 = Sign(Orient<Scalar>(q1, q2, p1));
  const int d2 = Sign(Orient<Scalar>(q1, q2, p2));
  const int d3 = Sign(Orient<Scalar>(p1, p2, q1));
  const int d4 = Sign(Orient<Scalar>(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && OnSegment<Scalar>(q1, q2, p1)) return true;
  if (d2 == 0 && OnSegment<Scalar>(q1, q2, p2)) return true;
  if (d3 == 0 && OnSegment<Scalar>(p1, p2, q1)) return true;
  if (d4 == 0 && OnSegment<Scalar>(p1, p2, q2)) return true;
  return false;
}

// A ring is simple when it has at least three distinct vertices, non-zero
// area and no two non-adjacent edges touch.
template <typename Scalar>
bool IsSimple(const Ring<Scalar>& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (ring[i] == ring[(i + 1) % n]) return false;
  }
  if (SignedArea(ring) == Scalar(0)) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a1 = ring[i];
    const auto& a2 = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges may only share their common vertex.
        const auto& shared = (j == i + 1) ? a2 : a1;
        const auto& other_a = (j == i + 1) ? a1 : a2;
        const auto& b1 = ring[j];
        const auto& b2 = ring[(j + 1) % n];
        const auto& other_b = (b1 == shared) ? b2 : b1;
        if (Orient<Scalar>(other_a, shared, other_b) == Scalar(0) &&
            (other_b - shared).dot(other_a - shared) > 0) {
          return false;  // folds back on itself
        }
        continue;
      }
      if (SegmentsIntersect<Scalar>(a1, a2, ring[j], ring[(j + 1) % n])) {
        return false;
      }
    }
  }
  return true;
}

template <typename Scalar>
bool IsSimple(const Polygon<Scalar>& polygon) {
  if (polygon.empty()) return false;
  for (const auto& ring : polygon) {
    if (!IsSimple(ring)) return false;
  }
  // Rings of one polygon must not cross each other.
  for (std::size_t r = 0; r < polygon.size(); ++r) {
    for (std::size_t s = r + 1; s < polygon.size(); ++s) {
      const auto& ra = polygon[r];
      const auto& rb = polygon[s];
      for (std::size_t i = 0; i < ra.size(); ++i) {
        for (std::size_t j = 0; j < rb.size(); ++j) {
          if (SegmentsIntersect<Scalar>(ra[i], ra[(i + 1) % ra.size()], rb[j],
                                        rb[(j + 1) % rb.size()])) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace elecxai::geometry

#endif  // ELECXAI_GEOMETRY_HPP_
