/*
   Copyright 2026 The locuslab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef LOCUSLAB_TESTS_SUPPORT_HPP
#define LOCUSLAB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "locuslab/types.hpp"

namespace locuslab::testsupport {

inline double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

inline double point_polylines_distance(Complex p, const std::vector<Polyline>& polylines) {
  double best = std::numeric_limits<double>::infinity();
  for (const Polyline& poly : polylines) {
    const auto& pts = poly.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      best = std::min(best, point_segment_distance(p, pts[i], pts[i + 1]));
    if (poly.closed && pts.size() >= 2)
      best = std::min(best, point_segment_distance(p, pts.back(), pts.front()));
  }
  return best;
}

/// max over vertices of `from` of the distance to the polylines of `to`.
inline double directed_polyline_deviation(const std::vector<Polyline>& from,
                                          const std::vector<Polyline>& to) {
  double worst = 0.0;
  for (const Polyline& poly : from)
    for (Complex p : poly.points) worst = std::max(worst, point_polylines_distance(p, to));
  return worst;
}

inline double symmetric_hausdorff(const std::vector<Polyline>& a,
                                  const std::vector<Polyline>& b) {
  return std::max(directed_polyline_deviation(a, b), directed_polyline_deviation(b, a));
}

/// Even-odd rule over a set of closed polylines.
inline bool point_in_polylines(Complex p, const std::vector<Polyline>& polylines) {
  bool inside = false;
  for (const Polyline& poly : polylines) {
    const auto& pts = poly.points;
    const std::size_t n = pts.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const double yi = pts[i].imag(), yj = pts[j].imag();
      const double xi = pts[i].real(), xj = pts[j].real();
      if ((yi > p.imag()) != (yj > p.imag()) &&
          p.real() < (xj - xi) * (p.imag() - yi) / (yj - yi) + xi)
        inside = !inside;
    }
  }
  return inside;
}

}  // namespace locuslab::testsupport

#endif  // LOCUSLAB_TESTS_SUPPORT_HPP
