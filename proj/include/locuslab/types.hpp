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

#ifndef LOCUSLAB_TYPES_HPP
#define LOCUSLAB_TYPES_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace locuslab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduce an angle to the principal branch (-pi, pi].
inline double wrap_to_principal(double x) {
  double y = std::remainder(x, kTwoPi);
  if (y <= -kPi) y += kTwoPi;
  return y;
}

/// Wrap-aware distance between two angles, in [0, pi].
inline double phase_distance(double a, double b) {
  return std::abs(wrap_to_principal(a - b));
}

/// Axis-aligned rectangle in the (sigma, t) plane.
struct BBox {
  double sigma_min = -2.0;
  double sigma_max = 2.0;
  double t_min = -2.0;
  double t_max = 2.0;

  double width() const { return sigma_max - sigma_min; }
  double height() const { return t_max - t_min; }

  bool contains(Complex s) const {
    return s.real() >= sigma_min && s.real() <= sigma_max && s.imag() >= t_min &&
           s.imag() <= t_max;
  }

  bool degenerate() const { return !(sigma_max > sigma_min) || !(t_max > t_min); }

  static BBox centered_square(Complex center, double half_width) {
    return BBox{center.real() - half_width, center.real() + half_width,
                center.imag() - half_width, center.imag() + half_width};
  }
};

/// Chain of (sigma, t) vertices; closed polylines repeat no vertex, the
/// closing edge last->first is implicit.
struct Polyline {
  std::vector<Complex> points;
  bool closed = false;
};

/// Convergence failures of iterative numerics. Input/contract violations use
/// std::invalid_argument / std::domain_error instead.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace locuslab

#endif  // LOCUSLAB_TYPES_HPP
