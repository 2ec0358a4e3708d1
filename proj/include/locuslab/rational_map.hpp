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

#ifndef LOCUSLAB_RATIONAL_MAP_HPP
#define LOCUSLAB_RATIONAL_MAP_HPP

#include <optional>
#include <vector>

#include "locuslab/polynomial.hpp"
#include "locuslab/types.hpp"

namespace locuslab {

/// Principal argument of u + iv in (-pi, pi], by explicit quadrant cases.
/// Throws std::domain_error at the origin.
double principal_phase(double u, double v);

/// Value of a rational map: either a finite complex number or the point at
/// infinity, as an explicit tag so callers must branch.
class WValue {
 public:
  static WValue finite(Complex v) { return WValue(v, false); }
  static WValue at_infinity() { return WValue(Complex(0.0, 0.0), true); }

  bool is_at_infinity() const { return at_infinity_; }
  Complex value() const {
    if (at_infinity_) throw std::domain_error("WValue: value() called on the point at infinity");
    return value_;
  }

 private:
  WValue(Complex v, bool inf) : value_(v), at_infinity_(inf) {}
  Complex value_;
  bool at_infinity_;
};

/// A numerically coincident zero/pole pair of W = N/D. The factor is not
/// cancelled from the coefficients; evaluation takes deflated limits nearby.
struct RemovablePoint {
  Complex location;
  int num_multiplicity = 0;
  int den_multiplicity = 0;
  Polynomial num_deflated;  // N / (s - location)^num_multiplicity
  Polynomial den_deflated;
  WValue limit = WValue::at_infinity();  // lim W(s), s -> location
};

/// Gradient of the phase field of W in the (sigma, t) plane, radians per
/// unit length.
struct PhaseGradient {
  double d_sigma = 0.0;
  double d_t = 0.0;
};

/// W(s) = N(s)/D(s) with cached zero/pole clusters, removable points, and
/// the saddle polynomial of the phase field. Immutable after construction;
/// all operations are const and safe to call concurrently.
class RationalMap {
 public:
  /// hint_removable: points known exactly by the caller to be coincident
  /// zero/pole pairs (e.g. a critical point used to build the denominator).
  /// Coincident clusters are auto-detected as well; hints override the
  /// cluster centroid with the exact location.
  RationalMap(Polynomial num, Polynomial den,
              std::vector<Complex> hint_removable = {},
              const RootOptions& root_opts = {});

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  /// Zeros/poles after removable cancellation, with net multiplicities.
  const std::vector<RootCluster>& zeros() const { return zeros_; }
  const std::vector<RootCluster>& poles() const { return poles_; }
  const std::vector<RemovablePoint>& removable_points() const { return removable_; }

  /// Numerator of the derivative of the reduced map: zeros are the saddle
  /// points of the phase field (where both phase partials vanish).
  const Polynomial& critical_polynomial() const { return critical_; }
  const std::vector<RootCluster>& saddle_points() const { return saddles_; }

  /// max(1, largest |zero|, largest |pole|); sets default geometry scales.
  double scene_scale() const { return scene_scale_; }

  /// N(s)/D(s); AtInfinity at poles, deflated limit at removable points.
  /// Throws std::domain_error on 0/0 at an unrecorded coincident root.
  WValue eval(Complex s) const;

  /// Gain K(s) = 1 / |W(s)|: 0 at poles, +inf at zeros, finite elsewhere
  /// (extended-real, never throws).
  double gain(Complex s) const;

  /// Four-quadrant principal argument of W(s). Throws std::domain_error at
  /// zeros, poles and removable points, where no single phase exists.
  double phase(Complex s) const;

  /// W'(s)/W(s) = N'/N - D'/D, evaluated without forming W' coefficients;
  /// uses the deflated representation near removable points. Throws
  /// std::domain_error at zeros and poles.
  Complex log_derivative(Complex s) const;

  /// (d phi/d sigma, d phi/d t) = (Im, Re) of W'(s)/W(s).
  PhaseGradient phase_gradient(Complex s) const;

 private:
  const RemovablePoint* nearest_removable(Complex s, double radius) const;

  Polynomial num_, den_;
  Polynomial num_deriv_, den_deriv_;
  std::vector<RootCluster> zeros_, poles_;
  std::vector<RemovablePoint> removable_;
  Polynomial critical_;
  std::vector<RootCluster> saddles_;
  double scene_scale_ = 1.0;
  double cluster_radius_ = 1e-6;
};

}  // namespace locuslab

#endif  // LOCUSLAB_RATIONAL_MAP_HPP
