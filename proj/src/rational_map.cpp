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

#include "locuslab/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace locuslab {

namespace {

constexpr double kCoincidenceFactor = 1e-6;   // zero/pole pairing radius
constexpr double kHintSnapFactor = 1e-5;      // hint-to-cluster matching radius
constexpr double kDeflatedEvalFactor = 1e-4;  // switch to deflated evaluation
constexpr double kAtPointFactor = 1e-12;      // "exactly at the point"

double local_radius(double factor, Complex at) { return factor * std::max(1.0, std::abs(at)); }

bool finite_value(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

Complex int_power(Complex base, int exponent) {
  if (exponent == 0) return Complex(1.0, 0.0);
  Complex acc(1.0, 0.0);
  Complex b = exponent > 0 ? base : 1.0 / base;
  for (int k = std::abs(exponent); k > 0; --k) acc *= b;
  return acc;
}

Polynomial deflate_times(const Polynomial& p, Complex point, int times) {
  Polynomial q = p;
  for (int k = 0; k < times; ++k) q = q.deflate_at(point).first;
  return q;
}

}  // namespace

double principal_phase(double u, double v) {
  if (u > 0.0 && v >= 0.0) return std::atan(v / u);
  if (u < 0.0 && v >= 0.0) return kPi - std::atan(v / -u);
  if (u < 0.0 && v < 0.0) return std::atan(v / u) - kPi;
  if (u > 0.0 && v < 0.0) return -std::atan(-v / u);
  if (v > 0.0) return kPi / 2.0;
  if (v < 0.0) return -kPi / 2.0;
  throw std::domain_error("principal_phase: argument of 0 is undefined");
}

RationalMap::RationalMap(Polynomial num, Polynomial den, std::vector<Complex> hint_removable,
                         const RootOptions& root_opts)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.is_zero() || den_.is_zero())
    throw std::invalid_argument("RationalMap: numerator and denominator must be nonzero");
  num_deriv_ = num_.derivative();
  den_deriv_ = den_.derivative();

  std::vector<RootCluster> num_clusters, den_clusters;
  if (num_.degree() >= 1)
    num_clusters = cluster_roots(roots(num_, root_opts), root_opts.cluster_radius_factor);
  if (den_.degree() >= 1)
    den_clusters = cluster_roots(roots(den_, root_opts), root_opts.cluster_radius_factor);

  // Pair numerically coincident zero and pole clusters into removable points.
  std::vector<bool> num_used(num_clusters.size(), false), den_used(den_clusters.size(), false);
  for (std::size_t i = 0; i < num_clusters.size(); ++i) {
    for (std::size_t j = 0; j < den_clusters.size(); ++j) {
      if (den_used[j]) continue;
      const Complex z = num_clusters[i].location, p = den_clusters[j].location;
      if (std::abs(z - p) > local_radius(kCoincidenceFactor, z)) continue;

      RemovablePoint rp;
      rp.location = (z + p) / 2.0;
      for (Complex hint : hint_removable)
        if (std::abs(hint - rp.location) <= local_radius(kHintSnapFactor, hint))
          rp.location = hint;
      rp.num_multiplicity = num_clusters[i].multiplicity;
      rp.den_multiplicity = den_clusters[j].multiplicity;
      rp.num_deflated = deflate_times(num_, rp.location, rp.num_multiplicity);
      rp.den_deflated = deflate_times(den_, rp.location, rp.den_multiplicity);
      if (rp.num_multiplicity > rp.den_multiplicity) {
        rp.limit = WValue::finite(Complex(0.0, 0.0));
      } else if (rp.num_multiplicity < rp.den_multiplicity) {
        rp.limit = WValue::at_infinity();
      } else {
        const Complex dv = rp.den_deflated.eval(rp.location);
        rp.limit = dv == Complex(0.0, 0.0)
                       ? WValue::at_infinity()
                       : WValue::finite(rp.num_deflated.eval(rp.location) / dv);
      }
      removable_.push_back(std::move(rp));
      num_used[i] = den_used[j] = true;
      break;
    }
  }

  // Net zeros and poles after cancelling removable factors.
  for (std::size_t i = 0; i < num_clusters.size(); ++i) {
    if (!num_used[i]) {
      zeros_.push_back(num_clusters[i]);
      continue;
    }
    for (const RemovablePoint& rp : removable_)
      if (std::abs(num_clusters[i].location - rp.location) <=
          local_radius(kCoincidenceFactor * 2, rp.location)) {
        const int net = rp.num_multiplicity - rp.den_multiplicity;
        if (net > 0) zeros_.push_back({rp.location, net});
        break;
      }
  }
  for (std::size_t j = 0; j < den_clusters.size(); ++j) {
    if (!den_used[j]) {
      poles_.push_back(den_clusters[j]);
      continue;
    }
    for (const RemovablePoint& rp : removable_)
      if (std::abs(den_clusters[j].location - rp.location) <=
          local_radius(kCoincidenceFactor * 2, rp.location)) {
        const int net = rp.den_multiplicity - rp.num_multiplicity;
        if (net > 0) poles_.push_back({rp.location, net});
        break;
      }
  }

  scene_scale_ = 1.0;
  for (const auto& z : zeros_) scene_scale_ = std::max(scene_scale_, std::abs(z.location));
  for (const auto& p : poles_) scene_scale_ = std::max(scene_scale_, std::abs(p.location));

  // Saddle polynomial of the reduced map: removable factors would otherwise
  // inject spurious double roots into N'D - D'N.
  Polynomial num_red = num_, den_red = den_;
  for (const RemovablePoint& rp : removable_) {
    const int common = std::min(rp.num_multiplicity, rp.den_multiplicity);
    num_red = deflate_times(num_red, rp.location, common);
    den_red = deflate_times(den_red, rp.location, common);
  }
  critical_ = num_red.derivative() * den_red - den_red.derivative() * num_red;
  if (!critical_.is_zero() && critical_.degree() >= 1)
    saddles_ = cluster_roots(roots(critical_, root_opts), root_opts.cluster_radius_factor);
}

const RemovablePoint* RationalMap::nearest_removable(Complex s, double factor) const {
  const RemovablePoint* best = nullptr;
  double best_dist = 0.0;
  for (const RemovablePoint& rp : removable_) {
    const double d = std::abs(s - rp.location);
    if (d <= local_radius(factor, rp.location) && (!best || d < best_dist)) {
      best = &rp;
      best_dist = d;
    }
  }
  return best;
}

WValue RationalMap::eval(Complex s) const {
  if (const RemovablePoint* rp = nearest_removable(s, kDeflatedEvalFactor)) {
    if (std::abs(s - rp->location) <= local_radius(kAtPointFactor, rp->location))
      return rp->limit;
    const Complex dv = rp->den_deflated.eval(s);
    if (dv == Complex(0.0, 0.0)) return WValue::at_infinity();
    const Complex v = int_power(s - rp->location, rp->num_multiplicity - rp->den_multiplicity) *
                      rp->num_deflated.eval(s) / dv;
    return finite_value(v) ? WValue::finite(v) : WValue::at_infinity();
  }

  const Complex nv = num_.eval(s);
  const Complex dv = den_.eval(s);
  if (dv == Complex(0.0, 0.0)) {
    if (std::abs(nv) <= 1e-9 * num_.residual_scale(std::abs(s)))
      throw std::domain_error(
          "RationalMap::eval: 0/0 at an unrecorded coincident root; "
          "register a removable point for this location");
    return WValue::at_infinity();
  }
  const Complex v = nv / dv;
  return finite_value(v) ? WValue::finite(v) : WValue::at_infinity();
}

double RationalMap::gain(Complex s) const {
  const WValue w = eval(s);
  if (w.is_at_infinity()) return 0.0;
  const double m = std::abs(w.value());
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / m;
}

double RationalMap::phase(Complex s) const {
  if (nearest_removable(s, kAtPointFactor))
    throw std::domain_error("RationalMap::phase: undefined at a removable point");
  const WValue w = eval(s);
  if (w.is_at_infinity()) throw std::domain_error("RationalMap::phase: undefined at a pole");
  const Complex v = w.value();
  if (v == Complex(0.0, 0.0)) throw std::domain_error("RationalMap::phase: undefined at a zero");
  return principal_phase(v.real(), v.imag());
}

Complex RationalMap::log_derivative(Complex s) const {
  if (const RemovablePoint* rp = nearest_removable(s, kDeflatedEvalFactor)) {
    const int net = rp->num_multiplicity - rp->den_multiplicity;
    const Complex nv = rp->num_deflated.eval(s);
    const Complex dv = rp->den_deflated.eval(s);
    if (nv == Complex(0.0, 0.0) || dv == Complex(0.0, 0.0))
      throw std::domain_error("RationalMap::log_derivative: undefined at a zero or pole");
    Complex acc = rp->num_deflated.derivative().eval(s) / nv -
                  rp->den_deflated.derivative().eval(s) / dv;
    if (std::abs(s - rp->location) <= local_radius(kAtPointFactor, rp->location)) {
      if (net != 0)
        throw std::domain_error("RationalMap::log_derivative: undefined at a zero or pole");
      return acc;
    }
    return acc + double(net) / (s - rp->location);
  }

  const Complex nv = num_.eval(s);
  if (nv == Complex(0.0, 0.0))
    throw std::domain_error("RationalMap::log_derivative: undefined at a zero");
  const Complex dv = den_.eval(s);
  if (dv == Complex(0.0, 0.0))
    throw std::domain_error("RationalMap::log_derivative: undefined at a pole");
  return num_deriv_.eval(s) / nv - den_deriv_.eval(s) / dv;
}

PhaseGradient RationalMap::phase_gradient(Complex s) const {
  const Complex l = log_derivative(s);
  return PhaseGradient{l.imag(), l.real()};
}

}  // namespace locuslab
