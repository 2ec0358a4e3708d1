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

#ifndef LOCUSLAB_POLYNOMIAL_HPP
#define LOCUSLAB_POLYNOMIAL_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "locuslab/types.hpp"

namespace locuslab {

/// Univariate polynomial with complex coefficients stored in ascending
/// degree order (coeffs()[k] is the coefficient of s^k). Trailing zero
/// coefficients are trimmed on construction, so the leading coefficient of a
/// nonzero polynomial is never zero. Immutable after construction.
class Polynomial {
 public:
  /// Zero polynomial.
  Polynomial() : coeffs_{Complex(0.0, 0.0)} {}

  explicit Polynomial(std::vector<Complex> ascending_coeffs);

  /// Monic-times-leading product of (s - r) factors.
  static Polynomial from_roots(const std::vector<Complex>& roots,
                               Complex leading = Complex(1.0, 0.0));

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Complex(0.0, 0.0);
  }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex leading() const { return coeffs_.back(); }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex(0.0, 0.0); }

  /// Horner evaluation.
  Complex eval(Complex s) const;

  Polynomial derivative() const;

  /// max_k |a_k|, the coefficient magnitude scale.
  double coeff_scale() const;

  /// Backward-error scale for a residual at point of magnitude |s|:
  /// max|a_k| * max(1, |s|)^degree.
  double residual_scale(double abs_s) const;

  /// Synthetic division by (s - point): returns (quotient, remainder) with
  /// *this == quotient * (s - point) + remainder.
  std::pair<Polynomial, Complex> deflate_at(Complex point) const;

  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(Complex scalar) const;

  bool operator==(const Polynomial& rhs) const { return coeffs_ == rhs.coeffs_; }

 private:
  std::vector<Complex> coeffs_;
};

struct RootOptions {
  double tol_root = 1e-9;
  int max_iters = 200;
  double cluster_radius_factor = 1e-6;
};

/// Simultaneous root refinement failed to meet the residual tolerance;
/// carries the best iterates seen and their residuals.
class RootFindingError : public NumericError {
 public:
  RootFindingError(const std::string& what, std::vector<Complex> iterates,
                   std::vector<double> residuals)
      : NumericError(what),
        best_iterates(std::move(iterates)),
        best_residuals(std::move(residuals)) {}

  std::vector<Complex> best_iterates;
  std::vector<double> best_residuals;
};

/// All complex roots, with multiplicity, by the Aberth-Ehrlich simultaneous
/// iteration seeded on a Cauchy-bound circle. Requires degree >= 1.
std::vector<Complex> roots(const Polynomial& p, const RootOptions& opts = {});

struct RootCluster {
  Complex location;
  int multiplicity = 1;
};

/// Greedy transitive clustering of numerically coincident roots; radius
/// factor is relative to max(1, |root|).
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& values,
                                       double radius_factor = 1e-6);

/// Roots of p grouped into multiplicity clusters.
std::vector<RootCluster> clustered_roots(const Polynomial& p, const RootOptions& opts = {});

/// The divided-difference polynomial Q(s) = (f(s) - f(theta)) / (s - theta),
/// of degree deg(f) - 1, by synthetic division. Q(theta) equals f'(theta).
/// Requires degree(f) >= 1.
Polynomial divided_difference(const Polynomial& f, Complex theta);

}  // namespace locuslab

#endif  // LOCUSLAB_POLYNOMIAL_HPP
