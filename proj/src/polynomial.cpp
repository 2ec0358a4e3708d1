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

#include "locuslab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace locuslab {

Polynomial::Polynomial(std::vector<Complex> ascending_coeffs) : coeffs_(std::move(ascending_coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Complex(0.0, 0.0));
  while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, Complex leading) {
  std::vector<Complex> c{leading};
  for (Complex r : roots) {
    c.push_back(Complex(0.0, 0.0));
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c));
}

Complex Polynomial::eval(Complex s) const {
  Complex acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * s + coeffs_[k];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() == 1) return Polynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * double(k);
  return Polynomial(std::move(d));
}

double Polynomial::coeff_scale() const {
  double m = 0.0;
  for (Complex c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::residual_scale(double abs_s) const {
  return coeff_scale() * std::pow(std::max(1.0, abs_s), degree());
}

std::pair<Polynomial, Complex> Polynomial::deflate_at(Complex point) const {
  if (coeffs_.size() == 1) return {Polynomial(), coeffs_[0]};
  std::vector<Complex> q(coeffs_.size() - 1);
  Complex carry = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    q[k] = carry;
    carry = coeffs_[k] + point * carry;
  }
  return {Polynomial(std::move(q)), carry};
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (is_zero() || rhs.is_zero()) return Polynomial();
  std::vector<Complex> c(coeffs_.size() + rhs.coeffs_.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * rhs.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Complex(0.0, 0.0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) + rhs.coeff(k);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  std::vector<Complex> c(std::max(coeffs_.size(), rhs.coeffs_.size()), Complex(0.0, 0.0));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff(k) - rhs.coeff(k);
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(Complex scalar) const {
  std::vector<Complex> c = coeffs_;
  for (Complex& x : c) x *= scalar;
  return Polynomial(std::move(c));
}

namespace {

// One Ehrlich-Aberth sweep with in-place (Gauss-Seidel) updates. Returns the
// largest correction magnitude.
double aberth_sweep(const Polynomial& p, const Polynomial& dp, std::vector<Complex>& z) {
  const std::size_t n = z.size();
  double max_step = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex pv = p.eval(z[i]);
    if (pv == Complex(0.0, 0.0)) continue;
    Complex dv = dp.eval(z[i]);
    if (dv == Complex(0.0, 0.0)) {
      // Iterate sits on a critical point; nudge off it.
      z[i] += Complex(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
      max_step = std::max(max_step, 2e-8 * (1.0 + std::abs(z[i])));
      continue;
    }
    const Complex w = pv / dv;
    Complex repulsion(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Complex diff = z[i] - z[j];
      if (diff == Complex(0.0, 0.0)) diff = Complex(1e-12, 1e-12) * (1.0 + std::abs(z[i]));
      repulsion += 1.0 / diff;
    }
    Complex denom = 1.0 - w * repulsion;
    if (denom == Complex(0.0, 0.0)) denom = Complex(1e-300, 0.0);
    const Complex step = w / denom;
    z[i] -= step;
    max_step = std::max(max_step, std::abs(step));
  }
  return max_step;
}

}  // namespace

std::vector<Complex> roots(const Polynomial& p, const RootOptions& opts) {
  const int n = p.degree();
  if (n < 1 || p.is_zero())
    throw std::invalid_argument("roots: polynomial must have degree >= 1");
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  // Initial iterates on the Cauchy-bound circle, angles perturbed so that
  // symmetric root configurations do not stall the iteration.
  const Complex an = p.leading();
  double radius = 0.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(p.coeff(k) / an));
  radius = 1.0 + radius;

  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    const double angle = kTwoPi * k / n + kPi / (2.0 * n) + 1e-3 * k / n;
    z[k] = radius * Complex(std::cos(angle), std::sin(angle));
  }

  const Polynomial dp = p.derivative();
  auto residual = [&](Complex r) { return std::abs(p.eval(r)); };
  auto accepted = [&](Complex r) {
    return residual(r) <= opts.tol_root * p.residual_scale(std::abs(r));
  };

  bool all_accepted = false;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const double max_step = aberth_sweep(p, dp, z);
    all_accepted = std::all_of(z.begin(), z.end(), accepted);
    // Keep polishing past the acceptance threshold until the sweep stalls at
    // rounding level; clustered roots converge only linearly.
    double stall = 0.0;
    for (Complex r : z) stall = std::max(stall, 1e-13 * (1.0 + std::abs(r)));
    if (all_accepted && max_step <= stall) break;
  }

  if (!all_accepted) {
    std::vector<double> res(z.size());
    std::transform(z.begin(), z.end(), res.begin(), residual);
    throw RootFindingError("roots: Aberth-Ehrlich iteration did not converge", z, res);
  }

  // Deterministic order.
  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& values, double radius_factor) {
  const std::size_t n = values.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r =
          radius_factor * std::max({1.0, std::abs(values[i]), std::abs(values[j])});
      if (std::abs(values[i] - values[j]) <= r) {
        const int a = find(int(i)), b = find(int(j));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }

  std::vector<RootCluster> clusters;
  std::vector<int> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const int root = find(int(i));
    if (slot[root] < 0) {
      slot[root] = int(clusters.size());
      clusters.push_back({Complex(0.0, 0.0), 0});
    }
    RootCluster& c = clusters[slot[root]];
    c.location += values[i];
    c.multiplicity += 1;
  }
  for (RootCluster& c : clusters) c.location /= double(c.multiplicity);
  std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return clusters;
}

std::vector<RootCluster> clustered_roots(const Polynomial& p, const RootOptions& opts) {
  return cluster_roots(roots(p, opts), opts.cluster_radius_factor);
}

Polynomial divided_difference(const Polynomial& f, Complex theta) {
  if (f.degree() < 1)
    throw std::invalid_argument("divided_difference: polynomial must have degree >= 1");
  const std::size_t n = std::size_t(f.degree());
  std::vector<Complex> b(n);
  b[n - 1] = f.coeff(n);
  for (std::size_t k = n - 1; k >= 1; --k) b[k - 1] = f.coeff(k) + theta * b[k];
  return Polynomial(std::move(b));
}

}  // namespace locuslab
