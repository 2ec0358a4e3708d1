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

#include <doctest.h>

#include <cmath>
#include <random>

#include "locuslab/rational_map.hpp"

using namespace locuslab;

namespace {

Polynomial poly(std::initializer_list<Complex> ascending) {
  return Polynomial(std::vector<Complex>(ascending));
}

const Polynomial kOne = poly({Complex(1, 0)});
const Polynomial kS = poly({Complex(0, 0), Complex(1, 0)});

// (s - 1) / (s + 1)
RationalMap moebius() {
  return RationalMap(poly({Complex(-1, 0), Complex(1, 0)}), poly({Complex(1, 0), Complex(1, 0)}));
}

RationalMap random_map(std::mt19937_64& rng, int max_deg = 6) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto rnd_poly = [&](int deg) {
    std::vector<Complex> c(std::size_t(deg) + 1);
    for (auto& x : c) x = Complex(u(rng), u(rng));
    if (std::abs(c.back()) < 0.2) c.back() += Complex(1.0, 0.5);
    return Polynomial(c);
  };
  const int dn = 1 + int(rng() % unsigned(max_deg));
  const int dd = 1 + int(rng() % unsigned(max_deg));
  return RationalMap(rnd_poly(dn), rnd_poly(dd));
}

// Wrap-aware central finite difference of the phase field.
PhaseGradient fd_phase_gradient(const RationalMap& w, Complex s, double h) {
  const double dsig = wrap_to_principal(w.phase(s + Complex(h, 0)) - w.phase(s - Complex(h, 0)));
  const double dt = wrap_to_principal(w.phase(s + Complex(0, h)) - w.phase(s - Complex(0, h)));
  return PhaseGradient{dsig / (2 * h), dt / (2 * h)};
}

}  // namespace

TEST_CASE("principal_phase matches the quadrant cases and atan2") {
  CHECK(principal_phase(1, 0) == 0.0);
  CHECK(principal_phase(0, 1) == kPi / 2);
  CHECK(principal_phase(-1, 0) == kPi);
  CHECK(principal_phase(0, -1) == -kPi / 2);
  CHECK_THROWS_AS(principal_phase(0, 0), std::domain_error);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    if (a == 0.0 && b == 0.0) continue;
    CHECK(principal_phase(a, b) == doctest::Approx(std::atan2(b, a)).epsilon(1e-14));
  }
}

TEST_CASE("eval closed forms") {
  RationalMap w = moebius();
  CHECK(std::abs(w.eval(Complex(0, 1)).value() - Complex(0, 1)) < 1e-15);

  RationalMap inv(kOne, kS);  // 1/s
  CHECK(inv.eval(Complex(0, 0)).is_at_infinity());

  RationalMap identity_over_itself(kS, kS);  // s/s, removable at 0
  REQUIRE(identity_over_itself.removable_points().size() == 1);
  CHECK(std::abs(identity_over_itself.eval(Complex(0, 0)).value() - Complex(1, 0)) < 1e-12);
}

TEST_CASE("gain at poles, zeros and constants") {
  RationalMap inv(kOne, kS);
  CHECK(inv.gain(Complex(0, 0)) == 0.0);

  RationalMap lin(kS, kOne);
  CHECK(std::isinf(lin.gain(Complex(0, 0))));

  RationalMap two(poly({Complex(2, 0)}), kOne);
  CHECK(two.gain(Complex(5, 3)) == doctest::Approx(0.5));
}

TEST_CASE("gain is the reciprocal modulus at regular points") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    RationalMap w = random_map(rng);
    const Complex s(u(rng), u(rng));
    const WValue v = w.eval(s);
    if (v.is_at_infinity() || v.value() == Complex(0, 0)) continue;
    CHECK(w.gain(s) * std::abs(v.value()) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("phase closed forms and errors") {
  RationalMap lin(kS, kOne);
  CHECK(lin.phase(Complex(0, 1)) == doctest::Approx(kPi / 2));
  CHECK(lin.phase(Complex(-1, 0)) == doctest::Approx(kPi));
  CHECK_THROWS_AS(lin.phase(Complex(0, 0)), std::domain_error);

  RationalMap w = moebius();
  CHECK(w.phase(Complex(0, 1)) == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(w.phase(Complex(-1, 0)), std::domain_error);  // pole
  CHECK_THROWS_AS(w.phase(Complex(1, 0)), std::domain_error);   // zero

  RationalMap rem(kS, kS);
  CHECK_THROWS_AS(rem.phase(Complex(0, 0)), std::domain_error);  // removable
}

TEST_CASE("log derivative closed forms") {
  RationalMap lin(kS, kOne);
  CHECK(std::abs(lin.log_derivative(Complex(1, 0)) - Complex(1, 0)) < 1e-14);

  RationalMap sq(poly({Complex(0, 0), Complex(0, 0), Complex(1, 0)}), kOne);  // s^2
  CHECK(std::abs(sq.log_derivative(Complex(2, 0)) - Complex(1, 0)) < 1e-14);

  RationalMap w = moebius();
  const Complex s(0, 2);
  const Complex expected = 1.0 / (s - 1.0) - 1.0 / (s + 1.0);  // partial fractions
  CHECK(std::abs(w.log_derivative(s) - expected) < 1e-13);

  CHECK_THROWS_AS(w.log_derivative(Complex(1, 0)), std::domain_error);
  CHECK_THROWS_AS(w.log_derivative(Complex(-1, 0)), std::domain_error);
}

TEST_CASE("phase gradient closed forms with finite-difference check") {
  RationalMap lin(kS, kOne);
  PhaseGradient g = lin.phase_gradient(Complex(1, 0));
  CHECK(g.d_sigma == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g.d_t == doctest::Approx(1.0).epsilon(1e-12));
  PhaseGradient fd = fd_phase_gradient(lin, Complex(1, 0), 1e-5);
  CHECK(std::abs(fd.d_sigma - g.d_sigma) <= 1e-6);
  CHECK(std::abs(fd.d_t - g.d_t) <= 1e-6);

  RationalMap two(poly({Complex(2, 0)}), kOne);
  PhaseGradient gc = two.phase_gradient(Complex(0.3, -0.7));
  CHECK(gc.d_sigma == 0.0);
  CHECK(gc.d_t == 0.0);

  RationalMap inv(kOne, kS);
  PhaseGradient gi = inv.phase_gradient(Complex(1, 0));
  CHECK(gi.d_sigma == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(gi.d_t == doctest::Approx(-1.0).epsilon(1e-12));
  PhaseGradient fdi = fd_phase_gradient(inv, Complex(1, 0), 1e-5);
  CHECK(std::abs(fdi.d_t - gi.d_t) <= 1e-6);
}

TEST_CASE("gradient identity on random maps") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int tested = 0;
  while (tested < 1000) {
    RationalMap w = random_map(rng);
    const Complex s(u(rng), u(rng));

    // Keep clear of singular points and of saddle zeros so that the analytic
    // magnitude is a meaningful yardstick for the relative error.
    bool ok = true;
    for (const auto& z : w.zeros()) ok &= std::abs(s - z.location) >= 0.1;
    for (const auto& p : w.poles()) ok &= std::abs(s - p.location) >= 0.1;
    for (const auto& c : w.saddle_points()) ok &= std::abs(s - c.location) >= 0.1;
    if (!ok) continue;
    const Complex l = w.log_derivative(s);
    if (std::abs(l) < 0.1) continue;

    const PhaseGradient g = w.phase_gradient(s);
    const PhaseGradient fd = fd_phase_gradient(w, s, 1e-5);
    const double mag = std::hypot(g.d_sigma, g.d_t);
    CHECK(std::abs(g.d_sigma - fd.d_sigma) <= 1e-5 * mag);
    CHECK(std::abs(g.d_t - fd.d_t) <= 1e-5 * mag);
    ++tested;
  }
}

TEST_CASE("gradient components vanish simultaneously only on the saddle polynomial") {
  // W with a saddle: num and den chosen so N'D - D'N has roots away from
  // zeros/poles.
  RationalMap w(poly({Complex(-1, 0), Complex(0, 0), Complex(1, 0)}),  // s^2 - 1
                poly({Complex(0, 0), Complex(1, 0)}));                 // s
  // N'D - D'N = 2s*s - (s^2-1) = s^2 + 1 -> saddles at +-i.
  REQUIRE(w.saddle_points().size() == 2);

  for (const auto& c : w.saddle_points()) {
    const Complex l = w.log_derivative(c.location);
    CHECK(std::abs(l.real()) <= 1e-9);
    CHECK(std::abs(l.imag()) <= 1e-9);
    CHECK(std::abs(w.critical_polynomial().eval(c.location)) <= 1e-9);
  }

  // Away from the saddle polynomial roots the gradient never fully vanishes.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int tested = 0;
  while (tested < 1000) {
    const Complex s(u(rng), u(rng));
    bool ok = true;
    for (const auto& z : w.zeros()) ok &= std::abs(s - z.location) >= 0.1;
    for (const auto& p : w.poles()) ok &= std::abs(s - p.location) >= 0.1;
    for (const auto& c : w.saddle_points()) ok &= std::abs(s - c.location) >= 0.1;
    if (!ok) continue;
    const PhaseGradient g = w.phase_gradient(s);
    CHECK(std::max(std::abs(g.d_sigma), std::abs(g.d_t)) > 0.0);
    ++tested;
  }
}

TEST_CASE("removable point bookkeeping keeps coefficients intact") {
  // W = 2s/s: the coincident factor is recorded, not cancelled.
  RationalMap w(poly({Complex(0, 0), Complex(2, 0)}), kS);
  CHECK(w.num().degree() == 1);
  CHECK(w.den().degree() == 1);
  REQUIRE(w.removable_points().size() == 1);
  CHECK(w.zeros().empty());
  CHECK(w.poles().empty());
  CHECK(std::abs(w.eval(Complex(0, 0)).value() - Complex(2, 0)) < 1e-12);
  CHECK(std::abs(w.eval(Complex(1e-7, 0)).value() - Complex(2, 0)) < 1e-9);

  // Net pole when the denominator multiplicity is higher: s / s^2.
  RationalMap npole(kS, poly({Complex(0, 0), Complex(0, 0), Complex(1, 0)}));
  REQUIRE(npole.removable_points().size() == 1);
  REQUIRE(npole.poles().size() == 1);
  CHECK(npole.poles()[0].multiplicity == 1);
  CHECK(npole.eval(Complex(0, 0)).is_at_infinity());
}

TEST_CASE("scene scale covers zeros and poles") {
  RationalMap w = moebius();
  CHECK(w.scene_scale() == doctest::Approx(1.0));
  RationalMap big(poly({Complex(-3, 0), Complex(1, 0)}), kS);  // zero at 3
  CHECK(big.scene_scale() == doctest::Approx(3.0));
}
