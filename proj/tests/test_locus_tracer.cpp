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
#include <future>
#include <random>

#include "locuslab/field_scanner.hpp"
#include "locuslab/locus_tracer.hpp"
#include "support.hpp"

using namespace locuslab;
using namespace locuslab::testsupport;

namespace {

Polynomial poly(std::initializer_list<Complex> ascending) {
  return Polynomial(std::vector<Complex>(ascending));
}

const Polynomial kOne = poly({Complex(1, 0)});
const Polynomial kS = poly({Complex(0, 0), Complex(1, 0)});

RationalMap moebius() {
  return RationalMap(poly({Complex(-1, 0), Complex(1, 0)}), poly({Complex(1, 0), Complex(1, 0)}));
}

// Map with known, well-separated zeros and poles inside |s| <= 1.5.
RationalMap random_separated_map(std::mt19937_64& rng, int max_poles = 5) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const int n_poles = 2 + int(rng() % unsigned(max_poles - 1));
  const int n_zeros = 1 + int(rng() % unsigned(n_poles - 1));
  std::vector<Complex> pts;
  while (int(pts.size()) < n_poles + n_zeros) {
    const Complex c(u(rng), u(rng));
    bool ok = true;
    for (Complex q : pts) ok &= std::abs(c - q) >= 0.3;
    if (ok) pts.push_back(c);
  }
  const std::vector<Complex> zeros(pts.begin(), pts.begin() + n_zeros);
  const std::vector<Complex> poles(pts.begin() + n_zeros, pts.end());
  const double a = angle(rng);
  return RationalMap(Polynomial::from_roots(zeros, Complex(std::cos(a), std::sin(a))),
                     Polynomial::from_roots(poles));
}

std::vector<Polyline> traces_as_polylines(const std::vector<LocusTrace>& traces,
                                          const BBox* clip) {
  std::vector<Polyline> out;
  for (const auto& trace : traces) {
    Polyline poly;
    for (const auto& pt : trace.points)
      if (clip == nullptr || clip->contains(pt.s)) poly.points.push_back(pt.s);
    if (poly.points.size() >= 2) out.push_back(std::move(poly));
  }
  return out;
}

}  // namespace

TEST_CASE("seed_points closed forms") {
  RationalMap inv(kOne, kS);  // 1/s
  TraceOptions opts = TraceOptions::defaults_for(inv);
  auto seeds = seed_points(inv, kPi, opts.eps, opts);
  REQUIRE(seeds.size() == 1);
  CHECK(seeds[0].point.real() < 0.0);                     // negative real axis
  CHECK(std::abs(seeds[0].point.imag()) <= 1e-12);
  CHECK(std::abs(std::abs(seeds[0].point) - opts.eps) <= 1e-6);

  // Double pole: two branches at angles 0 and pi.
  RationalMap inv2(kOne, poly({Complex(0, 0), Complex(0, 0), Complex(1, 0)}));
  auto seeds2 = seed_points(inv2, 0.0, opts.eps, opts);
  REQUIRE(seeds2.size() == 2);
  CHECK(std::abs(std::arg(seeds2[0].point)) <= 1e-9);
  CHECK(std::abs(std::abs(std::arg(seeds2[1].point)) - kPi) <= 1e-9);
}

TEST_CASE("seed for the Moebius map matches a brute-force phase scan") {
  RationalMap w = moebius();
  TraceOptions opts = TraceOptions::defaults_for(w);
  auto seeds = seed_points(w, kPi / 2, opts.eps, opts);
  REQUIRE(seeds.size() == 1);
  CHECK(seeds[0].point.imag() > 0.0);  // upper half plane
  CHECK(std::abs(seeds[0].point - Complex(-1, 0)) <= 2 * opts.eps);

  // Oracle: scan the eps-circle around the pole for the phase minimum.
  const Complex pole(-1, 0);
  double best_dist = 1e300;
  Complex best;
  for (int k = 0; k < 20000; ++k) {
    const double a = kTwoPi * k / 20000;
    const Complex s = pole + opts.eps * Complex(std::cos(a), std::sin(a));
    const double d = phase_distance(w.phase(s), kPi / 2);
    if (d < best_dist) {
      best_dist = d;
      best = s;
    }
  }
  CHECK(std::abs(best - seeds[0].point) <= 1e-3 * opts.eps + 2 * kPi * opts.eps / 20000);
}

TEST_CASE("seed_points rejects eps above half the endpoint spacing") {
  RationalMap w = moebius();  // zero at 1, pole at -1, spacing 2
  TraceOptions opts = TraceOptions::defaults_for(w);
  CHECK_THROWS_AS(seed_points(w, 0.0, 1.1, opts), std::invalid_argument);
}

TEST_CASE("trace of 1/s at alpha=pi runs along the negative real axis") {
  RationalMap inv(kOne, kS);
  TraceOptions opts = TraceOptions::defaults_for(inv);
  auto traces = trace_all(inv, kPi, opts);
  REQUIRE(traces.size() == 1);
  const LocusTrace& trace = traces[0];
  CHECK(trace.terminus == Terminus::kBBoxExit);
  REQUIRE(trace.points.size() > 10);
  for (const auto& pt : trace.points) {
    CHECK(std::abs(pt.s.imag()) <= 1e-8);
    CHECK(pt.s.real() < 0.0);
    CHECK(pt.phase_residual <= opts.corrector_tol);
    CHECK(pt.gain == doctest::Approx(std::abs(pt.s)).epsilon(1e-9));
  }
  CHECK(verify_monotone_gain(trace).pass);
  CHECK(trace.monotone_gain);
}

TEST_CASE("trace of the Moebius map at pi/2 is the upper unit arc, pole to zero") {
  RationalMap w = moebius();
  TraceOptions opts = TraceOptions::defaults_for(w);
  auto traces = trace_all(w, kPi / 2, opts);
  REQUIRE(traces.size() == 1);
  const LocusTrace& trace = traces[0];

  CHECK(std::abs(trace.points.front().s - Complex(-1, 0)) <= 1e-3);
  CHECK(trace.points.front().gain <= opts.seed_gain_threshold);
  CHECK(trace.terminus == Terminus::kZero);
  CHECK(trace.points.back().gain >= opts.gain_cap);
  CHECK(std::abs(trace.points.back().s - Complex(1, 0)) <= 1e-3);
  CHECK(trace.terminus_zero_index == 0);

  for (const auto& pt : trace.points) {
    CHECK(std::abs(std::abs(pt.s) - 1.0) <= 1e-6);  // on the unit circle
    CHECK(pt.s.imag() >= -1e-9);                    // upper arc
    CHECK(pt.phase_residual <= opts.corrector_tol);
  }
  CHECK(trace.monotone_gain);
}

TEST_CASE("manual seed: W=s traced inward to its zero") {
  RationalMap lin(kS, kOne);
  TraceOptions opts = TraceOptions::defaults_for(lin);
  TraceSeed seed{Complex(1.9, 0.0), -1, 0};
  LocusTrace trace = trace_locus(lin, 0.0, seed, opts);
  CHECK(!trace.origin.has_value());
  CHECK(trace.terminus == Terminus::kZero);
  CHECK(std::abs(trace.points.back().s) <= 1e-3);
  for (const auto& pt : trace.points) {
    CHECK(std::abs(pt.s.imag()) <= 1e-8);
    CHECK(pt.gain == doctest::Approx(1.0 / std::abs(pt.s)).epsilon(1e-9));
  }
  CHECK(trace.monotone_gain);
}

TEST_CASE("verify_monotone_gain flags a reversed trace at index 1") {
  RationalMap inv(kOne, kS);
  TraceOptions opts = TraceOptions::defaults_for(inv);
  LocusTrace trace = trace_all(inv, kPi, opts)[0];
  LocusTrace reversed = trace;
  std::reverse(reversed.points.begin(), reversed.points.end());
  const MonotoneReport report = verify_monotone_gain(reversed);
  CHECK_FALSE(report.pass);
  CHECK(report.first_violation == 1);
  CHECK(report.violation_count == int(reversed.points.size()) - 1);

  LocusTrace two_points = trace;
  two_points.points.resize(1);
  CHECK_THROWS_AS(verify_monotone_gain(two_points), std::invalid_argument);
}

TEST_CASE("traced loci match the brute-force phase scan") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 3; ++i) {
    RationalMap w = random_separated_map(rng, 4);
    std::uniform_real_distribution<double> ua(-kPi, kPi);
    const double alpha = ua(rng);

    TraceOptions opts = TraceOptions::defaults_for(w);
    const BBox scan_box = opts.bbox;
    opts.bbox = BBox::centered_square(Complex(0, 0), 4.0 * w.scene_scale());

    const int n = 257;
    const auto scan = phase_level_scan(w, alpha, scan_box, n, n);
    const auto traces = trace_all(w, alpha, opts);
    REQUIRE(!traces.empty());

    const auto clipped = traces_as_polylines(traces, &scan_box);
    const auto full = traces_as_polylines(traces, nullptr);
    const double cell = std::max(scan_box.width(), scan_box.height()) / (n - 1);
    const double hausdorff = std::max(directed_polyline_deviation(clipped, scan),
                                      directed_polyline_deviation(scan, full));
    CHECK(hausdorff <= 2.0 * cell);
  }
}

TEST_CASE("gain monotone along traces of random maps away from saddles") {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 20; ++i) {
    RationalMap w = random_separated_map(rng, 6);
    std::uniform_real_distribution<double> ua(-kPi, kPi);
    const double alpha = ua(rng);
    TraceOptions opts = TraceOptions::defaults_for(w);
    for (const LocusTrace& trace : trace_all(w, alpha, opts)) {
      if (trace.points.size() < 2) continue;
      const MonotoneReport report = verify_monotone_gain(trace);
      if (report.pass) continue;
      // Violations are tolerated only within the singular radius of a saddle
      // and must be annotated, never dropped.
      for (std::size_t k = 1; k < trace.points.size(); ++k) {
        const double prev = trace.points[k - 1].gain;
        if (trace.points[k].gain >= prev - 1e-9 * (1.0 + prev)) continue;
        double dist = 1e300;
        for (const auto& c : w.saddle_points())
          dist = std::min(dist, std::abs(trace.points[k].s - c.location));
        CHECK(dist <= opts.singular_radius);
        const auto& ann = trace.saddle_annotations;
        const bool annotated =
            std::find(ann.begin(), ann.end(), int(k)) != ann.end() ||
            std::find(ann.begin(), ann.end(), int(k) - 1) != ann.end();
        CHECK(annotated);
      }
    }
  }
}

TEST_CASE("reception and origination bookkeeping") {
  std::mt19937_64 rng(303);
  for (int i = 0; i < 10; ++i) {
    RationalMap w = random_separated_map(rng, 4);
    TraceOptions opts = TraceOptions::defaults_for(w);
    for (const LocusTrace& trace : trace_all(w, 1.0, opts)) {
      REQUIRE(trace.origin.has_value());
      const Complex pole = w.poles()[std::size_t(trace.origin->pole_index)].location;
      CHECK(std::abs(trace.points.front().s - pole) <= 2 * opts.eps);
      CHECK(trace.points.front().gain <= opts.seed_gain_threshold);
      for (const auto& pt : trace.points) CHECK(pt.phase_residual <= opts.corrector_tol);
      if (trace.terminus == Terminus::kZero) {
        CHECK(trace.points.back().gain >= opts.gain_cap);
        CHECK(trace.terminus_zero_distance <= 10.0 * std::max(trace.h_last, opts.h_min));
      }
    }
  }
}

TEST_CASE("concurrent traces agree with sequential ones") {
  std::mt19937_64 rng(404);
  RationalMap w = random_separated_map(rng, 5);
  TraceOptions opts = TraceOptions::defaults_for(w);
  const double alpha = 0.7;
  const auto seeds = seed_points(w, alpha, opts.eps, opts);
  const auto sequential = trace_all(w, alpha, opts);

  std::vector<std::future<LocusTrace>> futures;
  for (const TraceSeed& seed : seeds)
    futures.push_back(std::async(std::launch::async,
                                 [&, seed] { return trace_locus(w, alpha, seed, opts); }));
  REQUIRE(futures.size() == sequential.size());
  for (std::size_t i = 0; i < futures.size(); ++i) {
    const LocusTrace concurrent = futures[i].get();
    REQUIRE(concurrent.points.size() == sequential[i].points.size());
    for (std::size_t k = 0; k < concurrent.points.size(); ++k) {
      CHECK(concurrent.points[k].s == sequential[i].points[k].s);
      CHECK(concurrent.points[k].gain == sequential[i].points[k].gain);
    }
  }
}
