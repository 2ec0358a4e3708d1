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

#include "locuslab/locus_tracer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace locuslab {

namespace {

double wrapped_residual(const RationalMap& w, Complex s, double alpha) {
  return wrap_to_principal(w.phase(s) - alpha);
}

/// Newton projection onto the phase condition. Returns the corrected point
/// or nullopt; never moves farther than `leash` in total.
std::optional<Complex> correct(const RationalMap& w, Complex start, double alpha, double tol,
                               int max_iters, double leash) {
  Complex s = start;
  for (int it = 0; it < max_iters; ++it) {
    double r;
    try {
      r = wrapped_residual(w, s, alpha);
    } catch (const std::domain_error&) {
      return std::nullopt;
    }
    if (std::abs(r) <= tol) return s;
    Complex l;
    try {
      l = w.log_derivative(s);
    } catch (const std::domain_error&) {
      return std::nullopt;
    }
    // grad phi = (Im L, Re L); Newton step: -r * grad/|grad|^2.
    const double g2 = std::norm(l);
    if (g2 < 1e-300) return std::nullopt;
    const Complex delta(-r * l.imag() / g2, -r * l.real() / g2);
    s += delta;
    if (std::abs(s - start) > leash) return std::nullopt;
  }
  return std::nullopt;
}

double min_distance(Complex s, const std::vector<RootCluster>& clusters) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : clusters) d = std::min(d, std::abs(s - c.location));
  return d;
}

int nearest_index(Complex s, const std::vector<RootCluster>& clusters) {
  int best = -1;
  double dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < int(clusters.size()); ++i) {
    const double d = std::abs(s - clusters[std::size_t(i)].location);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return best;
}

LocusPoint make_point(const RationalMap& w, Complex s, double alpha) {
  return LocusPoint{s, w.gain(s), phase_distance(w.phase(s), alpha)};
}

}  // namespace

TraceOptions TraceOptions::defaults_for(const RationalMap& w) {
  TraceOptions opts;
  const double scale = w.scene_scale();
  opts.eps = 1e-3 * scale;
  opts.h_init = 1e-2 * scale;
  opts.singular_radius = 1e-3 * scale;
  opts.bbox = BBox::centered_square(Complex(0, 0), 2.0 * scale);
  return opts;
}

std::vector<TraceSeed> seed_points(const RationalMap& w, double alpha, double eps,
                                   const TraceOptions& opts) {
  if (eps <= 0.0) throw std::invalid_argument("seed_points: eps must be positive");

  // eps must stay below half the minimum spacing of the locus endpoints.
  std::vector<Complex> endpoints;
  for (const auto& z : w.zeros()) endpoints.push_back(z.location);
  for (const auto& p : w.poles()) endpoints.push_back(p.location);
  for (std::size_t i = 0; i < endpoints.size(); ++i)
    for (std::size_t j = i + 1; j < endpoints.size(); ++j) {
      const double d = std::abs(endpoints[i] - endpoints[j]);
      if (eps >= d / 2.0)
        throw std::invalid_argument(
            "seed_points: eps is not below half the minimum zero/pole spacing");
    }

  std::vector<TraceSeed> seeds;
  for (int pi = 0; pi < int(w.poles().size()); ++pi) {
    const RootCluster& pole = w.poles()[std::size_t(pi)];
    const int beta = pole.multiplicity;

    // Leading coefficient of the Laurent expansion: C = lim (s-p)^beta W(s),
    // by deflating the pole factor out of the denominator.
    Polynomial den_deflated = w.den();
    int removed = 0;
    // The pole may be a net pole left by a removable cancellation; deflate
    // the full denominator multiplicity and restore the numerator part.
    Polynomial num_deflated = w.num();
    for (const auto& rp : w.removable_points())
      if (std::abs(rp.location - pole.location) <= 1e-6 * std::max(1.0, std::abs(pole.location))) {
        num_deflated = rp.num_deflated;
        den_deflated = rp.den_deflated;
        removed = rp.den_multiplicity - rp.num_multiplicity;
      }
    if (removed == 0) {
      for (int k = 0; k < beta; ++k) den_deflated = den_deflated.deflate_at(pole.location).first;
    } else {
      for (int k = removed; k < beta; ++k)
        den_deflated = den_deflated.deflate_at(pole.location).first;
    }
    const Complex c_p = num_deflated.eval(pole.location) / den_deflated.eval(pole.location);

    // arg W ~ arg C - beta * arg(s - p) near the pole; solve for the branch
    // angles where the phase condition holds.
    for (int k = 0; k < beta; ++k) {
      const double psi = (std::arg(c_p) - alpha + kTwoPi * k) / beta;
      const Complex raw = pole.location + eps * Complex(std::cos(psi), std::sin(psi));
      const auto corrected =
          correct(w, raw, alpha, opts.corrector_tol, opts.max_corrector_iters, eps);
      if (!corrected)
        throw TraceError(
            "seed_points: seed corrector diverged; eps is too large for this map");
      seeds.push_back(TraceSeed{*corrected, pi, k});
    }
  }
  return seeds;
}

LocusTrace trace_locus(const RationalMap& w, double alpha, const TraceSeed& seed,
                       const TraceOptions& opts) {
  LocusTrace trace;
  trace.alpha = alpha;
  if (seed.pole_index >= 0) trace.origin = seed;

  const auto start =
      correct(w, seed.point, alpha, opts.corrector_tol, opts.max_corrector_iters,
              std::max(opts.eps, 4.0 * opts.h_init));
  if (!start)
    throw TraceError("trace_locus: seed does not satisfy the phase condition");

  Complex s = *start;
  trace.points.push_back(make_point(w, s, alpha));

  double h = opts.h_init;
  for (int step = 0; step < opts.max_steps; ++step) {
    Complex l;
    try {
      l = w.log_derivative(s);
    } catch (const std::domain_error&) {
      trace.terminus = Terminus::kTruncated;
      trace.diagnostic = "tangent undefined (zero/pole/removable hit)";
      break;
    }
    const double lmag = std::abs(l);
    if (lmag < 1e-300) {
      trace.terminus = Terminus::kTruncated;
      trace.diagnostic = "landed on a saddle point of the phase field";
      break;
    }
    // Tangent along which log-gain increases: (-Re L, Im L)/|L|.
    const Complex tau(-l.real() / lmag, l.imag() / lmag);

    const bool near_saddle = min_distance(s, w.saddle_points()) <= opts.singular_radius;

    // Limit the phase-field rotation per step; near a saddle creep across
    // with small fixed steps instead of branching.
    double h_step = std::min(h, opts.turn_budget / lmag);
    if (near_saddle) h_step = std::min(h_step, std::max(opts.singular_radius / 2, opts.h_min));
    h_step = std::max(h_step, opts.h_min);

    const Complex predicted = s + h_step * tau;
    const auto corrected = correct(w, predicted, alpha, opts.corrector_tol,
                                   opts.max_corrector_iters, 2.0 * h_step);
    if (!corrected || std::abs(*corrected - s) > 3.0 * h_step) {
      if (h <= opts.h_min * (1.0 + 1e-12) && h_step <= opts.h_min * (1.0 + 1e-12)) {
        trace.terminus = Terminus::kTruncated;
        trace.diagnostic = near_saddle
                               ? "corrector failed at minimum step near a saddle point"
                               : "corrector failed at minimum step";
        break;
      }
      h = std::max(h / 2.0, opts.h_min);
      continue;
    }

    s = *corrected;
    trace.h_last = std::abs(s - trace.points.back().s);
    trace.points.push_back(make_point(w, s, alpha));
    if (min_distance(s, w.saddle_points()) <= opts.singular_radius)
      trace.saddle_annotations.push_back(int(trace.points.size()) - 1);
    h = std::min(h * 1.3, opts.h_init);

    const double g = trace.points.back().gain;
    if (g >= opts.gain_cap) {
      trace.terminus = Terminus::kZero;
      trace.terminus_zero_index = nearest_index(s, w.zeros());
      trace.terminus_zero_distance =
          trace.terminus_zero_index >= 0
              ? std::abs(s - w.zeros()[std::size_t(trace.terminus_zero_index)].location)
              : std::numeric_limits<double>::infinity();
      break;
    }
    if (!opts.bbox.contains(s)) {
      trace.terminus = Terminus::kBBoxExit;
      break;
    }
  }

  if (trace.points.size() >= 2) {
    const MonotoneReport report = verify_monotone_gain(trace);
    trace.monotone_gain = report.pass;
    trace.first_violation = report.first_violation;
  }
  return trace;
}

std::vector<LocusTrace> trace_all(const RationalMap& w, double alpha,
                                  const TraceOptions& opts) {
  std::vector<LocusTrace> traces;
  for (const TraceSeed& seed : seed_points(w, alpha, opts.eps, opts))
    traces.push_back(trace_locus(w, alpha, seed, opts));
  return traces;
}

MonotoneReport verify_monotone_gain(const LocusTrace& trace) {
  if (trace.points.size() < 2)
    throw std::invalid_argument("verify_monotone_gain: trace needs at least 2 points");
  MonotoneReport report;
  for (std::size_t i = 1; i < trace.points.size(); ++i) {
    const double prev = trace.points[i - 1].gain;
    const double cur = trace.points[i].gain;
    if (cur < prev - 1e-9 * (1.0 + prev)) {
      if (report.pass) report.first_violation = int(i);
      report.pass = false;
      report.violation_count += 1;
    }
  }
  return report;
}

}  // namespace locuslab
