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

#ifndef LOCUSLAB_LOCUS_TRACER_HPP
#define LOCUSLAB_LOCUS_TRACER_HPP

#include <optional>
#include <string>
#include <vector>

#include "locuslab/rational_map.hpp"
#include "locuslab/types.hpp"

namespace locuslab {

struct TraceOptions {
  BBox bbox;
  double eps = 1e-3;              // seed offset from a pole
  double h_init = 1e-2;           // initial step length
  double h_min = 1e-8;            // smallest step before truncation
  double gain_cap = 1e6;          // reception threshold at a zero
  double corrector_tol = 1e-8;    // phase residual tolerance
  int max_steps = 100000;
  int max_corrector_iters = 12;
  double singular_radius = 1e-3;  // saddle annotation distance
  double seed_gain_threshold = 0.05;
  double turn_budget = 0.4;       // radians of phase change allowed per step

  /// Scene-scaled defaults: eps, h_init and singular_radius proportional to
  /// the zero/pole spread, bbox a centered square of half-width 2x the
  /// scene scale.
  static TraceOptions defaults_for(const RationalMap& w);
};

struct LocusPoint {
  Complex s;
  double gain = 0.0;
  double phase_residual = 0.0;  // wrap-aware distance to the target phase
};

struct TraceSeed {
  Complex point;
  int pole_index = -1;  // index into RationalMap::poles()
  int branch = 0;       // 0..multiplicity-1
};

enum class Terminus {
  kZero,      // gain reached the cap at a zero
  kBBoxExit,  // left the tracing box
  kStepLimit,
  kTruncated,  // corrector failed at the minimum step
};

struct LocusTrace {
  double alpha = 0.0;
  std::vector<LocusPoint> points;
  std::optional<TraceSeed> origin;        // absent for manually seeded traces
  Terminus terminus = Terminus::kStepLimit;
  int terminus_zero_index = -1;           // index into zeros() when kZero
  double terminus_zero_distance = 0.0;
  std::string diagnostic;                 // set when kTruncated
  std::vector<int> saddle_annotations;    // point indices within singular_radius of a saddle
  double h_last = 0.0;                    // last accepted step length

  bool monotone_gain = true;
  int first_violation = -1;
};

struct MonotoneReport {
  bool pass = true;
  int first_violation = -1;
  int violation_count = 0;
};

class TraceError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Seeds on an eps-circle around every pole: a pole of multiplicity beta
/// emits beta branches at the angles where the local phase expansion meets
/// alpha. Each returned seed has been through one corrector pass.
/// Requires eps below half the minimum spacing of distinct zeros/poles.
std::vector<TraceSeed> seed_points(const RationalMap& w, double alpha, double eps,
                                   const TraceOptions& opts);

/// March the constant-phase locus through `seed` in the direction of
/// increasing gain: Euler predictor along the contour tangent, Newton
/// corrector back onto the phase condition, step halving on corrector
/// failure. Ends at a zero (gain cap), the bbox, or the step limit.
LocusTrace trace_locus(const RationalMap& w, double alpha, const TraceSeed& seed,
                       const TraceOptions& opts);

/// Convenience: all branches from all poles.
std::vector<LocusTrace> trace_all(const RationalMap& w, double alpha, const TraceOptions& opts);

/// Strict monotonicity audit of the gain along a trace; a violation is a
/// decrease exceeding 1e-9 * (1 + gain). Requires >= 2 points.
MonotoneReport verify_monotone_gain(const LocusTrace& trace);

}  // namespace locuslab

#endif  // LOCUSLAB_LOCUS_TRACER_HPP
