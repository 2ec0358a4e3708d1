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

#ifndef LOCUSLAB_SMALE_HPP
#define LOCUSLAB_SMALE_HPP

#include <cstdint>
#include <vector>

#include "locuslab/field_scanner.hpp"
#include "locuslab/rational_map.hpp"
#include "locuslab/types.hpp"

namespace locuslab {

/// Clustered roots of f', with multiplicities summing to degree(f) - 1.
/// Requires degree(f) >= 2.
std::vector<RootCluster> critical_points(const Polynomial& f);

/// The mean-value quotient |f(s) - f(theta)| / (|s - theta| |f'(s)|),
/// computed as |Q_theta(s)| / |f'(s)| so that s = theta needs no special
/// case. Extended-real: +inf where f'(s) = 0 and the numerator does not
/// vanish; common zeros are resolved by deflated limits.
double smale_quotient(const Polynomial& f, Complex s, Complex theta);

/// The per-critical-point rational map W = f' / Q_theta. When theta is a
/// critical point, both entries vanish there and theta is registered as a
/// removable point of the map. Requires degree(f) >= 2.
RationalMap build_W(const Polynomial& f, Complex theta);

/// lim |W_i(s)| as s -> theta_i, by deflating the common factor; equals
/// multiplicity + 1 analytically. theta must be a critical point of f.
double limit_at_critical_point(const Polynomial& f, Complex theta);

/// A polynomial with its critical points and their quotient maps.
struct SmaleCase {
  Polynomial f;
  std::vector<RootCluster> critical;  // (theta_i, multiplicity)
  std::vector<RationalMap> maps;      // W_i = f'/Q_{theta_i}

  static SmaleCase analyze(const Polynomial& f, const RootOptions& opts = {});
};

/// Connected components of {|W_i| < 1} inside bbox, each annotated with the
/// critical points of f it contains.
std::vector<Region> adjacent_domains(const SmaleCase& smale_case, int i, const BBox& bbox,
                                     int nx, int ny);

struct AuditConfig {
  BBox bbox;
  int nx = 512, ny = 512;
  int n_samples = 1000;
  std::uint64_t seed = 0;

  /// Centered square of half-width 2x the joint scene scale of all W_i.
  static AuditConfig defaults_for(const SmaleCase& smale_case);
};

struct RegionReport {
  int id = 0;
  int cell_count = 0;
  bool touches_border = false;  // clipped by the audit bbox
  std::vector<Complex> contained_critical_points;
  bool contains_w_zero = false;
  bool flagged = false;           // interior region without a zero of W_i
  bool dismissed_at_2x = false;   // flagged region not reproduced at 2x resolution
  std::vector<Polyline> boundary;
};

struct ThetaAudit {
  int index = 0;
  Complex theta;
  int multiplicity = 1;
  double limit_at_theta = 0.0;
  bool theta_in_region = false;  // sampled version of the adjacency claim
  std::vector<RegionReport> regions;
  int regions_without_critical_points = 0;
  std::int64_t inside_samples = 0;
  std::int64_t outside_samples = 0;
  std::int64_t boundary_excluded = 0;
  double quotient_gt1_inside_fraction = -1.0;   // -1 when vacuous
  double quotient_le1_outside_fraction = -1.0;
};

struct Counterexample {
  Complex s;
  int theta_index = 0;
  double quotient = 0.0;
  bool inside_region = false;
};

struct ExtremalResult {
  Complex s;
  double value = 0.0;
};

/// Findings document for the adjacent-domain construction: never asserts the
/// claims, records what the field, the samples and the limits actually show.
struct SmaleAuditReport {
  std::vector<RootCluster> critical;
  std::vector<ThetaAudit> per_theta;
  std::vector<Counterexample> counterexamples;
  ExtremalResult extremal;
  AuditConfig config;
};

SmaleAuditReport audit_theorems(const SmaleCase& smale_case, const AuditConfig& config);

/// Maximize min_i quotient(f, s, theta_i): coarse grid scan followed by a
/// compass pattern search (shrink 0.5, 60 shrink rounds).
ExtremalResult extremal_search(const Polynomial& f, const BBox& bbox, int resolution);

}  // namespace locuslab

#endif  // LOCUSLAB_SMALE_HPP
