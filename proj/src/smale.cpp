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

#include "locuslab/smale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "locuslab/parallel.hpp"

namespace locuslab {

namespace {

constexpr double kTinyFactor = 1e-12;

double effectively_zero_scale(const Polynomial& p, double abs_s) {
  return kTinyFactor * std::max(p.residual_scale(abs_s), 1e-300);
}

/// |q(s)| / |d(s)| with deflated limits at common zeros.
double quotient_of(Polynomial q, Polynomial d, Complex s) {
  for (int round = 0;; ++round) {
    const double qv = std::abs(q.eval(s));
    const double dv = std::abs(d.eval(s));
    const bool q_zero = qv <= effectively_zero_scale(q, std::abs(s));
    const bool d_zero = dv <= effectively_zero_scale(d, std::abs(s));
    if (!d_zero) return qv / dv;
    if (!q_zero) return std::numeric_limits<double>::infinity();
    if (q.degree() == 0 || d.degree() == 0 || round > 64) return 0.0;
    q = q.deflate_at(s).first;
    d = d.deflate_at(s).first;
  }
}

double sublevel_inf(const RationalMap& w, Complex s) {
  const WValue v = w.eval(s);
  return v.is_at_infinity() ? std::numeric_limits<double>::infinity() : std::abs(v.value());
}

GridField modulus_field(const RationalMap& w, const BBox& bbox, int nx, int ny) {
  return sample_grid([&](Complex s) { return sublevel_inf(w, s); }, bbox, nx, ny);
}

bool below_one(double v) { return v < 1.0; }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// An m-fold root of p is a simple root of the (m-1)-th derivative; Newton
/// there recovers it to machine precision, where the cluster centroid of the
/// scattered iterates cannot.
Complex polish_root(const Polynomial& p, Complex x0, int multiplicity) {
  Polynomial h = p;
  for (int k = 1; k < multiplicity; ++k) h = h.derivative();
  const Polynomial hp = h.derivative();
  if (hp.is_zero()) return x0;
  Complex x = x0;
  const double guard = 1e-3 * std::max(1.0, std::abs(x0));
  for (int it = 0; it < 30; ++it) {
    const Complex dv = hp.eval(x);
    if (dv == Complex(0.0, 0.0)) break;
    const Complex step = h.eval(x) / dv;
    x -= step;
    if (std::abs(x - x0) > guard) return x0;  // wandered off; keep the centroid
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
  }
  return x;
}

std::vector<RootCluster> polished_critical_points(const Polynomial& f,
                                                  const RootOptions& opts) {
  const Polynomial fp = f.derivative();
  std::vector<RootCluster> clusters =
      cluster_roots(roots(fp, opts), opts.cluster_radius_factor);
  for (RootCluster& c : clusters) c.location = polish_root(fp, c.location, c.multiplicity);
  return clusters;
}

/// Count of vanishing derivatives of f' at theta, i.e. the multiplicity of
/// theta as a critical point (0 when it is not one).
int critical_multiplicity(const Polynomial& f, Complex theta) {
  Polynomial g = f.derivative();
  int m = 0;
  while (!g.is_zero() && g.degree() >= 0) {
    if (std::abs(g.eval(theta)) > 1e-6 * g.residual_scale(std::abs(theta))) break;
    m += 1;
    if (g.degree() == 0) break;
    g = g.derivative();
  }
  return m;
}

}  // namespace

std::vector<RootCluster> critical_points(const Polynomial& f) {
  if (f.degree() < 2)
    throw std::invalid_argument("critical_points: polynomial must have degree >= 2");
  return polished_critical_points(f, RootOptions{});
}

double smale_quotient(const Polynomial& f, Complex s, Complex theta) {
  if (f.degree() < 1) throw std::invalid_argument("smale_quotient: degree must be >= 1");
  return quotient_of(divided_difference(f, theta), f.derivative(), s);
}

RationalMap build_W(const Polynomial& f, Complex theta) {
  if (f.degree() < 2) throw std::invalid_argument("build_W: polynomial must have degree >= 2");
  return RationalMap(f.derivative(), divided_difference(f, theta), {theta});
}

double limit_at_critical_point(const Polynomial& f, Complex theta) {
  const int multiplicity = critical_multiplicity(f, theta);
  if (multiplicity == 0)
    throw std::invalid_argument("limit_at_critical_point: theta is not a critical point");

  Polynomial num = f.derivative(), den = divided_difference(f, theta);
  for (int k = 0; k < multiplicity; ++k) {
    num = num.deflate_at(theta).first;
    den = den.deflate_at(theta).first;
  }
  return std::abs(num.eval(theta)) / std::abs(den.eval(theta));
}

SmaleCase SmaleCase::analyze(const Polynomial& f, const RootOptions& opts) {
  if (f.degree() < 2)
    throw std::invalid_argument("SmaleCase: polynomial must have degree >= 2");
  SmaleCase smale_case;
  smale_case.f = f;
  smale_case.critical = polished_critical_points(f, opts);
  smale_case.maps.reserve(smale_case.critical.size());
  for (const RootCluster& c : smale_case.critical)
    smale_case.maps.push_back(build_W(f, c.location));
  return smale_case;
}

std::vector<Region> adjacent_domains(const SmaleCase& smale_case, int i, const BBox& bbox,
                                     int nx, int ny) {
  const RationalMap& w = smale_case.maps.at(std::size_t(i));
  const GridField field = modulus_field(w, bbox, nx, ny);
  std::vector<Region> regions = connected_components(field, below_one);
  for (Region& region : regions)
    for (const RootCluster& c : smale_case.critical)
      if (bbox.contains(c.location) && region_at(regions, field, c.location) == region.id)
        region.contains.push_back(c.location);
  return regions;
}

AuditConfig AuditConfig::defaults_for(const SmaleCase& smale_case) {
  AuditConfig config;
  double scale = 1.0;
  for (const RationalMap& w : smale_case.maps) scale = std::max(scale, w.scene_scale());
  config.bbox = BBox::centered_square(Complex(0, 0), 2.0 * scale);
  return config;
}

namespace {

/// Node label array for strict interior/exterior tests: a point is strictly
/// inside (outside) when its nearest node and the 4 neighbors are all
/// labeled (all unlabeled).
struct LabelGrid {
  const GridField* field = nullptr;
  std::vector<int> label;

  static LabelGrid build(const GridField& field, const std::vector<Region>& regions) {
    LabelGrid grid;
    grid.field = &field;
    grid.label.assign(field.values.size(), -1);
    for (const Region& r : regions)
      for (int idx : r.cells) grid.label[std::size_t(idx)] = r.id;
    return grid;
  }

  int at(int ix, int iy) const { return label[std::size_t(field->index(ix, iy))]; }

  enum class Side { kInside, kOutside, kBoundary };
  Side classify(Complex s) const {
    const auto [ix, iy] = field->nearest_node(s);
    if (ix == 0 || iy == 0 || ix == field->nx - 1 || iy == field->ny - 1)
      return Side::kBoundary;
    const int center = at(ix, iy);
    const bool center_in = center >= 0;
    for (const auto& [jx, jy] : {std::pair{ix - 1, iy}, std::pair{ix + 1, iy},
                                 std::pair{ix, iy - 1}, std::pair{ix, iy + 1}})
      if ((at(jx, jy) >= 0) != center_in) return Side::kBoundary;
    return center_in ? Side::kInside : Side::kOutside;
  }
};

ThetaAudit audit_one_theta(const SmaleCase& smale_case, int index, const AuditConfig& config,
                           std::vector<Counterexample>& counterexamples) {
  const RootCluster& critical = smale_case.critical[std::size_t(index)];
  const RationalMap& w = smale_case.maps[std::size_t(index)];

  ThetaAudit audit;
  audit.index = index;
  audit.theta = critical.location;
  audit.multiplicity = critical.multiplicity;
  audit.limit_at_theta = limit_at_critical_point(smale_case.f, critical.location);

  const GridField field = modulus_field(w, config.bbox, config.nx, config.ny);
  std::vector<Region> regions = connected_components(field, below_one);
  const LabelGrid labels = LabelGrid::build(field, regions);

  // Zeros of W_i: the other critical points (plus any residual clusters).
  std::vector<Complex> w_zeros;
  for (const RootCluster& z : w.zeros()) w_zeros.push_back(z.location);

  // Lazily built doubled-resolution view for dismissing grid artifacts.
  bool fine_built = false;
  GridField fine_field;
  std::vector<Region> fine_regions;
  auto fine_lookup = [&](Complex s) -> const Region* {
    if (!fine_built) {
      fine_field = modulus_field(w, config.bbox, 2 * config.nx - 1, 2 * config.ny - 1);
      fine_regions = connected_components(fine_field, below_one);
      fine_built = true;
    }
    const int id = region_at(fine_regions, fine_field, s);
    return id < 0 ? nullptr : &fine_regions[std::size_t(id)];
  };

  for (const Region& region : regions) {
    RegionReport report;
    report.id = region.id;
    report.cell_count = int(region.cells.size());
    report.touches_border = region.touches_grid_border;
    report.boundary = region.boundary;
    for (const RootCluster& c : smale_case.critical)
      if (config.bbox.contains(c.location) &&
          region_at(regions, field, c.location) == region.id)
        report.contained_critical_points.push_back(c.location);
    for (Complex z : w_zeros)
      if (config.bbox.contains(z) && region_at(regions, field, z) == region.id)
        report.contains_w_zero = true;
    if (report.contained_critical_points.empty()) audit.regions_without_critical_points += 1;

    if (!report.contains_w_zero && !report.touches_border) {
      report.flagged = true;
      // Re-examine at doubled resolution: a genuine sublevel component
      // persists and still lacks a zero; a staircase artifact dissolves or
      // merges into a component that has one.
      const Complex probe = field.node(region.cells.front() % field.nx,
                                       region.cells.front() / field.nx);
      const Region* fine = fine_lookup(probe);
      if (fine == nullptr) {
        report.dismissed_at_2x = true;
      } else {
        bool fine_has_zero = false;
        for (Complex z : w_zeros)
          if (config.bbox.contains(z) &&
              region_at(fine_regions, fine_field, z) == fine->id)
            fine_has_zero = true;
        report.dismissed_at_2x = fine_has_zero;
      }
    }
    audit.regions.push_back(std::move(report));
  }

  audit.theta_in_region = labels.classify(critical.location) == LabelGrid::Side::kInside;

  // Quotient statistics on strictly interior / strictly exterior samples;
  // boundary cells are excluded so grid interpolation cannot fabricate
  // counterexamples.
  std::mt19937_64 rng(mix_seed(config.seed, std::uint64_t(index)));
  std::uniform_real_distribution<double> us(config.bbox.sigma_min, config.bbox.sigma_max);
  std::uniform_real_distribution<double> ut(config.bbox.t_min, config.bbox.t_max);

  const bool any_region = !regions.empty();
  std::int64_t inside_ok = 0, outside_ok = 0;
  const std::int64_t budget = 200 * std::int64_t(config.n_samples);
  for (std::int64_t draw = 0;
       draw < budget && (audit.outside_samples < config.n_samples ||
                         (any_region && audit.inside_samples < config.n_samples));
       ++draw) {
    const Complex s(us(rng), ut(rng));
    const LabelGrid::Side side = labels.classify(s);
    if (side == LabelGrid::Side::kBoundary) {
      audit.boundary_excluded += 1;
      continue;
    }
    if (side == LabelGrid::Side::kInside) {
      if (audit.inside_samples >= config.n_samples) continue;
      audit.inside_samples += 1;
      const double q = smale_quotient(smale_case.f, s, critical.location);
      if (q > 1.0)
        inside_ok += 1;
      else
        counterexamples.push_back(Counterexample{s, index, q, true});
    } else {
      if (audit.outside_samples >= config.n_samples) continue;
      audit.outside_samples += 1;
      const double q = smale_quotient(smale_case.f, s, critical.location);
      if (q <= 1.0)
        outside_ok += 1;
      else
        counterexamples.push_back(Counterexample{s, index, q, false});
    }
  }
  if (audit.inside_samples > 0)
    audit.quotient_gt1_inside_fraction = double(inside_ok) / double(audit.inside_samples);
  if (audit.outside_samples > 0)
    audit.quotient_le1_outside_fraction = double(outside_ok) / double(audit.outside_samples);
  return audit;
}

}  // namespace

SmaleAuditReport audit_theorems(const SmaleCase& smale_case, const AuditConfig& config) {
  SmaleAuditReport report;
  report.critical = smale_case.critical;
  report.config = config;

  const std::size_t n = smale_case.critical.size();
  std::vector<ThetaAudit> audits(n);
  std::vector<std::vector<Counterexample>> counter_slots(n);
  parallel_chunks(int(n), [&](int begin, int end) {
    for (int i = begin; i < end; ++i)
      audits[std::size_t(i)] =
          audit_one_theta(smale_case, i, config, counter_slots[std::size_t(i)]);
  });
  report.per_theta = std::move(audits);
  for (auto& slot : counter_slots)
    report.counterexamples.insert(report.counterexamples.end(), slot.begin(), slot.end());

  report.extremal = extremal_search(smale_case.f, config.bbox, std::max(config.nx, config.ny));
  return report;
}

ExtremalResult extremal_search(const Polynomial& f, const BBox& bbox, int resolution) {
  if (f.degree() < 2)
    throw std::invalid_argument("extremal_search: polynomial must have degree >= 2");
  if (resolution < 2) throw std::invalid_argument("extremal_search: resolution must be >= 2");

  const Polynomial fp = f.derivative();
  std::vector<Polynomial> quotient_dens;
  for (const RootCluster& c : critical_points(f))
    quotient_dens.push_back(divided_difference(f, c.location));

  auto objective = [&](Complex s) {
    double worst = std::numeric_limits<double>::infinity();
    for (const Polynomial& q : quotient_dens) worst = std::min(worst, quotient_of(q, fp, s));
    return worst;
  };

  // Coarse scan on the node lattice.
  const double dx = bbox.width() / (resolution - 1);
  const double dy = bbox.height() / (resolution - 1);
  Complex best(bbox.sigma_min, bbox.t_min);
  double best_value = -1.0;
  for (int iy = 0; iy < resolution; ++iy)
    for (int ix = 0; ix < resolution; ++ix) {
      const Complex s(bbox.sigma_min + ix * dx, bbox.t_min + iy * dy);
      const double v = objective(s);
      if (v > best_value) {
        best_value = v;
        best = s;
      }
    }

  // Compass pattern search, shrink 0.5 per stalled round.
  double step = std::max(dx, dy);
  const Complex dirs[8] = {{1, 0}, {-1, 0}, {0, 1},  {0, -1},
                           {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  for (int shrink = 0; shrink < 60; ++shrink) {
    for (int move = 0; move < 200; ++move) {
      Complex move_best = best;
      double move_value = best_value;
      for (const Complex& d : dirs) {
        Complex cand = best + step * d;
        cand = Complex(std::clamp(cand.real(), bbox.sigma_min, bbox.sigma_max),
                       std::clamp(cand.imag(), bbox.t_min, bbox.t_max));
        const double v = objective(cand);
        if (v > move_value) {
          move_value = v;
          move_best = cand;
        }
      }
      if (move_value <= best_value) break;
      best = move_best;
      best_value = move_value;
    }
    step *= 0.5;
  }
  return ExtremalResult{best, best_value};
}

}  // namespace locuslab
