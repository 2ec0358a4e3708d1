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

#include "locuslab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "locuslab/field_scanner.hpp"
#include "locuslab/io.hpp"
#include "locuslab/locus_tracer.hpp"
#include "locuslab/parallel.hpp"
#include "locuslab/polynomial.hpp"
#include "locuslab/rational_map.hpp"
#include "locuslab/smale.hpp"
#include "locuslab/svg.hpp"
#include "locuslab/types.hpp"

namespace locuslab {

namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

double modulus_or_inf(const RationalMap& w, Complex s) {
  const WValue v = w.eval(s);
  return v.is_at_infinity() ? std::numeric_limits<double>::infinity() : std::abs(v.value());
}

void draw_endpoint_markers(SvgFigure& figure, const RationalMap& w) {
  for (const auto& p : w.poles()) figure.add_cross_marker(p.location, "#c62828");
  for (const auto& z : w.zeros()) figure.add_circle_marker(z.location, "#1565c0", 4.0, false);
  for (const auto& rp : w.removable_points())
    figure.add_circle_marker(rp.location, "#6a1b9a", 3.0, true);
}

/// Traces are drawn in gain-colored chunks; every source vertex is kept.
void draw_trace(SvgFigure& figure, const LocusTrace& trace) {
  const std::size_t n = trace.points.size();
  if (n < 2) return;
  const std::size_t chunk = std::max<std::size_t>(2, n / 32);
  std::size_t begin = 0;
  while (begin + 1 < n) {
    const std::size_t end = std::min(n, begin + chunk + 1);
    std::vector<Complex> pts;
    pts.reserve(end - begin);
    double gain_sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      pts.push_back(trace.points[i].s);
      gain_sum += trace.points[i].gain;
    }
    figure.add_polyline(pts, false, SvgFigure::gain_color(gain_sum / double(pts.size())), 1.6);
    begin = end - 1;
  }
}

BBox audit_bbox_for(const SmaleCase& smale_case) {
  return AuditConfig::defaults_for(smale_case).bbox;
}

int runtime_error_exit(const RunConfig& config, const std::exception& error) {
  Json diagnostic{
      {"schema_version", kSchemaVersion},
      {"error", error.what()},
  };
  if (const auto* rf = dynamic_cast<const RootFindingError*>(&error)) {
    Json iterates = Json::array();
    for (std::size_t i = 0; i < rf->best_iterates.size(); ++i)
      iterates.push_back(Json{{"value", complex_to_json(rf->best_iterates[i])},
                              {"residual", rf->best_residuals[i]}});
    diagnostic["best_iterates"] = std::move(iterates);
  }
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (!ec) write_text_file(join(config.out_dir, "diagnostic.json"), diagnostic.dump(2) + "\n");
  std::fprintf(stderr, "numeric failure: %s\n", error.what());
  return 2;
}

// ---------------------------------------------------------------------------
// Command implementations.

int run_roots(const RunConfig& config) {
  const Polynomial p = parse_polynomial(config.poly_text);
  Json roots_json = Json::array();
  for (const RootCluster& c : clustered_roots(p)) {
    roots_json.push_back(Json{
        {"value", complex_to_json(c.location)},
        {"multiplicity", c.multiplicity},
        {"residual", std::abs(p.eval(c.location))},
    });
  }
  const Json out{
      {"schema_version", kSchemaVersion},
      {"command", "roots"},
      {"polynomial", polynomial_to_text(p)},
      {"degree", p.degree()},
      {"roots", std::move(roots_json)},
  };
  if (config.emit_json) write_text_file(join(config.out_dir, "roots.json"), out.dump(2) + "\n");
  std::printf("roots: %d root cluster(s) written to %s\n", int(out["roots"].size()),
              config.out_dir.c_str());
  return 0;
}

int run_trace(const RunConfig& config) {
  if (!config.alpha) throw std::invalid_argument("trace: --alpha is required");
  const RationalMap w(parse_polynomial(config.num_text), parse_polynomial(config.den_text));
  TraceOptions opts = TraceOptions::defaults_for(w);
  if (config.bbox) opts.bbox = *config.bbox;

  std::vector<LocusTrace> traces;
  if (config.seed_point) {
    traces.push_back(trace_locus(w, *config.alpha, TraceSeed{*config.seed_point, -1, 0}, opts));
  } else {
    traces = trace_all(w, *config.alpha, opts);
  }

  Json summaries = Json::array();
  for (std::size_t i = 0; i < traces.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "trace_%03d.csv", int(i));
    if (config.emit_csv) write_text_file(join(config.out_dir, name), trace_to_csv(traces[i]));
    Json summary = trace_summary_json(traces[i], w);
    summary["csv"] = name;
    summaries.push_back(std::move(summary));
  }
  const Json out{
      {"schema_version", kSchemaVersion},
      {"command", "trace"},
      {"map", Json{{"num", polynomial_to_json(w.num())}, {"den", polynomial_to_json(w.den())}}},
      {"alpha", *config.alpha},
      {"bbox", Json::array({opts.bbox.sigma_min, opts.bbox.sigma_max, opts.bbox.t_min,
                            opts.bbox.t_max})},
      {"traces", std::move(summaries)},
  };
  if (config.emit_json) write_text_file(join(config.out_dir, "traces.json"), out.dump(2) + "\n");

  if (config.emit_svg) {
    SvgFigure figure(opts.bbox);
    for (const LocusTrace& trace : traces) draw_trace(figure, trace);
    draw_endpoint_markers(figure, w);
    write_text_file(join(config.out_dir, "loci.svg"), figure.render());
  }
  std::printf("trace: %d locus branch(es) written to %s\n", int(traces.size()),
              config.out_dir.c_str());
  return 0;
}

int run_field(const RunConfig& config) {
  const RationalMap w(parse_polynomial(config.num_text), parse_polynomial(config.den_text));
  const BBox bbox =
      config.bbox ? *config.bbox : BBox::centered_square(Complex(0, 0), 2.0 * w.scene_scale());

  std::function<double(Complex)> fn;
  if (config.field_kind == "gain") {
    fn = [&w](Complex s) { return w.gain(s); };
  } else if (config.field_kind == "modulus") {
    fn = [&w](Complex s) { return modulus_or_inf(w, s); };
  } else if (config.field_kind == "phase-residual") {
    if (!config.alpha)
      throw std::invalid_argument("field: --alpha is required for phase-residual");
    const double alpha = *config.alpha;
    fn = [&w, alpha](Complex s) { return phase_distance(w.phase(s), alpha); };
  } else {
    throw std::invalid_argument("field: unknown kind '" + config.field_kind +
                                "' (gain | modulus | phase-residual)");
  }

  const GridField field = sample_grid(fn, bbox, config.nx, config.ny);
  if (config.emit_csv)
    write_text_file(join(config.out_dir, "field.csv"), field_to_csv(field));

  std::vector<Polyline> contours;
  if (config.level) contours = contour_extract(field, *config.level);
  if (config.emit_json) {
    Json out{
        {"schema_version", kSchemaVersion},
        {"command", "field"},
        {"map",
         Json{{"num", polynomial_to_json(w.num())}, {"den", polynomial_to_json(w.den())}}},
        {"kind", config.field_kind},
        {"bbox", Json::array({bbox.sigma_min, bbox.sigma_max, bbox.t_min, bbox.t_max})},
        {"resolution", Json::array({config.nx, config.ny})},
    };
    if (config.alpha) out["alpha"] = *config.alpha;
    if (config.level) {
      out["level"] = *config.level;
      out["contours"] = polylines_to_json(contours);
    }
    write_text_file(join(config.out_dir, "field.json"), out.dump(2) + "\n");
  }
  if (config.emit_svg) {
    SvgFigure figure(bbox);
    for (const Polyline& poly : contours)
      figure.add_polyline(poly.points, poly.closed, "#00695c", 1.4);
    draw_endpoint_markers(figure, w);
    write_text_file(join(config.out_dir, "field.svg"), figure.render());
  }
  std::printf("field: %dx%d %s samples written to %s\n", config.nx, config.ny,
              config.field_kind.c_str(), config.out_dir.c_str());
  return 0;
}

AuditConfig make_audit_config(const RunConfig& config, const SmaleCase& smale_case) {
  AuditConfig audit_config = AuditConfig::defaults_for(smale_case);
  if (config.bbox) audit_config.bbox = *config.bbox;
  audit_config.nx = config.nx;
  audit_config.ny = config.ny;
  audit_config.n_samples = config.n_samples;
  audit_config.seed = config.seed;
  return audit_config;
}

void draw_audit_svg(const RunConfig& config, const SmaleCase& smale_case,
                    const SmaleAuditReport& report, const std::string& name) {
  static const char* shades[] = {"#ef9a9a", "#90caf9", "#a5d6a7", "#ffe082", "#ce93d8",
                                 "#80cbc4", "#bcaaa4"};
  SvgFigure figure(report.config.bbox);
  for (const ThetaAudit& audit : report.per_theta) {
    const char* shade = shades[std::size_t(audit.index) % 7];
    for (const RegionReport& region : audit.regions)
      for (const Polyline& poly : region.boundary) {
        figure.add_filled_polyline(poly.points, shade, 0.25);
        figure.add_polyline(poly.points, poly.closed, shade, 1.0, 0.9);
      }
  }
  for (const RootCluster& c : smale_case.critical)
    figure.add_circle_marker(c.location, "#212121", 4.0, true);
  figure.add_cross_marker(report.extremal.s, "#e65100", 6.0);
  write_text_file(join(config.out_dir, name), figure.render());
}

int run_smale_audit(const RunConfig& config) {
  const Polynomial f = parse_polynomial(config.poly_text);
  const SmaleCase smale_case = SmaleCase::analyze(f);
  const AuditConfig audit_config = make_audit_config(config, smale_case);
  const SmaleAuditReport report = audit_theorems(smale_case, audit_config);

  if (config.emit_json) {
    Json out = audit_report_to_json(report, f, true);
    out["command"] = "smale-audit";
    write_text_file(join(config.out_dir, "audit.json"), out.dump(2) + "\n");
  }
  if (config.emit_svg) draw_audit_svg(config, smale_case, report, "audit.svg");

  int regions_total = 0;
  for (const ThetaAudit& audit : report.per_theta) regions_total += int(audit.regions.size());
  std::printf("smale-audit: %d critical point(s), %d region(s), extremal %.6f; %s\n",
              int(report.critical.size()), regions_total, report.extremal.value,
              config.out_dir.c_str());
  return 0;
}

int run_smale_regions(const RunConfig& config) {
  const Polynomial f = parse_polynomial(config.poly_text);
  const SmaleCase smale_case = SmaleCase::analyze(f);
  const BBox bbox = config.bbox ? *config.bbox : audit_bbox_for(smale_case);

  Json per_theta = Json::array();
  SvgFigure figure(bbox);
  static const char* shades[] = {"#ef9a9a", "#90caf9", "#a5d6a7", "#ffe082", "#ce93d8",
                                 "#80cbc4", "#bcaaa4"};
  for (int i = 0; i < int(smale_case.critical.size()); ++i) {
    const auto regions = adjacent_domains(smale_case, i, bbox, config.nx, config.ny);
    Json region_json = Json::array();
    for (const Region& region : regions) {
      Json contains = Json::array();
      for (Complex c : region.contains) contains.push_back(complex_to_json(c));
      region_json.push_back(Json{
          {"id", region.id},
          {"cell_count", region.cells.size()},
          {"touches_border", region.touches_grid_border},
          {"contains", std::move(contains)},
          {"boundary", polylines_to_json(region.boundary)},
      });
      for (const Polyline& poly : region.boundary) {
        figure.add_filled_polyline(poly.points, shades[std::size_t(i) % 7], 0.25);
        figure.add_polyline(poly.points, poly.closed, shades[std::size_t(i) % 7], 1.0, 0.9);
      }
    }
    per_theta.push_back(Json{
        {"index", i},
        {"theta", complex_to_json(smale_case.critical[std::size_t(i)].location)},
        {"regions", std::move(region_json)},
    });
  }
  for (const RootCluster& c : smale_case.critical)
    figure.add_circle_marker(c.location, "#212121", 4.0, true);

  const Json out{
      {"schema_version", kSchemaVersion},
      {"command", "smale-regions"},
      {"polynomial", polynomial_to_text(f)},
      {"degree", f.degree()},
      {"bbox", Json::array({bbox.sigma_min, bbox.sigma_max, bbox.t_min, bbox.t_max})},
      {"resolution", Json::array({config.nx, config.ny})},
      {"per_theta", std::move(per_theta)},
  };
  if (config.emit_json)
    write_text_file(join(config.out_dir, "regions.json"), out.dump(2) + "\n");
  if (config.emit_svg) write_text_file(join(config.out_dir, "regions.svg"), figure.render());
  std::printf("smale-regions: %d critical point(s) mapped; %s\n",
              int(smale_case.critical.size()), config.out_dir.c_str());
  return 0;
}

int run_smale_extremal(const RunConfig& config) {
  const Polynomial f = parse_polynomial(config.poly_text);
  const SmaleCase smale_case = SmaleCase::analyze(f);
  const BBox bbox = config.bbox ? *config.bbox : audit_bbox_for(smale_case);
  const ExtremalResult result = extremal_search(f, bbox, std::max(config.nx, config.ny));

  const Json out{
      {"schema_version", kSchemaVersion},
      {"command", "smale-extremal"},
      {"polynomial", polynomial_to_text(f)},
      {"degree", f.degree()},
      {"extremal", Json{{"s", complex_to_json(result.s)}, {"value", result.value}}},
      {"config",
       Json{{"bbox", Json::array({bbox.sigma_min, bbox.sigma_max, bbox.t_min, bbox.t_max})},
            {"resolution", std::max(config.nx, config.ny)}}},
  };
  if (config.emit_json)
    write_text_file(join(config.out_dir, "extremal.json"), out.dump(2) + "\n");
  std::printf("smale-extremal: value %.9f at (%.6g, %.6g)\n", result.value, result.s.real(),
              result.s.imag());
  return 0;
}

Polynomial random_instance(std::uint64_t instance_seed, int degree_min, int degree_max,
                           double coeff_box) {
  std::mt19937_64 rng(instance_seed);
  std::uniform_int_distribution<int> degree_dist(degree_min, degree_max);
  std::uniform_real_distribution<double> coeff(-coeff_box, coeff_box);
  const int degree = degree_dist(rng);
  std::vector<Complex> coeffs(std::size_t(degree) + 1);
  for (auto& c : coeffs) c = Complex(coeff(rng), coeff(rng));
  // Keep the nominal degree: resample a weak leading coefficient.
  while (std::abs(coeffs.back()) < 0.1 * coeff_box)
    coeffs.back() = Complex(coeff(rng), coeff(rng));
  return Polynomial(std::move(coeffs));
}

int run_sweep(const RunConfig& config) {
  if (config.count < 1) throw std::invalid_argument("sweep: --count must be >= 1");
  if (config.degree_min < 2 || config.degree_max < config.degree_min)
    throw std::invalid_argument("sweep: degree range must satisfy 2 <= min <= max");

  struct Instance {
    Json json;
    bool ok = false;
    int regions = 0, flagged = 0, dismissed = 0, clipped = 0, theta_in_region = 0;
    int counterexamples = 0;
  };
  std::vector<Instance> instances(std::size_t(config.count));

  parallel_chunks(config.count, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      Instance& slot = instances[std::size_t(i)];
      const std::uint64_t instance_seed = mix(config.seed, std::uint64_t(i));
      const Polynomial f =
          random_instance(instance_seed, config.degree_min, config.degree_max, config.coeff_box);
      try {
        const SmaleCase smale_case = SmaleCase::analyze(f);
        AuditConfig audit_config = AuditConfig::defaults_for(smale_case);
        audit_config.nx = config.nx;
        audit_config.ny = config.ny;
        audit_config.n_samples = config.n_samples;
        audit_config.seed = instance_seed;
        const SmaleAuditReport report = audit_theorems(smale_case, audit_config);

        slot.json = audit_report_to_json(report, f, false);
        slot.json["index"] = i;
        slot.json["status"] = "ok";
        slot.ok = true;
        for (const ThetaAudit& audit : report.per_theta) {
          slot.regions += int(audit.regions.size());
          slot.theta_in_region += audit.theta_in_region ? 1 : 0;
          for (const RegionReport& region : audit.regions) {
            if (region.touches_border) slot.clipped += 1;
            if (region.flagged) slot.flagged += 1;
            if (region.dismissed_at_2x) slot.dismissed += 1;
          }
        }
        slot.counterexamples = int(report.counterexamples.size());
      } catch (const NumericError& error) {
        slot.json = Json{{"index", i},
                         {"status", "error"},
                         {"polynomial", polynomial_to_text(f)},
                         {"error", error.what()}};
      }
    }
  });

  Json instance_array = Json::array();
  int ok = 0, regions = 0, flagged = 0, dismissed = 0, clipped = 0, theta_in = 0, counter = 0;
  for (Instance& slot : instances) {
    instance_array.push_back(std::move(slot.json));
    ok += slot.ok ? 1 : 0;
    regions += slot.regions;
    flagged += slot.flagged;
    dismissed += slot.dismissed;
    clipped += slot.clipped;
    theta_in += slot.theta_in_region;
    counter += slot.counterexamples;
  }
  const Json out{
      {"schema_version", kSchemaVersion},
      {"command", "sweep"},
      {"config",
       Json{{"count", config.count},
            {"degree_range", Json::array({config.degree_min, config.degree_max})},
            {"coeff_box", config.coeff_box},
            {"resolution", Json::array({config.nx, config.ny})},
            {"n_samples", config.n_samples},
            {"seed", config.seed}}},
      {"aggregate", Json{{"instances_ok", ok},
                         {"regions_total", regions},
                         {"regions_flagged", flagged},
                         {"regions_dismissed_at_2x", dismissed},
                         {"regions_clipped", clipped},
                         {"theta_in_region_count", theta_in},
                         {"counterexample_count", counter}}},
      {"instances", std::move(instance_array)},
  };
  write_text_file(join(config.out_dir, "batch.json"), out.dump(2) + "\n");
  std::printf("sweep: %d/%d instance(s) ok, %d region(s), %d counterexample(s); %s\n", ok,
              config.count, regions, counter, config.out_dir.c_str());
  return 0;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec)
      throw std::invalid_argument("cannot create out_dir '" + config.out_dir +
                                  "': " + ec.message());
    if (config.bbox && config.bbox->degenerate())
      throw std::invalid_argument("bbox must be non-degenerate");
    if (config.nx < 2 || config.ny < 2)
      throw std::invalid_argument("resolution components must be >= 2");

    switch (config.command) {
      case Command::kRoots:
        return run_roots(config);
      case Command::kTrace:
        return run_trace(config);
      case Command::kField:
        return run_field(config);
      case Command::kSmaleAudit:
        return run_smale_audit(config);
      case Command::kSmaleRegions:
        return run_smale_regions(config);
      case Command::kSmaleExtremal:
        return run_smale_extremal(config);
      case Command::kSweep:
        return run_sweep(config);
    }
    return 1;
  } catch (const ParseError& error) {
    std::fprintf(stderr, "input error: %s\n", error.what());
    return 1;
  } catch (const std::invalid_argument& error) {
    std::fprintf(stderr, "input error: %s\n", error.what());
    return 1;
  } catch (const std::domain_error& error) {
    std::fprintf(stderr, "input error: %s\n", error.what());
    return 1;
  } catch (const NumericError& error) {
    return runtime_error_exit(config, error);
  }
}

}  // namespace locuslab
