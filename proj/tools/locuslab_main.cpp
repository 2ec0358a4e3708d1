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

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "locuslab/cli.hpp"
#include "locuslab/io.hpp"

namespace {

using locuslab::Command;
using locuslab::RunConfig;

struct SharedFlags {
  std::vector<double> bbox;
  std::vector<int> resolution;
  std::string formats = "json,csv,svg";
};

void add_shared(CLI::App* cmd, RunConfig& config, SharedFlags& shared) {
  cmd->add_option("--out-dir", config.out_dir, "artifact directory (default: out)");
  cmd->add_option("--bbox", shared.bbox,
                  "sigma_min sigma_max t_min t_max (default: scene-scaled)")
      ->expected(4);
  cmd->add_option("--resolution", shared.resolution, "grid nodes: N or NX NY (default 512)")
      ->expected(1, 2);
  cmd->add_option("--seed", config.seed, "RNG seed (default 0)");
  cmd->add_option("--formats", shared.formats, "subset of json,csv,svg (default all)");
}

void apply_shared(RunConfig& config, const SharedFlags& shared) {
  if (!shared.bbox.empty())
    config.bbox = locuslab::BBox{shared.bbox[0], shared.bbox[1], shared.bbox[2], shared.bbox[3]};
  if (shared.resolution.size() == 1) {
    config.nx = config.ny = shared.resolution[0];
  } else if (shared.resolution.size() == 2) {
    config.nx = shared.resolution[0];
    config.ny = shared.resolution[1];
  }
  config.emit_json = shared.formats.find("json") != std::string::npos;
  config.emit_csv = shared.formats.find("csv") != std::string::npos;
  config.emit_svg = shared.formats.find("svg") != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locuslab: constant-phase root loci of rational maps and the "
               "mean-value quotient audit built on them"};
  app.require_subcommand(1);

  RunConfig config;
  SharedFlags shared;
  double alpha = 0.0;
  std::vector<double> seed_point;
  double level = 0.0;

  auto* roots = app.add_subcommand("roots", "roots of a complex polynomial");
  roots->add_option("--poly", config.poly_text, "ascending coefficients, e.g. \"0,-4,0,0,1\"")
      ->required();
  add_shared(roots, config, shared);
  roots->callback([&] { config.command = Command::kRoots; });

  auto* trace = app.add_subcommand("trace", "trace constant-phase loci pole to zero");
  trace->add_option("--num", config.num_text, "numerator coefficients")->required();
  trace->add_option("--den", config.den_text, "denominator coefficients")->required();
  auto* alpha_opt =
      trace->add_option("--alpha", alpha, "target phase in radians")->required();
  trace->add_option("--seed-point", seed_point, "manual seed: sigma t (skips pole seeding)")
      ->expected(2);
  add_shared(trace, config, shared);
  trace->callback([&] { config.command = Command::kTrace; });

  auto* field = app.add_subcommand("field", "sample a scalar field of a rational map");
  field->add_option("--num", config.num_text, "numerator coefficients")->required();
  field->add_option("--den", config.den_text, "denominator coefficients")->required();
  field->add_option("--fn", config.field_kind, "gain | modulus | phase-residual");
  auto* field_alpha = field->add_option("--alpha", alpha, "phase for phase-residual");
  auto* field_level = field->add_option("--level", level, "extract contours at this level");
  add_shared(field, config, shared);
  field->callback([&] { config.command = Command::kField; });

  auto* audit = app.add_subcommand("smale-audit", "adjacent-domain audit of the quotient maps");
  audit->add_option("--poly", config.poly_text, "polynomial, degree >= 2")->required();
  audit->add_option("--samples", config.n_samples, "quotient samples per side (default 1000)");
  add_shared(audit, config, shared);
  audit->callback([&] { config.command = Command::kSmaleAudit; });

  auto* regions = app.add_subcommand("smale-regions", "sublevel regions {|W_i| < 1} per theta");
  regions->add_option("--poly", config.poly_text, "polynomial, degree >= 2")->required();
  add_shared(regions, config, shared);
  regions->callback([&] { config.command = Command::kSmaleRegions; });

  auto* extremal =
      app.add_subcommand("smale-extremal", "maximize the worst-case mean-value quotient");
  extremal->add_option("--poly", config.poly_text, "polynomial, degree >= 2")->required();
  add_shared(extremal, config, shared);
  extremal->callback([&] { config.command = Command::kSmaleExtremal; });

  auto* sweep = app.add_subcommand("sweep", "audit a batch of random polynomials");
  sweep->add_option("--count", config.count, "number of instances (default 1)");
  sweep->add_option("--min-degree", config.degree_min, "minimum degree (default 2)");
  sweep->add_option("--max-degree", config.degree_max, "maximum degree (default 6)");
  sweep->add_option("--coeff-box", config.coeff_box, "coefficient box half-width (default 1)");
  sweep->add_option("--samples", config.n_samples, "quotient samples per side (default 1000)");
  add_shared(sweep, config, shared);
  sweep->callback([&] { config.command = Command::kSweep; });

  CLI11_PARSE(app, argc, argv);

  apply_shared(config, shared);
  if (alpha_opt->count() > 0 || field_alpha->count() > 0) config.alpha = alpha;
  if (field_level->count() > 0) config.level = level;
  if (seed_point.size() == 2)
    config.seed_point = locuslab::Complex(seed_point[0], seed_point[1]);

  return locuslab::run(config);
}
