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

#ifndef LOCUSLAB_CLI_HPP
#define LOCUSLAB_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "locuslab/types.hpp"

namespace locuslab {

enum class Command {
  kRoots,
  kTrace,
  kField,
  kSmaleAudit,
  kSmaleRegions,
  kSmaleExtremal,
  kSweep,
};

struct RunConfig {
  Command command = Command::kRoots;

  std::string poly_text;             // roots / smale-*
  std::string num_text, den_text;    // trace / field

  std::optional<BBox> bbox;          // scene-scaled default when absent
  int nx = 512, ny = 512;
  std::optional<double> alpha;       // radians
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  bool emit_json = true, emit_csv = true, emit_svg = true;

  std::optional<Complex> seed_point;  // trace: manual seed instead of poles
  std::string field_kind = "gain";    // field: gain | modulus | phase-residual
  std::optional<double> level;        // field: contour level to extract

  int count = 1;                      // sweep
  int degree_min = 2, degree_max = 6;
  double coeff_box = 1.0;
  int n_samples = 1000;
};

/// Executes a command, writing the requested artifacts under out_dir.
/// Returns 0 on success, 1 on input errors, 2 on numeric failures (with a
/// diagnostic JSON next to the other artifacts).
int run(const RunConfig& config);

}  // namespace locuslab

#endif  // LOCUSLAB_CLI_HPP
