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

#ifndef LOCUSLAB_IO_HPP
#define LOCUSLAB_IO_HPP

#include <string>

#include <json.hpp>

#include "locuslab/field_scanner.hpp"
#include "locuslab/locus_tracer.hpp"
#include "locuslab/polynomial.hpp"
#include "locuslab/smale.hpp"
#include "locuslab/types.hpp"

namespace locuslab {

inline constexpr int kSchemaVersion = 1;

/// Insertion-ordered JSON so artifacts are byte-stable across runs.
using Json = nlohmann::ordered_json;

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position(position) {}
  std::size_t position;
};

/// Text format: comma-separated ascending coefficients, each `a` or `a+bi` /
/// `a-bi` (e.g. "0,-4,0,0,1" is s^4 - 4s). Throws ParseError with the
/// offending position.
Polynomial parse_polynomial(const std::string& text);
std::string polynomial_to_text(const Polynomial& p);

Json complex_to_json(Complex v);
Complex complex_from_json(const Json& j);

/// JSON form: array of [re, im] pairs, ascending degree.
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json polyline_to_json(const Polyline& poly);
Json polylines_to_json(const std::vector<Polyline>& polylines);

/// Trace CSV: header `sigma,t,gain,phase_residual`, IEEE round-trip values.
std::string trace_to_csv(const LocusTrace& trace);

/// Field CSV: two `#` header lines (bbox, dims) then ny row-major value rows.
std::string field_to_csv(const GridField& field);

Json trace_summary_json(const LocusTrace& trace, const RationalMap& w);

Json audit_report_to_json(const SmaleAuditReport& report, const Polynomial& f,
                          bool include_boundaries);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace locuslab

#endif  // LOCUSLAB_IO_HPP
