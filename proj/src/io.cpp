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

#include "locuslab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <system_error>

namespace locuslab {

std::string format_double(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

namespace {

// Parses a double at `pos`, advancing it. Accepts a leading '-' (from_chars
// handles that) but not '+'.
double parse_number(const std::string& text, std::size_t& pos) {
  double value = 0.0;
  const char* begin = text.data() + pos;
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr == begin)
    throw ParseError("expected a number at position " + std::to_string(pos), pos);
  pos = std::size_t(result.ptr - text.data());
  return value;
}

Complex parse_complex_term(const std::string& term, std::size_t base) {
  std::size_t pos = 0;
  while (pos < term.size() && term[pos] == ' ') ++pos;
  if (pos == term.size()) throw ParseError("empty coefficient at position " + std::to_string(base), base);

  const double re = parse_number(term, pos);
  while (pos < term.size() && term[pos] == ' ') ++pos;
  if (pos == term.size()) return Complex(re, 0.0);

  const char sign_char = term[pos];
  if (sign_char != '+' && sign_char != '-')
    throw ParseError("expected '+', '-' or end of coefficient at position " +
                         std::to_string(base + pos),
                     base + pos);
  ++pos;
  const double magnitude = parse_number(term, pos);
  if (pos >= term.size() || term[pos] != 'i')
    throw ParseError("expected 'i' at position " + std::to_string(base + pos), base + pos);
  ++pos;
  while (pos < term.size() && term[pos] == ' ') ++pos;
  if (pos != term.size())
    throw ParseError("trailing characters at position " + std::to_string(base + pos),
                     base + pos);
  return Complex(re, sign_char == '-' ? -magnitude : magnitude);
}

}  // namespace

Polynomial parse_polynomial(const std::string& text) {
  std::vector<Complex> coeffs;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string term =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    coeffs.push_back(parse_complex_term(term, start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Polynomial(std::move(coeffs));
}

std::string polynomial_to_text(const Polynomial& p) {
  std::string out;
  for (int k = 0; k <= p.degree(); ++k) {
    if (k > 0) out += ',';
    const Complex c = p.coeff(std::size_t(k));
    out += format_double(c.real());
    if (c.imag() != 0.0) {
      out += c.imag() < 0.0 ? '-' : '+';
      out += format_double(std::abs(c.imag()));
      out += 'i';
    }
  }
  return out;
}

Json complex_to_json(Complex v) { return Json::array({v.real(), v.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("complex_from_json: expected [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json polynomial_to_json(const Polynomial& p) {
  Json arr = Json::array();
  for (int k = 0; k <= p.degree(); ++k) arr.push_back(complex_to_json(p.coeff(std::size_t(k))));
  return arr;
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial_from_json: expected an array");
  std::vector<Complex> coeffs;
  for (const Json& item : j) coeffs.push_back(complex_from_json(item));
  return Polynomial(std::move(coeffs));
}

Json polyline_to_json(const Polyline& poly) {
  Json points = Json::array();
  for (Complex p : poly.points) points.push_back(complex_to_json(p));
  return Json{{"closed", poly.closed}, {"points", std::move(points)}};
}

Json polylines_to_json(const std::vector<Polyline>& polylines) {
  Json arr = Json::array();
  for (const Polyline& poly : polylines) arr.push_back(polyline_to_json(poly));
  return arr;
}

std::string trace_to_csv(const LocusTrace& trace) {
  std::string out = "sigma,t,gain,phase_residual\n";
  for (const LocusPoint& pt : trace.points) {
    out += format_double(pt.s.real());
    out += ',';
    out += format_double(pt.s.imag());
    out += ',';
    out += format_double(pt.gain);
    out += ',';
    out += format_double(pt.phase_residual);
    out += '\n';
  }
  return out;
}

std::string field_to_csv(const GridField& field) {
  std::string out = "# bbox," + format_double(field.bbox.sigma_min) + ',' +
                    format_double(field.bbox.sigma_max) + ',' + format_double(field.bbox.t_min) +
                    ',' + format_double(field.bbox.t_max) + "\n# dims," +
                    std::to_string(field.nx) + ',' + std::to_string(field.ny) + '\n';
  for (int iy = 0; iy < field.ny; ++iy) {
    for (int ix = 0; ix < field.nx; ++ix) {
      if (ix > 0) out += ',';
      out += format_double(field.at(ix, iy));
    }
    out += '\n';
  }
  return out;
}

namespace {

const char* terminus_name(Terminus t) {
  switch (t) {
    case Terminus::kZero:
      return "zero";
    case Terminus::kBBoxExit:
      return "bbox-exit";
    case Terminus::kStepLimit:
      return "step-limit";
    case Terminus::kTruncated:
      return "truncated";
  }
  return "unknown";
}

}  // namespace

Json trace_summary_json(const LocusTrace& trace, const RationalMap& w) {
  Json origin = nullptr;
  if (trace.origin) {
    origin = Json{
        {"pole", complex_to_json(
                     w.poles()[std::size_t(trace.origin->pole_index)].location)},
        {"pole_index", trace.origin->pole_index},
        {"branch", trace.origin->branch},
    };
  }
  Json terminus = Json{{"kind", terminus_name(trace.terminus)}};
  if (trace.terminus == Terminus::kZero && trace.terminus_zero_index >= 0) {
    terminus["zero"] =
        complex_to_json(w.zeros()[std::size_t(trace.terminus_zero_index)].location);
    terminus["distance"] = trace.terminus_zero_distance;
  }
  if (!trace.diagnostic.empty()) terminus["diagnostic"] = trace.diagnostic;
  if (!trace.points.empty())
    terminus["point"] = complex_to_json(trace.points.back().s);

  return Json{
      {"alpha", trace.alpha},
      {"n_points", trace.points.size()},
      {"origin", std::move(origin)},
      {"terminus", std::move(terminus)},
      {"monotone_gain", trace.monotone_gain},
      {"first_violation", trace.first_violation},
      {"saddle_annotations", trace.saddle_annotations},
  };
}

namespace {

Json region_to_json(const RegionReport& region, bool include_boundaries) {
  Json contained = Json::array();
  for (Complex c : region.contained_critical_points) contained.push_back(complex_to_json(c));
  Json j{
      {"id", region.id},
      {"cell_count", region.cell_count},
      {"touches_border", region.touches_border},
      {"contained_critical_points", std::move(contained)},
      {"contains_w_zero", region.contains_w_zero},
      {"flagged", region.flagged},
      {"dismissed_at_2x", region.dismissed_at_2x},
  };
  if (include_boundaries) j["boundary"] = polylines_to_json(region.boundary);
  return j;
}

Json fraction_or_null(double fraction) {
  if (fraction < 0.0) return nullptr;
  return fraction;
}

}  // namespace

Json audit_report_to_json(const SmaleAuditReport& report, const Polynomial& f,
                          bool include_boundaries) {
  Json critical = Json::array();
  for (const RootCluster& c : report.critical)
    critical.push_back(Json{{"theta", complex_to_json(c.location)},
                            {"multiplicity", c.multiplicity}});

  Json per_theta = Json::array();
  for (const ThetaAudit& audit : report.per_theta) {
    Json regions = Json::array();
    for (const RegionReport& region : audit.regions)
      regions.push_back(region_to_json(region, include_boundaries));
    per_theta.push_back(Json{
        {"index", audit.index},
        {"theta", complex_to_json(audit.theta)},
        {"multiplicity", audit.multiplicity},
        {"limit_at_theta", audit.limit_at_theta},
        {"theta_in_region", audit.theta_in_region},
        {"regions", std::move(regions)},
        {"regions_without_critical_points", audit.regions_without_critical_points},
        {"inside_samples", audit.inside_samples},
        {"outside_samples", audit.outside_samples},
        {"boundary_excluded", audit.boundary_excluded},
        {"quotient_gt1_inside_fraction", fraction_or_null(audit.quotient_gt1_inside_fraction)},
        {"quotient_le1_outside_fraction",
         fraction_or_null(audit.quotient_le1_outside_fraction)},
    });
  }

  Json counterexamples = Json::array();
  for (const Counterexample& ce : report.counterexamples)
    counterexamples.push_back(Json{
        {"s", complex_to_json(ce.s)},
        {"theta_index", ce.theta_index},
        {"quotient", std::isfinite(ce.quotient)
                         ? ce.quotient
                         : std::numeric_limits<double>::max()},
        {"inside_region", ce.inside_region},
    });

  return Json{
      {"schema_version", kSchemaVersion},
      {"polynomial", polynomial_to_text(f)},
      {"degree", f.degree()},
      {"critical_points", std::move(critical)},
      {"per_theta", std::move(per_theta)},
      {"counterexamples", std::move(counterexamples)},
      {"extremal",
       Json{{"s", complex_to_json(report.extremal.s)}, {"value", report.extremal.value}}},
      {"config",
       Json{{"bbox", Json::array({report.config.bbox.sigma_min, report.config.bbox.sigma_max,
                                  report.config.bbox.t_min, report.config.bbox.t_max})},
            {"resolution", Json::array({report.config.nx, report.config.ny})},
            {"n_samples", report.config.n_samples},
            {"seed", report.config.seed}}},
  };
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace locuslab
