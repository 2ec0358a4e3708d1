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

#include "locuslab/svg.hpp"

#include <algorithm>
#include <cmath>

#include "locuslab/io.hpp"

namespace locuslab {

SvgFigure::SvgFigure(const BBox& bbox, double size_px) : bbox_(bbox), size_px_(size_px) {
  scale_x_ = size_px_ / bbox_.width();
  scale_y_ = size_px_ / bbox_.height();
}

Complex SvgFigure::to_pixel(Complex data) const {
  return Complex((data.real() - bbox_.sigma_min) * scale_x_,
                 size_px_ - (data.imag() - bbox_.t_min) * scale_y_);
}

void SvgFigure::add_polyline(const std::vector<Complex>& points, bool closed,
                             const std::string& stroke, double stroke_width_px,
                             double opacity) {
  if (points.size() < 2) return;
  std::string attr = closed ? "<polygon" : "<polyline";
  attr += " points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) attr += ' ';
    attr += format_double(points[i].real()) + ',' + format_double(points[i].imag());
  }
  attr += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
          format_double(stroke_width_px) +
          "\" vector-effect=\"non-scaling-stroke\" stroke-opacity=\"" +
          format_double(opacity) + "\"/>";
  data_layer_.push_back(std::move(attr));
}

void SvgFigure::add_filled_polyline(const std::vector<Complex>& points, const std::string& fill,
                                    double opacity) {
  if (points.size() < 3) return;
  std::string attr = "<polygon points=\"";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) attr += ' ';
    attr += format_double(points[i].real()) + ',' + format_double(points[i].imag());
  }
  attr += "\" fill=\"" + fill + "\" fill-opacity=\"" + format_double(opacity) +
          "\" stroke=\"none\"/>";
  data_layer_.push_back(std::move(attr));
}

void SvgFigure::add_circle_marker(Complex center, const std::string& color, double radius_px,
                                  bool filled) {
  const Complex p = to_pixel(center);
  pixel_layer_.push_back("<circle cx=\"" + format_double(p.real()) + "\" cy=\"" +
                         format_double(p.imag()) + "\" r=\"" + format_double(radius_px) +
                         "\" fill=\"" + (filled ? color : std::string("none")) +
                         "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>");
}

void SvgFigure::add_cross_marker(Complex center, const std::string& color, double half_px) {
  const Complex p = to_pixel(center);
  auto line = [&](double dx1, double dy1, double dx2, double dy2) {
    pixel_layer_.push_back(
        "<line x1=\"" + format_double(p.real() + dx1) + "\" y1=\"" +
        format_double(p.imag() + dy1) + "\" x2=\"" + format_double(p.real() + dx2) +
        "\" y2=\"" + format_double(p.imag() + dy2) + "\" stroke=\"" + color +
        "\" stroke-width=\"1.8\"/>");
  };
  line(-half_px, -half_px, half_px, half_px);
  line(-half_px, half_px, half_px, -half_px);
}

std::string SvgFigure::gain_color(double gain) {
  static const char* ramp[] = {"#1a237e", "#283593", "#3949ab", "#1e88e5", "#00897b",
                               "#7cb342", "#fdd835", "#fb8c00", "#e53935"};
  const double lg = std::log10(std::max(gain, 1e-12));
  const double t = std::clamp((lg + 3.0) / 9.0, 0.0, 1.0);  // 1e-3 .. 1e6
  const int idx = std::min(8, int(t * 9.0));
  return ramp[idx];
}

std::string SvgFigure::render() const {
  const std::string w = format_double(size_px_);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" +
                    w + "\" viewBox=\"0 0 " + w + ' ' + w + "\">\n";
  out += "<rect width=\"" + w + "\" height=\"" + w + "\" fill=\"#ffffff\"/>\n";
  // Data group: y flips so t grows upward; geometry stays in data units.
  out += "<g transform=\"translate(" + format_double(-bbox_.sigma_min * scale_x_) + "," +
         format_double(size_px_ + bbox_.t_min * scale_y_) + ") scale(" +
         format_double(scale_x_) + "," + format_double(-scale_y_) + ")\">\n";
  for (const std::string& el : data_layer_) {
    out += el;
    out += '\n';
  }
  out += "</g>\n";
  for (const std::string& el : pixel_layer_) {
    out += el;
    out += '\n';
  }
  out += "</svg>\n";
  return out;
}

}  // namespace locuslab
