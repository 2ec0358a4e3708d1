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

#ifndef LOCUSLAB_SVG_HPP
#define LOCUSLAB_SVG_HPP

#include <string>
#include <vector>

#include "locuslab/types.hpp"

namespace locuslab {

/// Static SVG figure over a (sigma, t) window. Polyline points are written
/// verbatim in data coordinates inside a single transformed group, so the
/// plotted geometry can be re-extracted exactly; markers are drawn in pixel
/// space on top.
class SvgFigure {
 public:
  SvgFigure(const BBox& bbox, double size_px = 800.0);

  void add_polyline(const std::vector<Complex>& points, bool closed, const std::string& stroke,
                    double stroke_width_px = 1.2, double opacity = 1.0);
  void add_filled_polyline(const std::vector<Complex>& points, const std::string& fill,
                           double opacity);
  void add_circle_marker(Complex center, const std::string& color, double radius_px = 4.0,
                         bool filled = true);
  void add_cross_marker(Complex center, const std::string& color, double half_px = 5.0);

  /// Stroke color for a gain value: log-scaled dark-to-warm ramp.
  static std::string gain_color(double gain);

  std::string render() const;

 private:
  Complex to_pixel(Complex data) const;

  BBox bbox_;
  double size_px_;
  double scale_x_, scale_y_;
  std::vector<std::string> data_layer_;    // inside the transformed group
  std::vector<std::string> pixel_layer_;   // markers, pixel coordinates
};

}  // namespace locuslab

#endif  // LOCUSLAB_SVG_HPP
