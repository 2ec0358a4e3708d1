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

#ifndef LOCUSLAB_FIELD_SCANNER_HPP
#define LOCUSLAB_FIELD_SCANNER_HPP

#include <functional>
#include <vector>

#include "locuslab/rational_map.hpp"
#include "locuslab/types.hpp"

namespace locuslab {

/// Scalar samples on the inclusive node lattice of a bbox: node (ix, iy)
/// sits at (sigma_min + ix*dx, t_min + iy*dy) with dx = width/(nx-1).
/// Singular evaluations are stored as +inf markers.
struct GridField {
  BBox bbox;
  int nx = 0, ny = 0;
  std::vector<double> values;  // row-major, index = iy*nx + ix

  double dx() const { return bbox.width() / (nx - 1); }
  double dy() const { return bbox.height() / (ny - 1); }
  double sigma_at(int ix) const { return bbox.sigma_min + ix * dx(); }
  double t_at(int iy) const { return bbox.t_min + iy * dy(); }
  Complex node(int ix, int iy) const { return Complex(sigma_at(ix), t_at(iy)); }
  int index(int ix, int iy) const { return iy * nx + ix; }
  double at(int ix, int iy) const { return values[std::size_t(index(ix, iy))]; }

  /// Nearest node to an arbitrary point, clamped into the grid.
  std::pair<int, int> nearest_node(Complex s) const;
};

/// 4-connected set of nodes satisfying a predicate, with its separating
/// boundary polylines (closed; they may pass up to one cell outside the bbox
/// where the set touches the grid border).
struct Region {
  int id = 0;
  std::vector<int> cells;  // node indices, ascending
  std::vector<Polyline> boundary;
  std::vector<Complex> contains;  // marked points, filled by callers
  bool touches_grid_border = false;
};

GridField sample_grid(const std::function<double(Complex)>& fn, const BBox& bbox, int nx,
                      int ny);

/// Marching-squares level curves with linear edge interpolation; ambiguous
/// cells are resolved by the cell-center sample (mean of the corners).
/// Returns closed and open polylines; empty when the level is never crossed.
std::vector<Polyline> contour_extract(const GridField& field, double level);

/// 4-connected labeling of the nodes satisfying pred, each component carrying
/// boundary polylines that separate its nodes from the rest of the grid.
std::vector<Region> connected_components(const GridField& field,
                                         const std::function<bool(double)>& pred);

/// Zero set of the wrap-aware phase residual wrap(arg W - alpha), extracted
/// with crossing detection that ignores the +-pi cut of the residual. The
/// independent brute-force realization of a constant-phase locus.
std::vector<Polyline> phase_level_scan(const RationalMap& w, double alpha, const BBox& bbox,
                                       int nx, int ny);

/// Index of the region containing the node nearest to s, or -1.
int region_at(const std::vector<Region>& regions, const GridField& field, Complex s);

}  // namespace locuslab

#endif  // LOCUSLAB_FIELD_SCANNER_HPP
