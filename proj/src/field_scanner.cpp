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

#include "locuslab/field_scanner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <queue>
#include <thread>
#include <unordered_map>
#include <vector>

#include "locuslab/parallel.hpp"

namespace locuslab {

int worker_count() {
  int n = int(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  n = std::min(n, 8);
  if (const char* env = std::getenv("LOCUSLAB_THREADS")) {
    const int cap = std::atoi(env);
    n = std::min(n, std::max(1, cap));
  }
  return n;
}

void parallel_chunks(int n, const std::function<void(int, int)>& fn) {
  const int workers = std::min(worker_count(), std::max(1, n));
  if (workers == 1 || n < 2) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

std::pair<int, int> GridField::nearest_node(Complex s) const {
  int ix = int(std::lround((s.real() - bbox.sigma_min) / dx()));
  int iy = int(std::lround((s.imag() - bbox.t_min) / dy()));
  ix = std::clamp(ix, 0, nx - 1);
  iy = std::clamp(iy, 0, ny - 1);
  return {ix, iy};
}

GridField sample_grid(const std::function<double(Complex)>& fn, const BBox& bbox, int nx,
                      int ny) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("sample_grid: nx, ny must be >= 2");
  if (bbox.degenerate()) throw std::invalid_argument("sample_grid: degenerate bbox");
  GridField f;
  f.bbox = bbox;
  f.nx = nx;
  f.ny = ny;
  f.values.assign(std::size_t(nx) * std::size_t(ny),
                  std::numeric_limits<double>::infinity());
  parallel_chunks(ny, [&](int iy0, int iy1) {
    for (int iy = iy0; iy < iy1; ++iy)
      for (int ix = 0; ix < nx; ++ix) {
        double v;
        try {
          v = fn(f.node(ix, iy));
        } catch (const std::domain_error&) {
          v = std::numeric_limits<double>::infinity();
        }
        if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
        f.values[std::size_t(f.index(ix, iy))] = v;
      }
  });
  return f;
}

namespace {

// Edge identifiers on the node lattice: horizontal edge (ix,iy)-(ix+1,iy) and
// vertical edge (ix,iy)-(ix,iy+1).
std::int64_t edge_key(int nx, int ix, int iy, bool vertical) {
  return 2 * (std::int64_t(iy) * nx + ix) + (vertical ? 1 : 0);
}

struct Crossing {
  std::int64_t key;
  Complex point;
};

struct Segment {
  Crossing a, b;
};

// Walks cells and emits crossing segments. The corner/edge policy is
// supplied by the caller: `inside` classifies a node value, `crossing_t`
// returns the interpolation parameter in [0,1] or a negative sentinel, and
// `center_inside` resolves the two ambiguous diagonal patterns.
struct CellWalker {
  std::function<bool(double)> inside;
  std::function<double(double, double)> crossing_t;
  std::function<bool(const GridField&, int, int)> center_inside;

  std::vector<Segment> run(const GridField& f) const {
    std::vector<Segment> segments;
    for (int iy = 0; iy + 1 < f.ny; ++iy) {
      for (int ix = 0; ix + 1 < f.nx; ++ix) {
        const double v00 = f.at(ix, iy), v10 = f.at(ix + 1, iy);
        const double v01 = f.at(ix, iy + 1), v11 = f.at(ix + 1, iy + 1);
        const bool b00 = inside(v00), b10 = inside(v10);
        const bool b01 = inside(v01), b11 = inside(v11);

        struct EdgeSlot {
          bool present = false;
          Crossing c;
        };
        EdgeSlot bottom, right, top, left;
        auto probe = [&](EdgeSlot& slot, double va, double vb, bool ba, bool bb,
                         std::int64_t key, Complex pa, Complex pb) {
          if (ba == bb) return;
          const double t = crossing_t(va, vb);
          if (t < 0.0) return;
          slot.present = true;
          slot.c = Crossing{key, pa + t * (pb - pa)};
        };
        probe(bottom, v00, v10, b00, b10, edge_key(f.nx, ix, iy, false), f.node(ix, iy),
              f.node(ix + 1, iy));
        probe(right, v10, v11, b10, b11, edge_key(f.nx, ix + 1, iy, true), f.node(ix + 1, iy),
              f.node(ix + 1, iy + 1));
        probe(top, v01, v11, b01, b11, edge_key(f.nx, ix, iy + 1, false), f.node(ix, iy + 1),
              f.node(ix + 1, iy + 1));
        probe(left, v00, v01, b00, b01, edge_key(f.nx, ix, iy, true), f.node(ix, iy),
              f.node(ix, iy + 1));

        const int count =
            int(bottom.present) + int(right.present) + int(top.present) + int(left.present);
        auto emit = [&](const EdgeSlot& p, const EdgeSlot& q) {
          if (p.c.point == q.c.point) return;  // degenerate after clamping
          segments.push_back(Segment{p.c, q.c});
        };

        if (count == 2) {
          const EdgeSlot* found[2];
          int k = 0;
          for (const EdgeSlot* e : {&bottom, &right, &top, &left})
            if (e->present) found[k++] = e;
          emit(*found[0], *found[1]);
        } else if (count == 4) {
          // Diagonal patterns; connect around the corners left open by the
          // center sample.
          const bool center = center_inside(f, ix, iy);
          const bool diag_00_11 = (b00 == b11) && b00;  // inside corners on the main diagonal
          if (diag_00_11 == center) {
            emit(bottom, right);
            emit(top, left);
          } else {
            emit(bottom, left);
            emit(top, right);
          }
        }
      }
    }
    return segments;
  }
};

struct StitchedChain {
  Polyline poly;
  std::int64_t head_key = -1;  // edge key of the first vertex
};

std::vector<StitchedChain> stitch_chains(const std::vector<Segment>& segments) {
  std::unordered_map<std::int64_t, std::vector<int>> by_edge;
  by_edge.reserve(segments.size() * 2);
  for (int i = 0; i < int(segments.size()); ++i) {
    by_edge[segments[std::size_t(i)].a.key].push_back(i);
    by_edge[segments[std::size_t(i)].b.key].push_back(i);
  }

  std::vector<bool> used(segments.size(), false);
  std::vector<StitchedChain> chains;

  auto next_at = [&](std::int64_t key, int self) -> int {
    const auto it = by_edge.find(key);
    if (it == by_edge.end() || it->second.size() != 2) return -1;  // dead end or junction
    for (int idx : it->second)
      if (idx != self && !used[std::size_t(idx)]) return idx;
    return -1;
  };

  for (int start = 0; start < int(segments.size()); ++start) {
    if (used[std::size_t(start)]) continue;
    used[std::size_t(start)] = true;

    std::vector<Crossing> chain{segments[std::size_t(start)].a, segments[std::size_t(start)].b};
    bool closed = false;

    // Extend forward from the tail.
    int current = start;
    while (true) {
      const int nxt = next_at(chain.back().key, current);
      if (nxt < 0) break;
      const Segment& seg = segments[std::size_t(nxt)];
      const Crossing& incoming =
          seg.a.key == chain.back().key ? seg.b : seg.a;
      used[std::size_t(nxt)] = true;
      if (incoming.key == chain.front().key) {
        closed = true;
        break;
      }
      chain.push_back(incoming);
      current = nxt;
    }
    // Extend backward from the head.
    if (!closed) {
      current = start;
      while (true) {
        const int nxt = next_at(chain.front().key, current);
        if (nxt < 0) break;
        const Segment& seg = segments[std::size_t(nxt)];
        const Crossing& incoming =
            seg.a.key == chain.front().key ? seg.b : seg.a;
        used[std::size_t(nxt)] = true;
        if (incoming.key == chain.back().key) {
          closed = true;
          break;
        }
        chain.insert(chain.begin(), incoming);
        current = nxt;
      }
    }

    StitchedChain out;
    out.poly.closed = closed;
    out.head_key = chain.front().key;
    out.poly.points.reserve(chain.size());
    for (const Crossing& c : chain)
      if (out.poly.points.empty() || out.poly.points.back() != c.point)
        out.poly.points.push_back(c.point);
    if (out.poly.points.size() >= 2) chains.push_back(std::move(out));
  }
  return chains;
}

std::vector<Polyline> stitch(const std::vector<Segment>& segments) {
  std::vector<Polyline> polylines;
  for (StitchedChain& c : stitch_chains(segments)) polylines.push_back(std::move(c.poly));
  return polylines;
}

}  // namespace

std::vector<Polyline> contour_extract(const GridField& field, double level) {
  if (!std::isfinite(level)) throw std::invalid_argument("contour_extract: level must be finite");
  CellWalker walker;
  walker.inside = [level](double v) { return v < level; };
  walker.crossing_t = [level](double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return 0.5;
    if (a == b) return 0.5;
    // Keep vertices strictly interior to the edge: a crossing exactly on a
    // node would coincide with crossings of the adjacent edges and break the
    // edge-key stitching.
    return std::clamp((level - a) / (b - a), 1e-9, 1.0 - 1e-9);
  };
  walker.center_inside = [level](const GridField& f, int ix, int iy) {
    const double c =
        (f.at(ix, iy) + f.at(ix + 1, iy) + f.at(ix, iy + 1) + f.at(ix + 1, iy + 1)) / 4.0;
    return c <= level;  // ties go to the below side, matching 4-connectivity
  };
  return stitch(walker.run(field));
}

std::vector<Region> connected_components(const GridField& field,
                                         const std::function<bool(double)>& pred) {
  const int nx = field.nx, ny = field.ny;
  std::vector<int> label(std::size_t(nx) * std::size_t(ny), -1);
  std::vector<Region> regions;

  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int idx = field.index(ix, iy);
      if (label[std::size_t(idx)] >= 0 || !pred(field.values[std::size_t(idx)])) continue;

      Region region;
      region.id = int(regions.size());
      std::queue<std::pair<int, int>> queue;
      queue.push({ix, iy});
      label[std::size_t(idx)] = region.id;
      while (!queue.empty()) {
        const auto [cx, cy] = queue.front();
        queue.pop();
        region.cells.push_back(field.index(cx, cy));
        if (cx == 0 || cy == 0 || cx == nx - 1 || cy == ny - 1)
          region.touches_grid_border = true;
        const std::pair<int, int> neighbors[4] = {
            {cx - 1, cy}, {cx + 1, cy}, {cx, cy - 1}, {cx, cy + 1}};
        for (const auto& [nx2, ny2] : neighbors) {
          if (nx2 < 0 || ny2 < 0 || nx2 >= nx || ny2 >= ny) continue;
          const int nidx = field.index(nx2, ny2);
          if (label[std::size_t(nidx)] >= 0 || !pred(field.values[std::size_t(nidx)])) continue;
          label[std::size_t(nidx)] = region.id;
          queue.push({nx2, ny2});
        }
      }
      std::sort(region.cells.begin(), region.cells.end());
      regions.push_back(std::move(region));
    }
  }
  if (regions.empty()) return regions;

  // Boundaries from an indicator grid padded with one outside ring, so that
  // components touching the grid border still get closed polylines.
  GridField indicator;
  indicator.bbox = BBox{field.bbox.sigma_min - field.dx(), field.bbox.sigma_max + field.dx(),
                        field.bbox.t_min - field.dy(), field.bbox.t_max + field.dy()};
  indicator.nx = nx + 2;
  indicator.ny = ny + 2;
  indicator.values.assign(std::size_t(indicator.nx) * std::size_t(indicator.ny), 0.0);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      if (label[std::size_t(field.index(ix, iy))] >= 0)
        indicator.values[std::size_t(indicator.index(ix + 1, iy + 1))] = 1.0;

  CellWalker walker;
  walker.inside = [](double v) { return v < 0.5; };
  walker.crossing_t = [](double a, double b) { return a == b ? 0.5 : (0.5 - a) / (b - a); };
  walker.center_inside = [](const GridField& f, int ix, int iy) {
    const double c =
        (f.at(ix, iy) + f.at(ix + 1, iy) + f.at(ix, iy + 1) + f.at(ix + 1, iy + 1)) / 4.0;
    return c <= 0.5;  // separate diagonally-touching region nodes
  };
  const std::vector<Segment> segments = walker.run(indicator);

  // Assign each polyline to the region owning the inside endpoint of its
  // first crossing edge.
  auto region_of_edge = [&](std::int64_t key) -> int {
    const bool vertical = (key & 1) != 0;
    const std::int64_t node = key >> 1;
    const int ix = int(node % indicator.nx), iy = int(node / indicator.nx);
    const std::pair<int, int> ends[2] = {{ix, iy},
                                         vertical ? std::pair<int, int>{ix, iy + 1}
                                                  : std::pair<int, int>{ix + 1, iy}};
    for (const auto& [px, py] : ends) {
      const int ox = px - 1, oy = py - 1;
      if (ox < 0 || oy < 0 || ox >= nx || oy >= ny) continue;
      const int l = label[std::size_t(field.index(ox, oy))];
      if (l >= 0) return l;
    }
    return -1;
  };

  for (StitchedChain& chain : stitch_chains(segments)) {
    const int assigned = region_of_edge(chain.head_key);
    if (assigned >= 0) regions[std::size_t(assigned)].boundary.push_back(std::move(chain.poly));
  }
  return regions;
}

std::vector<Polyline> phase_level_scan(const RationalMap& w, double alpha, const BBox& bbox,
                                       int nx, int ny) {
  const GridField residual = sample_grid(
      [&](Complex s) { return wrap_to_principal(w.phase(s) - alpha); }, bbox, nx, ny);

  CellWalker walker;
  walker.inside = [](double r) { return r > 0.0; };
  // A genuine zero crossing moves the short way through 0; the +-pi cut of
  // the wrapped residual jumps by ~2*pi and is rejected.
  walker.crossing_t = [](double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return -1.0;
    if (std::abs(a - b) > kPi) return -1.0;
    return a == b ? 0.5 : std::clamp(a / (a - b), 1e-9, 1.0 - 1e-9);
  };
  walker.center_inside = [&](const GridField& f, int ix, int iy) {
    const Complex center = (f.node(ix, iy) + f.node(ix + 1, iy + 1)) / 2.0;
    try {
      return wrap_to_principal(w.phase(center) - alpha) > 0.0;
    } catch (const std::domain_error&) {
      return true;
    }
  };
  return stitch(walker.run(residual));
}

int region_at(const std::vector<Region>& regions, const GridField& field, Complex s) {
  const auto [ix, iy] = field.nearest_node(s);
  const int idx = field.index(ix, iy);
  for (const Region& r : regions)
    if (std::binary_search(r.cells.begin(), r.cells.end(), idx)) return r.id;
  return -1;
}

}  // namespace locuslab
