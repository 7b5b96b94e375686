#include "cwave/grid.hpp"

#include <algorithm>
#include <cmath>

namespace cwave {

namespace {
const char* kFaceNames[6] = {"x_low", "x_high", "y_low", "y_high", "z_low", "z_high"};
}

std::string face_name(int face_id) {
  if (face_id < 0 || face_id >= 6) throw std::invalid_argument("face id out of range");
  return kFaceNames[face_id];
}

int face_id_from_name(const std::string& name) {
  for (int i = 0; i < 6; ++i) {
    if (name == kFaceNames[i]) return i;
  }
  throw std::invalid_argument("unknown face name: " + name);
}

double Grid::cfl_limit(double cmax) const {
  return kCflSafety * min_spacing() / (cmax * std::sqrt(double(dim)));
}

std::vector<Face> Grid::faces() const {
  std::vector<Face> out;
  for (int a = 0; a < dim; ++a) {
    out.push_back(Face{a, false});
    out.push_back(Face{a, true});
  }
  return out;
}

std::vector<Face> Grid::part_faces(BoundaryPart part) const {
  std::vector<Face> out;
  for (const Face& f : faces()) {
    if (face_label[f.id()] == part) out.push_back(f);
  }
  return out;
}

Grid build_grid(const GridSpec& spec) {
  if (spec.dim != 2 && spec.dim != 3) {
    throw std::invalid_argument("grid dimension must be 2 or 3");
  }
  Grid g;
  g.dim = spec.dim;
  g.lo = spec.lo;
  g.hi = spec.hi;
  g.npts = spec.npts;
  for (int a = 0; a < g.dim; ++a) {
    if (g.npts[a] < 3) throw std::invalid_argument("resolution must be at least 3 per axis");
    if (!(g.hi[a] > g.lo[a])) throw std::invalid_argument("box extents must have hi > lo");
    g.h[a] = (g.hi[a] - g.lo[a]) / double(g.npts[a] - 1);
  }
  for (int a = g.dim; a < 3; ++a) {
    g.npts[a] = 1;
    g.h[a] = 0.0;
    g.lo[a] = 0.0;
    g.hi[a] = 0.0;
  }

  // Face labels: gamma1 listed explicitly, everything else is gamma0.
  g.face_label.fill(BoundaryPart::gamma0);
  std::vector<int> seen;
  for (int id : spec.gamma1_faces) {
    if (id < 0 || id >= 2 * g.dim) {
      throw std::invalid_argument("face label refers to a face outside the box: " +
                                  std::to_string(id));
    }
    if (std::find(seen.begin(), seen.end(), id) != seen.end()) {
      throw std::invalid_argument("face labeled twice: " + face_name(id));
    }
    seen.push_back(id);
    g.face_label[id] = BoundaryPart::gamma1;
  }

  if (!(spec.dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(spec.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  g.horizon = spec.horizon;
  g.half_steps = int(std::ceil(spec.horizon / spec.dt - 1e-9));
  g.dt = spec.horizon / double(g.half_steps);

  const double limit = g.cfl_limit(spec.cmax_hint);
  if (g.dt > limit * (1.0 + 1e-12)) throw CflError(g.dt, limit);
  return g;
}

}  // namespace cwave
