#pragma once

#include <cmath>
#include <numbers>

#include "cwave/field.hpp"
#include "cwave/grid.hpp"
#include "cwave/solver.hpp"

namespace cwave::testing {

inline GridSpec unit_square_spec(int res, double dt, double horizon,
                                 std::vector<int> gamma1 = {1, 3}) {
  GridSpec spec;
  spec.dim = 2;
  spec.lo = {0.0, 0.0, 0.0};
  spec.hi = {1.0, 1.0, 0.0};
  spec.npts = {res, res, 1};
  spec.gamma1_faces = std::move(gamma1);
  spec.dt = dt;
  spec.horizon = horizon;
  return spec;
}

inline WaveField sampled_field(const Grid& grid, const PointTimeFn& fn) {
  WaveField field(grid, 0, grid.n_time_samples());
  for (int k = 0; k < grid.n_time_samples(); ++k) {
    const double t = grid.time_at(k);
    auto s = field.slice(k);
    for (std::size_t p = 0; p < s.size(); ++p) s[p] = fn(grid.point(p), t);
  }
  return field;
}

// Product eigenmode of the unit square: solves w_tt = Lap w with zero
// boundary data.
inline double standing_wave(const std::array<double, 3>& x, double t) {
  const double pi = std::numbers::pi;
  return std::sin(pi * x[0]) * std::sin(pi * x[1]) * std::cos(std::sqrt(2.0) * pi * t);
}

inline ScalarField standing_wave_position(const Grid& grid) {
  return make_field(grid, [](const std::array<double, 3>& x) {
    const double pi = std::numbers::pi;
    return std::sin(pi * x[0]) * std::sin(pi * x[1]);
  });
}

inline double max_error_at(const WaveField& field, int k, const PointTimeFn& exact) {
  const Grid& grid = field.grid();
  const double t = grid.time_at(k);
  auto s = field.slice(k);
  double m = 0.0;
  for (std::size_t p = 0; p < s.size(); ++p) {
    m = std::max(m, std::abs(s[p] - exact(grid.point(p), t)));
  }
  return m;
}

}  // namespace cwave::testing
