#include "cwave/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cwave {

double CoefficientSet::max_c() const {
  return *std::max_element(c.begin(), c.end());
}

double CoefficientSet::min_c() const {
  return *std::min_element(c.begin(), c.end());
}

double CoefficientSet::c_bound() const {
  const double mn = min_c();
  if (!(mn > 0.0)) throw std::invalid_argument("wave speed must be positive everywhere");
  return std::max(max_c(), 1.0 / mn);
}

ScalarField make_field(const Grid& grid, const PointFn& fn) {
  ScalarField out(grid.n_points());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = fn(grid.point(p));
  return out;
}

ScalarField constant_field(const Grid& grid, double value) {
  return ScalarField(grid.n_points(), value);
}

VectorField zero_vector_field(const Grid& grid) {
  VectorField v;
  v.dim = grid.dim;
  for (int a = 0; a < grid.dim; ++a) v.comp[a] = constant_field(grid, 0.0);
  return v;
}

CoefficientSet constant_coefficients(const Grid& grid, double c, double q1, double q0) {
  CoefficientSet s;
  s.c = constant_field(grid, c);
  s.q1 = constant_field(grid, q1);
  s.q0 = constant_field(grid, q0);
  s.q = zero_vector_field(grid);
  return s;
}

SourceProfile zero_profile(const Grid& grid) {
  SourceProfile p;
  p.f0 = constant_field(grid, 0.0);
  p.f1 = constant_field(grid, 0.0);
  p.f2 = constant_field(grid, 0.0);
  p.f = zero_vector_field(grid);
  return p;
}

ScalarField volume_weights(const Grid& grid) {
  ScalarField w(grid.n_points(), 1.0);
  for (std::size_t p = 0; p < w.size(); ++p) {
    const auto c = grid.coords(p);
    double ww = 1.0;
    for (int a = 0; a < grid.dim; ++a) {
      const bool edge = (c[a] == 0 || c[a] == grid.npts[a] - 1);
      ww *= grid.h[a] * (edge ? 0.5 : 1.0);
    }
    w[p] = ww;
  }
  return w;
}

double integrate(const ScalarField& weights, std::span<const double> values) {
  double s = 0.0;
  for (std::size_t p = 0; p < values.size(); ++p) s += weights[p] * values[p];
  return s;
}

double l2_norm_sq(const Grid& grid, std::span<const double> values) {
  const ScalarField w = volume_weights(grid);
  double s = 0.0;
  for (std::size_t p = 0; p < values.size(); ++p) s += w[p] * values[p] * values[p];
  return s;
}

double profile_l2_sq(const Grid& grid, const SourceProfile& p) {
  double s = l2_norm_sq(grid, p.f0) + l2_norm_sq(grid, p.f1) + l2_norm_sq(grid, p.f2);
  for (int a = 0; a < grid.dim; ++a) s += l2_norm_sq(grid, p.f.comp[a]);
  return s;
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double laplacian_at(const Grid& grid, std::span<const double> f, int ix, int iy, int iz) {
  const std::size_t p = grid.index(ix, iy, iz);
  const std::size_t sx = 1;
  const std::size_t sy = std::size_t(grid.npts[0]);
  const std::size_t sz = sy * std::size_t(grid.npts[1]);
  double lap = (f[p + sx] - 2.0 * f[p] + f[p - sx]) / (grid.h[0] * grid.h[0]) +
               (f[p + sy] - 2.0 * f[p] + f[p - sy]) / (grid.h[1] * grid.h[1]);
  if (grid.dim > 2) lap += (f[p + sz] - 2.0 * f[p] + f[p - sz]) / (grid.h[2] * grid.h[2]);
  return lap;
}

std::array<double, 3> gradient_at(const Grid& grid, std::span<const double> f, int ix, int iy,
                                  int iz) {
  const std::size_t p = grid.index(ix, iy, iz);
  const std::size_t stride[3] = {1, std::size_t(grid.npts[0]),
                                 std::size_t(grid.npts[0]) * std::size_t(grid.npts[1])};
  std::array<double, 3> g{0.0, 0.0, 0.0};
  for (int a = 0; a < grid.dim; ++a) {
    g[a] = (f[p + stride[a]] - f[p - stride[a]]) / (2.0 * grid.h[a]);
  }
  return g;
}

double derivative_any(const Grid& grid, std::span<const double> f, const std::array<int, 3>& c,
                      int axis) {
  const std::size_t stride[3] = {1, std::size_t(grid.npts[0]),
                                 std::size_t(grid.npts[0]) * std::size_t(grid.npts[1])};
  const std::size_t p = grid.index(c[0], c[1], c[2]);
  const std::size_t s = stride[axis];
  const double h = grid.h[axis];
  const int n = grid.npts[axis];
  const int i = c[axis];
  if (i == 0) return (-3.0 * f[p] + 4.0 * f[p + s] - f[p + 2 * s]) / (2.0 * h);
  if (i == n - 1) return (3.0 * f[p] - 4.0 * f[p - s] + f[p - 2 * s]) / (2.0 * h);
  return (f[p + s] - f[p - s]) / (2.0 * h);
}

double second_derivative_any(const Grid& grid, std::span<const double> f,
                             const std::array<int, 3>& c, int axis) {
  const std::size_t stride[3] = {1, std::size_t(grid.npts[0]),
                                 std::size_t(grid.npts[0]) * std::size_t(grid.npts[1])};
  const std::size_t p = grid.index(c[0], c[1], c[2]);
  const std::size_t s = stride[axis];
  const double h2 = grid.h[axis] * grid.h[axis];
  const int n = grid.npts[axis];
  const int i = c[axis];
  if (i > 0 && i < n - 1) return (f[p + s] - 2.0 * f[p] + f[p - s]) / h2;
  if (n >= 4) {
    if (i == 0) return (2.0 * f[p] - 5.0 * f[p + s] + 4.0 * f[p + 2 * s] - f[p + 3 * s]) / h2;
    return (2.0 * f[p] - 5.0 * f[p - s] + 4.0 * f[p - 2 * s] - f[p - 3 * s]) / h2;
  }
  // Three points along the axis: the centered stencil at the middle point,
  // exact on quadratics.
  if (i == 0) return (f[p] - 2.0 * f[p + s] + f[p + 2 * s]) / h2;
  return (f[p] - 2.0 * f[p - s] + f[p - 2 * s]) / h2;
}

double laplacian_any(const Grid& grid, std::span<const double> f, const std::array<int, 3>& c) {
  double lap = 0.0;
  for (int a = 0; a < grid.dim; ++a) lap += second_derivative_any(grid, f, c, a);
  return lap;
}

ScalarField laplacian_field(const Grid& grid, std::span<const double> f) {
  ScalarField out(grid.n_points());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = laplacian_any(grid, f, grid.coords(p));
  return out;
}

std::array<ScalarField, 3> gradient_field(const Grid& grid, std::span<const double> f) {
  std::array<ScalarField, 3> out;
  for (int a = 0; a < grid.dim; ++a) {
    out[a].resize(grid.n_points());
    for (std::size_t p = 0; p < out[a].size(); ++p) {
      out[a][p] = derivative_any(grid, f, grid.coords(p), a);
    }
  }
  return out;
}

ScalarField random_bounded_field(const Grid& grid, SeededUniform& rng, double bound) {
  ScalarField out(grid.n_points());
  for (double& v : out) v = bound * rng.symmetric();
  return out;
}

ScalarField sine_series_field(const Grid& grid, SeededUniform& rng, int modes, double amplitude) {
  if (modes < 1) throw std::invalid_argument("sine series needs at least one mode");
  std::vector<double> a(static_cast<std::size_t>(modes));
  for (double& v : a) v = rng.symmetric();

  ScalarField out(grid.n_points(), 0.0);
  for (std::size_t p = 0; p < out.size(); ++p) {
    const auto x = grid.point(p);
    double s = 0.0;
    for (int k = 1; k <= modes; ++k) {
      double prod = a[std::size_t(k - 1)];
      for (int ax = 0; ax < grid.dim; ++ax) {
        const double len = grid.hi[ax] - grid.lo[ax];
        prod *= std::sin(k * std::numbers::pi * (x[ax] - grid.lo[ax]) / len);
      }
      s += prod;
    }
    out[p] = s;
  }
  const double m = max_abs(out);
  if (m > 0.0) {
    const double scale = amplitude / m;
    for (double& v : out) v *= scale;
  }
  return out;
}

SourceProfile random_profile(const Grid& grid, SeededUniform& rng, int modes, double amplitude) {
  SourceProfile p;
  p.f0 = sine_series_field(grid, rng, modes, amplitude);
  p.f1 = sine_series_field(grid, rng, modes, amplitude);
  p.f2 = sine_series_field(grid, rng, modes, amplitude);
  p.f.dim = grid.dim;
  for (int a = 0; a < grid.dim; ++a) p.f.comp[a] = sine_series_field(grid, rng, modes, amplitude);
  return p;
}

SourceProfile scaled_profile(const SourceProfile& p, double factor) {
  SourceProfile out = p;
  auto scale = [factor](ScalarField& f) {
    for (double& v : f) v *= factor;
  };
  scale(out.f0);
  scale(out.f1);
  scale(out.f2);
  for (int a = 0; a < out.f.dim; ++a) scale(out.f.comp[a]);
  return out;
}

}  // namespace cwave
