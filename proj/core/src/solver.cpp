#include "cwave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace cwave {

WaveField::WaveField(Grid grid, int first_index, int n_slices)
    : grid_(std::move(grid)), first_(first_index), count_(n_slices) {
  if (first_ < 0 || count_ < 1 || first_ + count_ > grid_.n_time_samples()) {
    throw std::invalid_argument("wave field window outside the grid time axis");
  }
  data_.assign(std::size_t(count_) * grid_.n_points(), 0.0);
}

std::span<double> WaveField::slice(int k) {
  if (!covers(k)) throw std::out_of_range("time index outside the stored window");
  const std::size_t n = grid_.n_points();
  return {data_.data() + std::size_t(k - first_) * n, n};
}

std::span<const double> WaveField::slice(int k) const {
  if (!covers(k)) throw std::out_of_range("time index outside the stored window");
  const std::size_t n = grid_.n_points();
  return {data_.data() + std::size_t(k - first_) * n, n};
}

ScalarField initial_acceleration(const Grid& grid, const CoefficientSet& coeffs,
                                 const ScalarField& w0, const ScalarField& w1) {
  ScalarField acc(grid.n_points());
  for (std::size_t p = 0; p < acc.size(); ++p) {
    const auto c = grid.coords(p);
    const double lap = laplacian_any(grid, w0, c);
    double conv = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
      conv += coeffs.q.comp[a][p] * derivative_any(grid, w0, c, a);
    }
    acc[p] = coeffs.c[p] * coeffs.c[p] * lap - coeffs.q1[p] * w1[p] - coeffs.q0[p] * w0[p] - conv;
  }
  return acc;
}

namespace {

struct BoundaryPoint {
  std::size_t flat;
  std::array<double, 3> x;
};

std::vector<BoundaryPoint> all_boundary_points(const Grid& grid) {
  std::vector<BoundaryPoint> out;
  for (std::size_t p = 0; p < grid.n_points(); ++p) {
    const auto c = grid.coords(p);
    if (grid.is_boundary(c)) out.push_back({p, grid.point(p)});
  }
  return out;
}

void apply_dirichlet(const std::vector<BoundaryPoint>& pts, const BoundaryFn& h, double t,
                     std::span<double> slice) {
  if (!h) {
    for (const auto& bp : pts) slice[bp.flat] = 0.0;
    return;
  }
  for (const auto& bp : pts) slice[bp.flat] = h(bp.x, t);
}

}  // namespace

WaveField march(const Grid& grid, const CoefficientSet& coeffs, const ScalarField& w0,
                const ScalarField& w1, const BoundaryFn& dirichlet, const SpacetimeSource& source,
                const MarchOptions& options) {
  const std::size_t n = grid.n_points();
  if (w0.size() != n || w1.size() != n || coeffs.c.size() != n || coeffs.q1.size() != n ||
      coeffs.q0.size() != n) {
    throw std::invalid_argument("field size does not match the grid");
  }
  for (int a = 0; a < grid.dim; ++a) {
    if (coeffs.q.comp[a].size() != n) {
      throw std::invalid_argument("gradient coefficient size does not match the grid");
    }
  }
  const double cmax = coeffs.max_c();
  const double limit = grid.cfl_limit(cmax);
  if (grid.dt > limit * (1.0 + 1e-12)) throw CflError(grid.dt, limit);

  const double dt = grid.dt;
  for (std::size_t p = 0; p < n; ++p) {
    if (std::abs(coeffs.q1[p]) * dt * 0.5 >= 1.0) {
      throw std::invalid_argument("damping too large for the time step");
    }
  }

  const int center = grid.center_index();
  const int radius =
      options.march_radius < 0 ? grid.half_steps : std::min(options.march_radius, grid.half_steps);
  WaveField field(grid, center - radius, 2 * radius + 1);

  const auto bpts = all_boundary_points(grid);

  // Compatibility of initial position with the boundary data at t = 0.
  {
    double mismatch = 0.0;
    for (const auto& bp : bpts) {
      const double hval = dirichlet ? dirichlet(bp.x, 0.0) : 0.0;
      mismatch = std::max(mismatch, std::abs(w0[bp.flat] - hval));
    }
    if (mismatch > 1e-12) {
      throw std::invalid_argument("initial position disagrees with the boundary data at t = 0");
    }
  }

  std::copy(w0.begin(), w0.end(), field.slice(center).begin());
  apply_dirichlet(bpts, dirichlet, 0.0, field.slice(center));
  if (radius == 0) return field;

  ScalarField scratch(n);
  source.fill(grid, center, scratch);

  // Taylor seed on both sides: w(+-dt) = w0 +- dt w1 + dt^2/2 (acc + S(.,0)).
  {
    const ScalarField acc = initial_acceleration(grid, coeffs, w0, w1);
    auto fwd = field.slice(center + 1);
    auto bwd = field.slice(center - 1);
    for (std::size_t p = 0; p < n; ++p) {
      const double curv = 0.5 * dt * dt * (acc[p] + scratch[p]);
      fwd[p] = w0[p] + dt * w1[p] + curv;
      bwd[p] = w0[p] - dt * w1[p] + curv;
    }
    apply_dirichlet(bpts, dirichlet, dt, fwd);
    apply_dirichlet(bpts, dirichlet, -dt, bwd);
  }

  const std::size_t sx = 1;
  const std::size_t sy = std::size_t(grid.npts[0]);
  const std::size_t sz = sy * std::size_t(grid.npts[1]);
  const double ihx2 = 1.0 / (grid.h[0] * grid.h[0]);
  const double ihy2 = 1.0 / (grid.h[1] * grid.h[1]);
  const double ihz2 = grid.dim > 2 ? 1.0 / (grid.h[2] * grid.h[2]) : 0.0;
  const double ihx = 0.5 / grid.h[0];
  const double ihy = 0.5 / grid.h[1];
  const double ihz = grid.dim > 2 ? 0.5 / grid.h[2] : 0.0;
  const double dt2 = dt * dt;

  // One leapfrog step: uses the slice at k and at k-dir to produce k+dir.
  auto step = [&](int k, int dir) {
    source.fill(grid, k, scratch);
    auto cur = field.slice(k);
    auto prev = field.slice(k - dir);
    auto next = field.slice(k + dir);
    const double sgn = double(dir);
    const int nz = grid.dim > 2 ? grid.npts[2] : 1;
    for (int iz = (grid.dim > 2 ? 1 : 0); iz < (grid.dim > 2 ? nz - 1 : 1); ++iz) {
      for (int iy = 1; iy < grid.npts[1] - 1; ++iy) {
        std::size_t p = grid.index(1, iy, iz);
        for (int ix = 1; ix < grid.npts[0] - 1; ++ix, ++p) {
          double lap = (cur[p + sx] - 2.0 * cur[p] + cur[p - sx]) * ihx2 +
                       (cur[p + sy] - 2.0 * cur[p] + cur[p - sy]) * ihy2;
          double conv = coeffs.q.comp[0][p] * (cur[p + sx] - cur[p - sx]) * ihx +
                        coeffs.q.comp[1][p] * (cur[p + sy] - cur[p - sy]) * ihy;
          if (grid.dim > 2) {
            lap += (cur[p + sz] - 2.0 * cur[p] + cur[p - sz]) * ihz2;
            conv += coeffs.q.comp[2][p] * (cur[p + sz] - cur[p - sz]) * ihz;
          }
          const double cc = coeffs.c[p] * coeffs.c[p];
          const double damp = 0.5 * dt * coeffs.q1[p] * sgn;
          const double rhs = 2.0 * cur[p] - (1.0 - damp) * prev[p] +
                             dt2 * (cc * lap - coeffs.q0[p] * cur[p] - conv + scratch[p]);
          next[p] = rhs / (1.0 + damp);
        }
      }
    }
    apply_dirichlet(bpts, dirichlet, grid.time_at(k + dir), next);
  };

  for (int k = center + 1; k < center + radius; ++k) step(k, +1);
  for (int k = center - 1; k > center - radius; --k) step(k, -1);
  return field;
}

WaveField solve(const Grid& grid, const CoefficientSet& coeffs, const ScalarField& w0,
                const ScalarField& w1, const BoundaryFn& dirichlet, const MarchOptions& options) {
  return march(grid, coeffs, w0, w1, dirichlet, ZeroSource{}, options);
}

WaveField solve_with_source(const Grid& grid, const CoefficientSet& coeffs,
                            const SpacetimeSource& source, const MarchOptions& options) {
  const ScalarField zero(grid.n_points(), 0.0);
  return march(grid, coeffs, zero, zero, nullptr, source, options);
}

BoundaryLayout boundary_layout(const Grid& grid, BoundaryPart part) {
  BoundaryLayout layout;
  layout.part = part;
  for (const Face& face : grid.part_faces(part)) {
    const int fixed = face.high ? grid.npts[face.axis] - 1 : 0;
    const int a1 = (face.axis + 1) % 3;
    const int a2 = (face.axis + 2) % 3;
    const int n1 = a1 < grid.dim ? grid.npts[a1] : 1;
    const int n2 = a2 < grid.dim ? grid.npts[a2] : 1;
    std::array<int, 3> c{0, 0, 0};
    c[face.axis] = fixed;
    for (int j = 0; j < n2; ++j) {
      for (int i = 0; i < n1; ++i) {
        c[a1] = i;
        c[a2] = j;
        double w = 1.0;
        if (a1 < grid.dim) w *= grid.h[a1] * ((i == 0 || i == n1 - 1) ? 0.5 : 1.0);
        if (a2 < grid.dim) w *= grid.h[a2] * ((j == 0 || j == n2 - 1) ? 0.5 : 1.0);
        layout.samples.push_back(BoundarySample{grid.index(c[0], c[1], c[2]), face.id(), w});
      }
    }
  }
  return layout;
}

namespace {

// Outward normal derivative by the inward 3-point stencil, valid on low and
// high faces alike.
double trace_value(const Grid& grid, std::span<const double> f, const BoundarySample& s) {
  const Face face = Face::from_id(s.face);
  const std::size_t stride[3] = {1, std::size_t(grid.npts[0]),
                                 std::size_t(grid.npts[0]) * std::size_t(grid.npts[1])};
  const std::size_t st = stride[face.axis];
  const double h = grid.h[face.axis];
  const std::size_t p = s.flat;
  if (face.high) return (3.0 * f[p] - 4.0 * f[p - st] + f[p - 2 * st]) / (2.0 * h);
  return (3.0 * f[p] - 4.0 * f[p + st] + f[p + 2 * st]) / (2.0 * h);
}

}  // namespace

TraceSeries neumann_trace(const WaveField& field, BoundaryPart part) {
  const Grid& grid = field.grid();
  BoundaryLayout layout = boundary_layout(grid, part);
  if (layout.samples.empty()) {
    throw std::invalid_argument("no faces assigned to the requested boundary part");
  }
  TraceSeries trace;
  trace.deriv_order = 0;
  trace.first_index = field.first_index();
  trace.n_slices = field.n_slices();
  trace.dt = grid.dt;
  trace.samples = std::move(layout.samples);
  trace.values.resize(std::size_t(trace.n_slices) * trace.samples.size());
  for (int k = field.first_index(); k <= field.last_index(); ++k) {
    auto f = field.slice(k);
    auto out = trace.slice(k);
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
      out[i] = trace_value(grid, f, trace.samples[i]);
    }
  }
  return trace;
}

TraceSeries trace_time_derivative(const TraceSeries& trace, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("derivative order must be 1, 2 or 3");
  if (trace.n_slices < 2 * order + 1) {
    throw std::invalid_argument("trace too short for the requested derivative");
  }
  TraceSeries out;
  out.deriv_order = trace.deriv_order + order;
  out.first_index = trace.first_index + order;
  out.n_slices = trace.n_slices - 2 * order;
  out.dt = trace.dt;
  out.samples = trace.samples;
  out.values.resize(std::size_t(out.n_slices) * out.samples.size());
  const double dt = trace.dt;
  for (int k = out.first_index; k < out.first_index + out.n_slices; ++k) {
    auto o = out.slice(k);
    if (order == 1) {
      auto fp = trace.slice(k + 1);
      auto fm = trace.slice(k - 1);
      for (std::size_t i = 0; i < o.size(); ++i) o[i] = (fp[i] - fm[i]) / (2.0 * dt);
    } else if (order == 2) {
      auto fp = trace.slice(k + 1);
      auto f0 = trace.slice(k);
      auto fm = trace.slice(k - 1);
      for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] = (fp[i] - 2.0 * f0[i] + fm[i]) / (dt * dt);
      }
    } else {
      auto fp2 = trace.slice(k + 2);
      auto fp1 = trace.slice(k + 1);
      auto fm1 = trace.slice(k - 1);
      auto fm2 = trace.slice(k - 2);
      for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] = (fp2[i] - 2.0 * fp1[i] + 2.0 * fm1[i] - fm2[i]) / (2.0 * dt * dt * dt);
      }
    }
  }
  return out;
}

double trace_l2_sq(const TraceSeries& trace) {
  double total = 0.0;
  for (int k = trace.first_index; k < trace.first_index + trace.n_slices; ++k) {
    const bool edge = (k == trace.first_index) || (k == trace.first_index + trace.n_slices - 1);
    const double tw = trace.dt * (edge ? 0.5 : 1.0);
    auto v = trace.slice(k);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      s += trace.samples[i].weight * v[i] * v[i];
    }
    total += tw * s;
  }
  return total;
}

namespace {

// w_t at a stored slice: centered inside the window, one-sided second order
// at its ends.
void time_derivative_slice(const WaveField& field, int k, ScalarField& out) {
  const double dt = field.grid().dt;
  const std::size_t n = field.grid().n_points();
  out.resize(n);
  if (k > field.first_index() && k < field.last_index()) {
    auto fp = field.slice(k + 1);
    auto fm = field.slice(k - 1);
    for (std::size_t p = 0; p < n; ++p) out[p] = (fp[p] - fm[p]) / (2.0 * dt);
  } else if (k == field.first_index()) {
    auto f0 = field.slice(k);
    auto f1 = field.slice(k + 1);
    auto f2 = field.slice(k + 2);
    for (std::size_t p = 0; p < n; ++p) {
      out[p] = (-3.0 * f0[p] + 4.0 * f1[p] - f2[p]) / (2.0 * dt);
    }
  } else {
    auto f0 = field.slice(k);
    auto f1 = field.slice(k - 1);
    auto f2 = field.slice(k - 2);
    for (std::size_t p = 0; p < n; ++p) {
      out[p] = (3.0 * f0[p] - 4.0 * f1[p] + f2[p]) / (2.0 * dt);
    }
  }
}

}  // namespace

double h1_energy_at(const WaveField& field, const CoefficientSet& coeffs, int k) {
  const Grid& grid = field.grid();
  const ScalarField w = volume_weights(grid);
  ScalarField wt;
  time_derivative_slice(field, k, wt);
  auto f = field.slice(k);
  double total = 0.0;
  for (std::size_t p = 0; p < grid.n_points(); ++p) {
    const auto c = grid.coords(p);
    double g2 = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
      const double d = derivative_any(grid, f, c, a);
      g2 += d * d;
    }
    const double cc = coeffs.c[p] * coeffs.c[p];
    total += w[p] * (f[p] * f[p] + wt[p] * wt[p] + cc * g2);
  }
  return total;
}

EnergySeries energy(const WaveField& field, const CoefficientSet& coeffs) {
  const Grid& grid = field.grid();
  const ScalarField w = volume_weights(grid);
  EnergySeries es;
  es.first_index = field.first_index();
  es.h1.resize(field.n_slices());
  es.physical.resize(field.n_slices());
  ScalarField wt;
  for (int k = field.first_index(); k <= field.last_index(); ++k) {
    time_derivative_slice(field, k, wt);
    auto f = field.slice(k);
    double h1 = 0.0;
    double phys = 0.0;
    for (std::size_t p = 0; p < grid.n_points(); ++p) {
      const auto c = grid.coords(p);
      double g2 = 0.0;
      for (int a = 0; a < grid.dim; ++a) {
        const double d = derivative_any(grid, f, c, a);
        g2 += d * d;
      }
      const double cc = coeffs.c[p] * coeffs.c[p];
      h1 += w[p] * (f[p] * f[p] + wt[p] * wt[p] + cc * g2);
      phys += w[p] * 0.5 * (wt[p] * wt[p] / cc + g2);
    }
    es.h1[std::size_t(k - es.first_index)] = h1;
    es.physical[std::size_t(k - es.first_index)] = phys;
  }
  return es;
}

double residual_l2(const WaveField& field, const CoefficientSet& coeffs,
                   const SpacetimeSource& source) {
  const Grid& grid = field.grid();
  if (field.n_slices() < 3) throw std::invalid_argument("residual needs at least three slices");
  const ScalarField w = volume_weights(grid);
  const double dt = grid.dt;
  ScalarField s(grid.n_points());
  double total = 0.0;
  for (int k = field.first_index() + 1; k < field.last_index(); ++k) {
    source.fill(grid, k, s);
    auto cur = field.slice(k);
    auto prev = field.slice(k - 1);
    auto next = field.slice(k + 1);
    const bool edge = (k == field.first_index() + 1) || (k == field.last_index() - 1);
    const double tw = dt * (edge ? 0.5 : 1.0);
    double acc = 0.0;
    const int nz = grid.dim > 2 ? grid.npts[2] : 1;
    for (int iz = (grid.dim > 2 ? 1 : 0); iz < (grid.dim > 2 ? nz - 1 : 1); ++iz) {
      for (int iy = 1; iy < grid.npts[1] - 1; ++iy) {
        for (int ix = 1; ix < grid.npts[0] - 1; ++ix) {
          const std::size_t p = grid.index(ix, iy, iz);
          const double wtt = (next[p] - 2.0 * cur[p] + prev[p]) / (dt * dt);
          const double wt = (next[p] - prev[p]) / (2.0 * dt);
          const double lap = laplacian_at(grid, cur, ix, iy, iz);
          const auto g = gradient_at(grid, cur, ix, iy, iz);
          double conv = 0.0;
          for (int a = 0; a < grid.dim; ++a) conv += coeffs.q.comp[a][p] * g[a];
          const double cc = coeffs.c[p] * coeffs.c[p];
          const double r =
              wtt - cc * lap + coeffs.q1[p] * wt + coeffs.q0[p] * cur[p] + conv - s[p];
          acc += w[p] * r * r;
        }
      }
    }
    total += tw * acc;
  }
  return std::sqrt(total);
}

}  // namespace cwave
