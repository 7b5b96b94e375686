#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cwave/field.hpp"
#include "cwave/grid.hpp"

namespace cwave {

using BoundaryFn = std::function<double(const std::array<double, 3>&, double)>;
using PointTimeFn = std::function<double(const std::array<double, 3>&, double)>;

// Right-hand side evaluated one time slice at a time on the full grid.
class SpacetimeSource {
 public:
  virtual ~SpacetimeSource() = default;
  virtual void fill(const Grid& grid, int time_index, std::span<double> out) const = 0;
};

class ZeroSource final : public SpacetimeSource {
 public:
  void fill(const Grid&, int, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
  }
};

class CallableSource final : public SpacetimeSource {
 public:
  explicit CallableSource(PointTimeFn fn) : fn_(std::move(fn)) {}
  void fill(const Grid& grid, int k, std::span<double> out) const override {
    const double t = grid.time_at(k);
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = fn_(grid.point(p), t);
  }

 private:
  PointTimeFn fn_;
};

struct MarchOptions {
  // Number of time steps simulated on each side of t = 0; -1 covers the whole
  // axis. Snapshots inside the window are identical to those of a full march.
  int march_radius = -1;
};

// Solution snapshots over a contiguous window of the grid time axis.
class WaveField {
 public:
  WaveField(Grid grid, int first_index, int n_slices);

  const Grid& grid() const { return grid_; }
  int first_index() const { return first_; }
  int last_index() const { return first_ + count_ - 1; }
  int n_slices() const { return count_; }
  bool covers(int k) const { return k >= first_ && k < first_ + count_; }
  bool covers_full_axis() const { return first_ == 0 && count_ == grid_.n_time_samples(); }
  double time_at(int k) const { return grid_.time_at(k); }

  std::span<double> slice(int k);
  std::span<const double> slice(int k) const;

 private:
  Grid grid_;
  int first_ = 0;
  int count_ = 0;
  std::vector<double> data_;
};

// c^2 Lap w0 - q1 w1 - q0 w0 - q . grad w0, centered stencils in the interior
// and one-sided second-order stencils on the boundary.
ScalarField initial_acceleration(const Grid& grid, const CoefficientSet& coeffs,
                                 const ScalarField& w0, const ScalarField& w1);

// Leapfrog march of  w_tt - c^2 Lap w + q1 w_t + q0 w + q . grad w = S  from
// t = 0 towards both ends of the axis. The damping term is time-centered, the
// first step on each side is seeded by a Taylor expansion. A null dirichlet
// means homogeneous data. Throws CflError when dt violates the limit for the
// actual max c and std::invalid_argument when w0 disagrees with the boundary
// data at t = 0 beyond 1e-12.
WaveField march(const Grid& grid, const CoefficientSet& coeffs, const ScalarField& w0,
                const ScalarField& w1, const BoundaryFn& dirichlet, const SpacetimeSource& source,
                const MarchOptions& options = {});

WaveField solve(const Grid& grid, const CoefficientSet& coeffs, const ScalarField& w0,
                const ScalarField& w1, const BoundaryFn& dirichlet,
                const MarchOptions& options = {});

// Zero initial and boundary data, forced by S.
WaveField solve_with_source(const Grid& grid, const CoefficientSet& coeffs,
                            const SpacetimeSource& source, const MarchOptions& options = {});

struct BoundarySample {
  std::size_t flat = 0;  // grid index of the boundary point
  int face = 0;          // face id
  double weight = 0.0;   // trapezoid area weight within the face
};

struct BoundaryLayout {
  BoundaryPart part = BoundaryPart::gamma1;
  std::vector<BoundarySample> samples;
};

BoundaryLayout boundary_layout(const Grid& grid, BoundaryPart part);

// Samples of d^k/dt^k dw/dnu on a boundary part, per stored time slice.
struct TraceSeries {
  int deriv_order = 0;
  int first_index = 0;
  int n_slices = 0;
  double dt = 0.0;
  std::vector<BoundarySample> samples;
  std::vector<double> values;  // n_slices x samples.size()

  std::span<const double> slice(int k) const {
    const std::size_t n = samples.size();
    return {values.data() + std::size_t(k - first_index) * n, n};
  }
  std::span<double> slice(int k) {
    const std::size_t n = samples.size();
    return {values.data() + std::size_t(k - first_index) * n, n};
  }
};

// One-sided 3-point normal derivative on every face of the part, at every
// stored slice. Throws when the part contains no faces.
TraceSeries neumann_trace(const WaveField& field, BoundaryPart part = BoundaryPart::gamma1);

// Centered time differentiation of order k in {1,2,3}; the series shrinks by
// k slices at each end.
TraceSeries trace_time_derivative(const TraceSeries& trace, int order);

// Squared L^2 norm over (boundary part) x (stored time range): trapezoid in
// time, face-area weights in space.
double trace_l2_sq(const TraceSeries& trace);

struct EnergySeries {
  int first_index = 0;
  std::vector<double> h1;        // int w^2 + w_t^2 + c^2 |grad w|^2
  std::vector<double> physical;  // int (w_t^2 / c^2 + |grad w|^2) / 2
};

EnergySeries energy(const WaveField& field, const CoefficientSet& coeffs);
double h1_energy_at(const WaveField& field, const CoefficientSet& coeffs, int k);

// Discrete L^2(Q) norm of the operator residual against S over interior
// spacetime points of the stored window.
double residual_l2(const WaveField& field, const CoefficientSet& coeffs,
                   const SpacetimeSource& source);

}  // namespace cwave
