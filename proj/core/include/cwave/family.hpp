#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "cwave/field.hpp"
#include "cwave/grid.hpp"
#include "cwave/solver.hpp"

namespace cwave {

// Scalar time profile with derivatives up to order three.
struct TimeFactor {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> d3;

  double operator()(double t, int order) const;
};

TimeFactor time_const(double c = 1.0);
TimeFactor time_poly(std::vector<double> coeffs);  // c0 + c1 t + c2 t^2 + ...
TimeFactor time_cos();
TimeFactor time_sin();

// Spatial profile sampled with its gradient and Laplacian.
struct SpatialFactor {
  ScalarField phi;
  std::array<ScalarField, 3> grad;
  ScalarField lap;
};

SpatialFactor sample_spatial(const Grid& grid, const PointFn& value, const GradFn& grad,
                             const PointFn& lap);
// Derivatives by the solver stencils (centered interior, one-sided boundary).
SpatialFactor spatial_from_samples(const Grid& grid, ScalarField values);

// Everything a reference function contributes at t = 0.
struct MemberSnapshot {
  ScalarField r0;                   // R(.,0)
  ScalarField r1;                   // R_t(.,0)
  ScalarField r2;                   // R_tt(.,0)
  std::array<ScalarField, 3> dr0;   // grad R(.,0)
  std::array<ScalarField, 3> dr1;   // grad R_t(.,0)
  ScalarField lap0;                 // Lap R(.,0)
  ScalarField lap1;                 // Lap R_t(.,0)
};

// Reference function R(x,t) with time derivatives to order three and spatial
// derivatives to order two, evaluated one grid time slice at a time.
class ReferenceMember {
 public:
  virtual ~ReferenceMember() = default;
  virtual void value_slice(const Grid& grid, int t_deriv, int k, std::span<double> out) const = 0;
  virtual void grad_slice(const Grid& grid, int axis, int k, std::span<double> out) const = 0;
  virtual void lap_slice(const Grid& grid, int k, std::span<double> out) const = 0;
  virtual MemberSnapshot snapshot(const Grid& grid) const = 0;
};

// R(x,t) = sum_j tf_j(t) sf_j(x); covers the closed-form families.
class SeparableMember final : public ReferenceMember {
 public:
  explicit SeparableMember(std::vector<std::pair<TimeFactor, SpatialFactor>> terms);
  void value_slice(const Grid& grid, int t_deriv, int k, std::span<double> out) const override;
  void grad_slice(const Grid& grid, int axis, int k, std::span<double> out) const override;
  void lap_slice(const Grid& grid, int k, std::span<double> out) const override;
  MemberSnapshot snapshot(const Grid& grid) const override;

 private:
  std::vector<std::pair<TimeFactor, SpatialFactor>> terms_;
};

// Reference function backed by a forward solve: time derivatives by centered
// differences across slices (one-sided at the window ends), spatial
// derivatives by the solver stencils. R_tt(.,0) in the snapshot comes from
// the operator applied to the initial data, which is exact for the scheme.
class SolvedMember final : public ReferenceMember {
 public:
  SolvedMember(WaveField field, CoefficientSet coeffs, ScalarField w0, ScalarField w1);
  const WaveField& field() const { return field_; }
  void value_slice(const Grid& grid, int t_deriv, int k, std::span<double> out) const override;
  void grad_slice(const Grid& grid, int axis, int k, std::span<double> out) const override;
  void lap_slice(const Grid& grid, int k, std::span<double> out) const override;
  MemberSnapshot snapshot(const Grid& grid) const override;

 private:
  WaveField field_;
  CoefficientSet coeffs_;
  ScalarField w0_;
  ScalarField w1_;
};

// floor((n+4)/2) reference functions for spatial dimension n.
struct RFamily {
  int dim = 2;
  std::vector<std::unique_ptr<ReferenceMember>> members;

  int expected_members() const { return (dim + 4) / 2; }
};

// Per-axis factor of the separable closed-form family kind 3.
struct Example3Axis {
  PointFn value;
  GradFn grad;
  PointFn lap;
  double r_bound = 0.0;  // lower bound on |d value / d x_axis|
};

struct Example3Options {
  std::vector<Example3Axis> f;  // one per spatial axis
  PointFn f1_dx;                // d f1 / d x1, for the closed-form determinant
  PointFn f1_dxx;               // d^2 f1 / d x1^2
  double r1_tilde = 0.0;        // lower bound on |d^2 f1 / d x1^2|
  TimeFactor g;                 // g(0) = 1, g'(0) = 0
  TimeFactor h;                 // h(0) = 0, h'(0) = 1
  double a = -1.0;              // negative reflection factor
};

// f_j(x) = e^{x_j}, g = cos, h = sin; reduces kind 3 to kind 2 when a = -1.
Example3Options example3_exponential(const Grid& grid, double a = -1.0);

// Closed-form families. kind 3 requires options and validates the stated
// derivative bounds at every grid point (and at the reflected points a*x).
RFamily example_family(int kind, int n, const Grid& grid,
                       const Example3Options* opts = nullptr);

struct InitialPair {
  ScalarField w0;
  ScalarField w1;
};

// Initial data matching the closed-form families member by member.
std::vector<InitialPair> example_initial_pairs(int kind, int n, const Grid& grid,
                                               const Example3Options* opts = nullptr);
// Closed forms as functions of (x, t); index is zero-based.
PointTimeFn example_member_fn(int kind, int n, int index, const Example3Options* opts = nullptr);
// Boundary data matching each member's trace.
std::vector<BoundaryFn> example_dirichlet(int kind, int n, const Example3Options* opts = nullptr);

// Solves the guess system for every initial pair. One shared boundary datum
// or one per member.
RFamily family_from_solutions(const Grid& grid, const CoefficientSet& coeffs_guess,
                              const std::vector<InitialPair>& pairs,
                              const std::vector<BoundaryFn>& dirichlet);

// The t = 0 data of the guess-system solution for one initial pair, without
// solving: values and velocity are the data themselves, the second time
// derivative is the operator applied to them, spatial derivatives use the
// solver stencils.
MemberSnapshot snapshot_from_pair(const Grid& grid, const CoefficientSet& coeffs_guess,
                                  const ScalarField& w0, const ScalarField& w1);

// S = f0 R + f1 R_t + f . grad R + f2 Lap R, one slice at a time.
class ProfileSource final : public SpacetimeSource {
 public:
  ProfileSource(const Grid& grid, const ReferenceMember& member, const SourceProfile& profile);
  void fill(const Grid& grid, int k, std::span<double> out) const override;

 private:
  const ReferenceMember& member_;
  const SourceProfile& profile_;
  mutable ScalarField buf_a_;
  mutable ScalarField buf_b_;
};

ScalarField evaluate_source_slice(const Grid& grid, const ReferenceMember& member,
                                  const SourceProfile& profile, int k);

// Everywhere-nonsingular polynomial position set for the single-velocity
// (n+3)-measurement mode on a box, to pair with w1 = 1.
std::vector<SpatialFactor> poly_positions(int n, const Grid& grid);

}  // namespace cwave
