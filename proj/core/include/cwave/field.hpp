#pragma once

#include <array>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "cwave/grid.hpp"

namespace cwave {

using ScalarField = std::vector<double>;
using PointFn = std::function<double(const std::array<double, 3>&)>;
using GradFn = std::function<std::array<double, 3>(const std::array<double, 3>&)>;

struct VectorField {
  int dim = 2;
  std::array<ScalarField, 3> comp;
};

// Coefficients of the operator  w_tt - c^2 Lap w + q1 w_t + q0 w + q . grad w.
struct CoefficientSet {
  ScalarField c;
  ScalarField q1;
  ScalarField q0;
  VectorField q;

  double max_c() const;
  double min_c() const;
  // c0 with 1/c0 <= c <= c0.
  double c_bound() const;
};

// Unknowns of the linearized source: potential, damping, squared-speed and
// gradient differences.
struct SourceProfile {
  ScalarField f0;
  ScalarField f1;
  ScalarField f2;
  VectorField f;
};

ScalarField make_field(const Grid& grid, const PointFn& fn);
ScalarField constant_field(const Grid& grid, double value);
VectorField zero_vector_field(const Grid& grid);
CoefficientSet constant_coefficients(const Grid& grid, double c = 1.0, double q1 = 0.0,
                                     double q0 = 0.0);
SourceProfile zero_profile(const Grid& grid);

// Trapezoid volume weights (product over axes).
ScalarField volume_weights(const Grid& grid);
double integrate(const ScalarField& weights, std::span<const double> values);
double l2_norm_sq(const Grid& grid, std::span<const double> values);
double profile_l2_sq(const Grid& grid, const SourceProfile& p);
double max_abs(std::span<const double> values);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

// Second-order stencils. Interior points use centered differences; the
// *_any variants fall back to one-sided stencils of the same order at the
// boundary.
double laplacian_at(const Grid& grid, std::span<const double> f, int ix, int iy, int iz);
std::array<double, 3> gradient_at(const Grid& grid, std::span<const double> f, int ix, int iy,
                                  int iz);
double derivative_any(const Grid& grid, std::span<const double> f, const std::array<int, 3>& c,
                      int axis);
double second_derivative_any(const Grid& grid, std::span<const double> f,
                             const std::array<int, 3>& c, int axis);
double laplacian_any(const Grid& grid, std::span<const double> f, const std::array<int, 3>& c);
ScalarField laplacian_field(const Grid& grid, std::span<const double> f);
std::array<ScalarField, 3> gradient_field(const Grid& grid, std::span<const double> f);

// Deterministic uniform draws: the same seed yields the same sequence on
// every platform (raw mt19937_64 bits mapped to doubles directly).
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : eng_(seed) {}
  double next() { return double(eng_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double symmetric() { return 2.0 * next() - 1.0; }           // [-1, 1)

 private:
  std::mt19937_64 eng_;
};

ScalarField random_bounded_field(const Grid& grid, SeededUniform& rng, double bound);

// Truncated sine series sum_k a_k prod_j sin(k pi (x_j-lo_j)/L_j); vanishes on
// the whole boundary. Coefficients are seeded draws, the result is rescaled so
// max |value| equals amplitude.
ScalarField sine_series_field(const Grid& grid, SeededUniform& rng, int modes, double amplitude);
SourceProfile random_profile(const Grid& grid, SeededUniform& rng, int modes, double amplitude);
SourceProfile scaled_profile(const SourceProfile& p, double factor);

}  // namespace cwave
