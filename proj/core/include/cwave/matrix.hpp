#pragma once

#include <span>
#include <vector>

#include "cwave/family.hpp"
#include "cwave/field.hpp"
#include "cwave/grid.hpp"

namespace cwave {

// Row schemes of the per-point (n+3) x (n+3) recovery matrix. Member i
// contributes the row (R, R_t, dR/dx_1..n, Lap R) at t = 0 and, except for
// the last member when n is even, a second row built from R_t-quantities;
// the damping-shifted variant subtracts q1 times the first row pattern from
// the second. The single-velocity scheme has one row per initial position.
enum class MatrixLayout { plain, damping_shifted, remark1 };

struct MatrixField {
  int dim = 2;       // n
  int size = 5;      // n + 3
  MatrixLayout layout = MatrixLayout::plain;
  std::size_t n_points = 0;
  std::vector<double> data;  // n_points x size x size, row-major per point

  double* at(std::size_t p) { return data.data() + p * std::size_t(size) * std::size_t(size); }
  const double* at(std::size_t p) const {
    return data.data() + p * std::size_t(size) * std::size_t(size);
  }
};

std::vector<MemberSnapshot> family_snapshots(const Grid& grid, const RFamily& family);

MatrixField assemble_matrix(const Grid& grid, const std::vector<MemberSnapshot>& snapshots,
                            MatrixLayout layout, const ScalarField* q1 = nullptr);
MatrixField assemble_matrix(const Grid& grid, const RFamily& family, MatrixLayout layout,
                            const ScalarField* q1 = nullptr);

// One row per initial position: (w0_i, w1, dw0_i/dx_1..n, Lap w0_i).
MatrixField assemble_remark1(const Grid& grid, const std::vector<SpatialFactor>& positions,
                             const ScalarField& w1);

struct DeterminantField {
  ScalarField det;
  ScalarField cond;  // inf-norm condition estimate
  double min_abs_det = 0.0;
  double max_cond = 0.0;
  double r0 = 0.0;
  bool pass = false;
};

// Pivoted elimination per point; pass iff min |det| >= r0.
DeterminantField determinant_field(const Grid& grid, const MatrixField& matrices, double r0);

// kind 1: -1. kind 2: -2 prod_{i=2..n} e^{x_i}. kind 3: the separable product
// formula from the axis factors and the reflection factor a.
double closed_form_det(int kind, int n, const std::array<double, 3>& x,
                       const Example3Options* opts = nullptr);

// Dense pivoted LU for the small per-point systems (size <= 8).
namespace smalllu {

// In-place factorization; det receives the determinant, returns false on an
// exactly singular pivot.
bool factor(double* a, int n, int* piv, double* det);
void solve(const double* lu, int n, const int* piv, double* b);
double inf_norm(const double* a, int n);
// ||A^{-1}||_inf from an existing factorization.
double inverse_inf_norm(const double* lu, int n, const int* piv);

}  // namespace smalllu

}  // namespace cwave
