#include "cwave/matrix.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace cwave {

namespace smalllu {

bool factor(double* a, int n, int* piv, double* det) {
  double d = 1.0;
  for (int k = 0; k < n; ++k) {
    int pr = k;
    double pm = std::abs(a[k * n + k]);
    for (int r = k + 1; r < n; ++r) {
      const double m = std::abs(a[r * n + k]);
      if (m > pm) {
        pm = m;
        pr = r;
      }
    }
    piv[k] = pr;
    if (pm == 0.0) {
      *det = 0.0;
      return false;
    }
    if (pr != k) {
      for (int c = 0; c < n; ++c) std::swap(a[k * n + c], a[pr * n + c]);
      d = -d;
    }
    const double pivot = a[k * n + k];
    d *= pivot;
    for (int r = k + 1; r < n; ++r) {
      const double f = a[r * n + k] / pivot;
      a[r * n + k] = f;
      for (int c = k + 1; c < n; ++c) a[r * n + c] -= f * a[k * n + c];
    }
  }
  *det = d;
  return true;
}

void solve(const double* lu, int n, const int* piv, double* b) {
  for (int k = 0; k < n; ++k) {
    if (piv[k] != k) std::swap(b[k], b[piv[k]]);
    for (int r = k + 1; r < n; ++r) b[r] -= lu[r * n + k] * b[k];
  }
  for (int k = n - 1; k >= 0; --k) {
    for (int c = k + 1; c < n; ++c) b[k] -= lu[k * n + c] * b[c];
    b[k] /= lu[k * n + k];
  }
}

double inf_norm(const double* a, int n) {
  double norm = 0.0;
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) s += std::abs(a[r * n + c]);
    norm = std::max(norm, s);
  }
  return norm;
}

double inverse_inf_norm(const double* lu, int n, const int* piv) {
  double cols[8 * 8];
  double e[8];
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) e[i] = (i == j) ? 1.0 : 0.0;
    solve(lu, n, piv, e);
    for (int i = 0; i < n; ++i) cols[i * 8 + j] = e[i];
  }
  double norm = 0.0;
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) s += std::abs(cols[r * 8 + c]);
    norm = std::max(norm, s);
  }
  return norm;
}

}  // namespace smalllu

std::vector<MemberSnapshot> family_snapshots(const Grid& grid, const RFamily& family) {
  std::vector<MemberSnapshot> out;
  out.reserve(family.members.size());
  for (const auto& m : family.members) out.push_back(m->snapshot(grid));
  return out;
}

MatrixField assemble_matrix(const Grid& grid, const std::vector<MemberSnapshot>& snapshots,
                            MatrixLayout layout, const ScalarField* q1) {
  if (layout == MatrixLayout::remark1) {
    throw std::invalid_argument("single-velocity layout needs positions, not a family");
  }
  const bool shifted = layout == MatrixLayout::damping_shifted;
  if (shifted && q1 == nullptr) {
    throw std::invalid_argument("damping-shifted layout needs the damping field");
  }
  if (!shifted && q1 != nullptr) {
    throw std::invalid_argument("plain layout takes no damping field");
  }
  const int n = grid.dim;
  const int size = n + 3;
  const int m2 = (n + 4) / 2;
  if (int(snapshots.size()) != m2) {
    throw std::invalid_argument("family size does not match floor((n+4)/2)");
  }
  const bool even = (n % 2) == 0;

  MatrixField mf;
  mf.dim = n;
  mf.size = size;
  mf.layout = layout;
  mf.n_points = grid.n_points();
  mf.data.resize(mf.n_points * std::size_t(size) * std::size_t(size));

  for (std::size_t p = 0; p < mf.n_points; ++p) {
    double* a = mf.at(p);
    int row = 0;
    for (int i = 0; i < m2; ++i) {
      const MemberSnapshot& s = snapshots[std::size_t(i)];
      double* r = a + row * size;
      r[0] = s.r0[p];
      r[1] = s.r1[p];
      for (int ax = 0; ax < n; ++ax) r[2 + ax] = s.dr0[ax][p];
      r[size - 1] = s.lap0[p];
      ++row;
      const bool last = i == m2 - 1;
      if (even && last) break;
      double* r2 = a + row * size;
      const double shift = shifted ? (*q1)[p] : 0.0;
      r2[0] = s.r1[p] - shift * s.r0[p];
      r2[1] = s.r2[p] - shift * s.r1[p];
      for (int ax = 0; ax < n; ++ax) r2[2 + ax] = s.dr1[ax][p] - shift * s.dr0[ax][p];
      r2[size - 1] = s.lap1[p] - shift * s.lap0[p];
      ++row;
    }
    if (row != size) throw std::logic_error("row count mismatch in matrix assembly");
  }
  return mf;
}

MatrixField assemble_matrix(const Grid& grid, const RFamily& family, MatrixLayout layout,
                            const ScalarField* q1) {
  return assemble_matrix(grid, family_snapshots(grid, family), layout, q1);
}

MatrixField assemble_remark1(const Grid& grid, const std::vector<SpatialFactor>& positions,
                             const ScalarField& w1) {
  const int n = grid.dim;
  const int size = n + 3;
  if (int(positions.size()) != size) {
    throw std::invalid_argument("single-velocity layout needs n+3 initial positions");
  }
  MatrixField mf;
  mf.dim = n;
  mf.size = size;
  mf.layout = MatrixLayout::remark1;
  mf.n_points = grid.n_points();
  mf.data.resize(mf.n_points * std::size_t(size) * std::size_t(size));
  for (std::size_t p = 0; p < mf.n_points; ++p) {
    double* a = mf.at(p);
    for (int i = 0; i < size; ++i) {
      const SpatialFactor& pos = positions[std::size_t(i)];
      double* r = a + i * size;
      r[0] = pos.phi[p];
      r[1] = w1[p];
      for (int ax = 0; ax < n; ++ax) r[2 + ax] = pos.grad[ax][p];
      r[size - 1] = pos.lap[p];
    }
  }
  return mf;
}

DeterminantField determinant_field(const Grid& grid, const MatrixField& matrices, double r0) {
  if (matrices.n_points != grid.n_points()) {
    throw std::invalid_argument("matrix field does not match the grid");
  }
  const int n = matrices.size;
  DeterminantField out;
  out.r0 = r0;
  out.det.resize(matrices.n_points);
  out.cond.resize(matrices.n_points);
  double lu[8 * 8];
  int piv[8];
  double min_abs = std::numeric_limits<double>::infinity();
  double max_cond = 0.0;
  for (std::size_t p = 0; p < matrices.n_points; ++p) {
    const double* a = matrices.at(p);
    std::memcpy(lu, a, sizeof(double) * std::size_t(n) * std::size_t(n));
    double det = 0.0;
    const double anorm = smalllu::inf_norm(a, n);
    if (smalllu::factor(lu, n, piv, &det)) {
      out.cond[p] = anorm * smalllu::inverse_inf_norm(lu, n, piv);
    } else {
      out.cond[p] = std::numeric_limits<double>::infinity();
    }
    out.det[p] = det;
    min_abs = std::min(min_abs, std::abs(det));
    max_cond = std::max(max_cond, out.cond[p]);
  }
  out.min_abs_det = min_abs;
  out.max_cond = max_cond;
  out.pass = min_abs >= r0;
  return out;
}

double closed_form_det(int kind, int n, const std::array<double, 3>& x,
                       const Example3Options* opts) {
  if (kind == 1) return -1.0;
  if (kind == 2) {
    double s = 0.0;
    for (int i = 1; i < n; ++i) s += x[i];
    return -2.0 * std::exp(s);
  }
  if (kind == 3) {
    if (opts == nullptr) throw std::invalid_argument("kind-3 determinant needs options");
    const double a = opts->a;
    const std::array<double, 3> ax{a * x[0], a * x[1], a * x[2]};
    const double head = a * opts->f1_dx(ax) * opts->f1_dxx(x) -
                        a * a * opts->f1_dxx(ax) * opts->f1_dx(x);
    double tail = 1.0;
    for (int j = 1; j < n; ++j) tail *= opts->f[std::size_t(j)].grad(x)[j];
    return head * tail;
  }
  throw std::invalid_argument("family kind must be 1, 2 or 3");
}

}  // namespace cwave
