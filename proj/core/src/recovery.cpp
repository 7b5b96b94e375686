#include "cwave/recovery.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace cwave {

SourceProfile linearize(const CoefficientSet& truth, const CoefficientSet& guess) {
  const std::size_t n = truth.c.size();
  if (guess.c.size() != n) throw std::invalid_argument("coefficient sets live on different grids");
  SourceProfile p;
  p.f0.resize(n);
  p.f1.resize(n);
  p.f2.resize(n);
  p.f.dim = truth.q.dim;
  for (std::size_t i = 0; i < n; ++i) {
    p.f2[i] = truth.c[i] * truth.c[i] - guess.c[i] * guess.c[i];
    p.f1[i] = guess.q1[i] - truth.q1[i];
    p.f0[i] = guess.q0[i] - truth.q0[i];
  }
  for (int a = 0; a < p.f.dim; ++a) {
    p.f.comp[a].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      p.f.comp[a][i] = guess.q.comp[a][i] - truth.q.comp[a][i];
    }
  }
  return p;
}

WaveField difference_field(const Grid& grid, const CoefficientSet& truth,
                           const CoefficientSet& guess, const ScalarField& w0,
                           const ScalarField& w1, const BoundaryFn& dirichlet,
                           const MarchOptions& options) {
  WaveField ut = solve(grid, truth, w0, w1, dirichlet, options);
  const WaveField ug = solve(grid, guess, w0, w1, dirichlet, options);
  for (int k = ut.first_index(); k <= ut.last_index(); ++k) {
    auto a = ut.slice(k);
    auto b = ug.slice(k);
    for (std::size_t p = 0; p < a.size(); ++p) a[p] -= b[p];
  }
  return ut;
}

namespace {

void check_margin(const Grid& grid, const WaveField& f, int margin) {
  const int c = grid.center_index();
  if (f.first_index() > c - margin || f.last_index() < c + margin) {
    throw std::invalid_argument("field window too short around t = 0 for the snapshots");
  }
}

}  // namespace

SnapshotRHS snapshot_rhs(const Grid& grid, const std::vector<const WaveField*>& fields) {
  SnapshotRHS rhs;
  rhs.paired = true;
  const int c = grid.center_index();
  const double dt = grid.dt;
  for (const WaveField* f : fields) {
    check_margin(grid, *f, 2);
    auto um2 = f->slice(c - 2);
    auto um1 = f->slice(c - 1);
    auto u0 = f->slice(c);
    auto up1 = f->slice(c + 1);
    auto up2 = f->slice(c + 2);
    ScalarField utt(grid.n_points());
    ScalarField uttt(grid.n_points());
    for (std::size_t p = 0; p < utt.size(); ++p) {
      utt[p] = (up1[p] - 2.0 * u0[p] + um1[p]) / (dt * dt);
      uttt[p] = (up2[p] - 2.0 * up1[p] + 2.0 * um1[p] - um2[p]) / (2.0 * dt * dt * dt);
    }
    rhs.utt.push_back(std::move(utt));
    rhs.uttt.push_back(std::move(uttt));
  }
  return rhs;
}

SnapshotRHS snapshot_rhs_single(const Grid& grid, const std::vector<const WaveField*>& fields) {
  SnapshotRHS rhs;
  rhs.paired = false;
  const int c = grid.center_index();
  const double dt = grid.dt;
  for (const WaveField* f : fields) {
    check_margin(grid, *f, 1);
    auto um1 = f->slice(c - 1);
    auto u0 = f->slice(c);
    auto up1 = f->slice(c + 1);
    ScalarField utt(grid.n_points());
    for (std::size_t p = 0; p < utt.size(); ++p) {
      utt[p] = (up1[p] - 2.0 * u0[p] + um1[p]) / (dt * dt);
    }
    rhs.utt.push_back(std::move(utt));
  }
  return rhs;
}

SnapshotRHS exact_snapshots(const Grid& grid, const std::vector<MemberSnapshot>& snapshots,
                            const SourceProfile& profile, const ScalarField& q1) {
  SnapshotRHS rhs;
  rhs.paired = true;
  const std::size_t n = grid.n_points();
  for (const MemberSnapshot& s : snapshots) {
    ScalarField utt(n);
    ScalarField uttt(n);
    for (std::size_t p = 0; p < n; ++p) {
      double s0 = profile.f0[p] * s.r0[p] + profile.f1[p] * s.r1[p] + profile.f2[p] * s.lap0[p];
      double st = profile.f0[p] * s.r1[p] + profile.f1[p] * s.r2[p] + profile.f2[p] * s.lap1[p];
      for (int a = 0; a < grid.dim; ++a) {
        s0 += profile.f.comp[a][p] * s.dr0[a][p];
        st += profile.f.comp[a][p] * s.dr1[a][p];
      }
      utt[p] = s0;
      uttt[p] = st - q1[p] * s0;
    }
    rhs.utt.push_back(std::move(utt));
    rhs.uttt.push_back(std::move(uttt));
  }
  return rhs;
}

SnapshotRHS exact_snapshots_single(const Grid& grid, const std::vector<SpatialFactor>& positions,
                                   const ScalarField& w1, const SourceProfile& profile) {
  SnapshotRHS rhs;
  rhs.paired = false;
  const std::size_t n = grid.n_points();
  for (const SpatialFactor& pos : positions) {
    ScalarField utt(n);
    for (std::size_t p = 0; p < n; ++p) {
      double s0 = profile.f0[p] * pos.phi[p] + profile.f1[p] * w1[p] +
                  profile.f2[p] * pos.lap[p];
      for (int a = 0; a < grid.dim; ++a) s0 += profile.f.comp[a][p] * pos.grad[a][p];
      utt[p] = s0;
    }
    rhs.utt.push_back(std::move(utt));
  }
  return rhs;
}

RecoveryResult recover_profile(const Grid& grid, const SnapshotRHS& rhs,
                               const MatrixField& matrices, double r0) {
  const int n = grid.dim;
  const int size = matrices.size;
  if (matrices.n_points != grid.n_points()) {
    throw std::invalid_argument("matrix field does not match the grid");
  }
  const bool paired_layout = matrices.layout != MatrixLayout::remark1;
  if (rhs.paired != paired_layout) {
    throw std::invalid_argument("snapshot layout does not match the matrix layout");
  }
  if (paired_layout) {
    const int m2 = (n + 4) / 2;
    if (int(rhs.utt.size()) != m2 || int(rhs.uttt.size()) != m2) {
      throw std::invalid_argument("snapshot member count does not match the family");
    }
  } else {
    if (int(rhs.utt.size()) != size) {
      throw std::invalid_argument("single-velocity snapshots need n+3 members");
    }
  }

  const DeterminantField dets = determinant_field(grid, matrices, r0);
  if (!dets.pass) throw DetConditionError(dets.min_abs_det, r0);

  RecoveryResult out;
  out.min_abs_det = dets.min_abs_det;
  out.max_cond = dets.max_cond;
  out.cond = dets.cond;
  out.profile.f0.resize(matrices.n_points);
  out.profile.f1.resize(matrices.n_points);
  out.profile.f2.resize(matrices.n_points);
  out.profile.f.dim = n;
  for (int a = 0; a < n; ++a) out.profile.f.comp[a].resize(matrices.n_points);

  const bool even = (n % 2) == 0;
  double lu[8 * 8];
  double b[8];
  int piv[8];
  for (std::size_t p = 0; p < matrices.n_points; ++p) {
    std::memcpy(lu, matrices.at(p), sizeof(double) * std::size_t(size) * std::size_t(size));
    double det = 0.0;
    if (!smalllu::factor(lu, size, piv, &det)) {
      throw std::runtime_error("singular pivot in the per-point recovery solve");
    }
    if (paired_layout) {
      int row = 0;
      const int m2 = (n + 4) / 2;
      for (int i = 0; i < m2; ++i) {
        b[row++] = rhs.utt[std::size_t(i)][p];
        if (!(even && i == m2 - 1)) b[row++] = rhs.uttt[std::size_t(i)][p];
      }
    } else {
      for (int i = 0; i < size; ++i) b[i] = rhs.utt[std::size_t(i)][p];
    }
    smalllu::solve(lu, size, piv, b);
    out.profile.f0[p] = b[0];
    out.profile.f1[p] = b[1];
    for (int a = 0; a < n; ++a) out.profile.f.comp[a][p] = b[2 + a];
    out.profile.f2[p] = b[size - 1];
    if (out.cond[p] > 1e8) ++out.cond_warnings;
  }
  return out;
}

CoefficientSet apply_recovery(const Grid& grid, const CoefficientSet& guess,
                              const SourceProfile& profile) {
  const std::size_t n = grid.n_points();
  CoefficientSet out;
  out.c.resize(n);
  out.q1.resize(n);
  out.q0.resize(n);
  out.q.dim = grid.dim;
  for (int a = 0; a < grid.dim; ++a) out.q.comp[a].resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    const double c2 = guess.c[p] * guess.c[p] + profile.f2[p];
    if (!(c2 > 0.0)) {
      throw std::runtime_error("recovered squared speed is not positive");
    }
    out.c[p] = std::sqrt(c2);
    out.q1[p] = guess.q1[p] - profile.f1[p];
    out.q0[p] = guess.q0[p] - profile.f0[p];
    for (int a = 0; a < grid.dim; ++a) {
      out.q.comp[a][p] = guess.q.comp[a][p] - profile.f.comp[a][p];
    }
  }
  return out;
}

StabilityReport stability_probe(const Grid& grid, const CoefficientSet& coeffs,
                                const RFamily& family, const EnsembleSpec& spec) {
  if (spec.size < 1) throw std::invalid_argument("ensemble must not be empty");
  if (int(family.members.size()) != family.expected_members()) {
    throw std::invalid_argument("family size does not match floor((n+4)/2)");
  }
  StabilityReport report;
  report.seed = spec.seed;
  report.amplitude = spec.amplitude;
  report.modes = spec.modes;

  {
    const MatrixField mf = assemble_matrix(grid, family, MatrixLayout::plain);
    report.min_abs_det = determinant_field(grid, mf, 0.0).min_abs_det;
  }

  SeededUniform rng(spec.seed);
  double min_ratio = std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  double sum_ratio = 0.0;
  int finite = 0;
  for (int e = 0; e < spec.size; ++e) {
    const SourceProfile profile = random_profile(grid, rng, spec.modes, spec.amplitude);
    StabilityEntry entry;
    entry.member = e;
    entry.lhs = profile_l2_sq(grid, profile);
    try {
      double rhs = 0.0;
      for (const auto& member : family.members) {
        ProfileSource source(grid, *member, profile);
        const WaveField u = solve_with_source(grid, coeffs, source);
        const TraceSeries trace = neumann_trace(u, BoundaryPart::gamma1);
        const TraceSeries d2 = trace_time_derivative(trace, 2);
        rhs += trace_l2_sq(d2);
      }
      entry.rhs = rhs;
      if (rhs > 0.0) {
        entry.ratio = entry.lhs / rhs;
        min_ratio = std::min(min_ratio, entry.ratio);
        max_ratio = std::max(max_ratio, entry.ratio);
        sum_ratio += entry.ratio;
        ++finite;
      } else {
        entry.ratio = std::numeric_limits<double>::quiet_NaN();
        entry.degenerate = true;
        entry.note = entry.lhs > 0.0 ? "zero boundary data" : "zero profile";
      }
    } catch (const std::exception& err) {
      entry.degenerate = true;
      entry.ratio = std::numeric_limits<double>::quiet_NaN();
      entry.note = err.what();
    }
    report.entries.push_back(std::move(entry));
  }
  report.min_ratio = finite > 0 ? min_ratio : 0.0;
  report.max_ratio = max_ratio;
  report.mean_ratio = finite > 0 ? sum_ratio / finite : 0.0;
  return report;
}

}  // namespace cwave
