#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cwave/family.hpp"
#include "cwave/field.hpp"
#include "cwave/grid.hpp"
#include "cwave/matrix.hpp"
#include "cwave/solver.hpp"

namespace cwave {

// Raised when the per-point recovery matrix fails its determinant condition.
class DetConditionError : public std::runtime_error {
 public:
  DetConditionError(double min_abs_det, double r0)
      : std::runtime_error("determinant condition failed: min |det| = " +
                           std::to_string(min_abs_det) + " < r0 = " + std::to_string(r0)),
        min_abs_det_(min_abs_det),
        r0_(r0) {}
  double min_abs_det() const { return min_abs_det_; }
  double r0() const { return r0_; }

 private:
  double min_abs_det_;
  double r0_;
};

// Differences between two coefficient sets in the order the recovery solves
// for them: f2 = c^2 - c~^2 (truth minus guess squared speeds), and
// f1, f0, f = guess minus truth lower-order coefficients.
SourceProfile linearize(const CoefficientSet& truth, const CoefficientSet& guess);

// truth-coefficient solve minus guess-coefficient solve with shared data.
WaveField difference_field(const Grid& grid, const CoefficientSet& truth,
                           const CoefficientSet& guess, const ScalarField& w0,
                           const ScalarField& w1, const BoundaryFn& dirichlet,
                           const MarchOptions& options = {});

// Right-hand sides of the per-point recovery systems, per family member:
// second and third time derivatives of u at t = 0 in paired mode, second
// only in single-velocity mode.
struct SnapshotRHS {
  bool paired = true;
  std::vector<ScalarField> utt;
  std::vector<ScalarField> uttt;  // empty when not paired
};

// Centered differences at the axis center: 3-point for u_tt, 5-point for
// u_ttt. Fields must cover at least two slices on each side of t = 0.
SnapshotRHS snapshot_rhs(const Grid& grid, const std::vector<const WaveField*>& fields);
// Single-velocity variant: u_tt only, one slice of margin suffices.
SnapshotRHS snapshot_rhs_single(const Grid& grid, const std::vector<const WaveField*>& fields);

// Exact right-hand sides from the source identity at t = 0:
// u_tt = S(.,0), u_ttt = S_t(.,0) - q1 S(.,0).
SnapshotRHS exact_snapshots(const Grid& grid, const std::vector<MemberSnapshot>& snapshots,
                            const SourceProfile& profile, const ScalarField& q1);
SnapshotRHS exact_snapshots_single(const Grid& grid, const std::vector<SpatialFactor>& positions,
                                   const ScalarField& w1, const SourceProfile& profile);

struct RecoveryResult {
  SourceProfile profile;
  ScalarField cond;        // per-point condition estimate
  double min_abs_det = 0.0;
  double max_cond = 0.0;
  int cond_warnings = 0;   // points with condition estimate above 1e8
};

// Solves the (n+3) x (n+3) system at every grid point. Throws
// DetConditionError when min |det| < r0 and std::runtime_error on a singular
// pivot.
RecoveryResult recover_profile(const Grid& grid, const SnapshotRHS& rhs,
                               const MatrixField& matrices, double r0);

// c = sqrt(c~^2 + f2), q1 = p1 - f1, q0 = p0 - f0, q = p - f. Errors when the
// recovered squared speed is not positive.
CoefficientSet apply_recovery(const Grid& grid, const CoefficientSet& guess,
                              const SourceProfile& profile);

struct EnsembleSpec {
  int size = 10;
  std::uint64_t seed = 1;
  double amplitude = 1.0;
  int modes = 4;
};

struct StabilityEntry {
  int member = 0;       // ensemble index
  double lhs = 0.0;     // sum of squared profile norms
  double rhs = 0.0;     // sum over family members of the squared trace norms
  double ratio = 0.0;   // lhs / rhs, NaN when degenerate
  bool degenerate = false;
  std::string note;
};

struct StabilityReport {
  std::vector<StabilityEntry> entries;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double min_abs_det = 0.0;  // of the family matrix, for correlation only
  std::uint64_t seed = 0;
  double amplitude = 0.0;
  int modes = 0;
};

// For every seeded boundary-vanishing profile: forward-solve the forced
// systems per family member, extract d/dnu d^2/dt^2 of the solutions on the
// observed part, and record the ratio of squared norms.
StabilityReport stability_probe(const Grid& grid, const CoefficientSet& coeffs,
                                const RFamily& family, const EnsembleSpec& spec);

}  // namespace cwave
