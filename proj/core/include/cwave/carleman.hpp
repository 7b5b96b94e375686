#pragma once

#include <string>
#include <vector>

#include "cwave/family.hpp"
#include "cwave/field.hpp"
#include "cwave/geometry.hpp"
#include "cwave/grid.hpp"
#include "cwave/solver.hpp"

namespace cwave {

// Abstract constants of the one-parameter estimate; user-supplied, defaults 1.
struct CarlemanConstants {
  double eps = 1.0;
  double beta = 1.0;
  double c_t = 1.0;
  double big_c_t = 1.0;
  double c_1t = 1.0;
};

struct BtTerms {
  std::array<double, 5> term{};
  double total = 0.0;
};

// Boundary-term decomposition over (whole boundary) x (time axis); the field
// must cover the full axis. All metric pairings use the conformal convention
// |Dw|^2 = c^2 |grad w|^2, <Dd,nu> = c^2 dd/dnu, and the weighted Laplacian
// of d carries the c^2 Lap d + c^n grad(c^(2-n)) . grad d correction.
BtTerms bt_terms(const WaveField& field, const CoefficientSet& coeffs,
                 const CarlemanParams& params, double tau);

struct CarlemanTerms {
  double tau = 0.0;
  BtTerms bt;
  double int_g2_weighted = 0.0;      // int_Q e^{2 tau phi} |G|^2
  double int_w2_sigma_scaled = 0.0;  // e^{2 tau sigma} int_Q w^2
  double endpoint_energy = 0.0;      // tau^3 e^{-2 tau delta} (E(-T) + E(T))
  double weighted_energy = 0.0;      // int_Q e^{2 tau phi} (w_t^2 + |Dw|^2)
  double weighted_mass_sigma = 0.0;  // int over the sigma level set of e^{2 tau phi} w^2
  double lhs_candidate = 0.0;
  double rhs_candidate = 0.0;
  double c1_tau = 0.0;  // tau eps (1 - alpha) - 2 C_T
  double c2_tau = 0.0;  // 2 tau^3 beta - 2 C_T (the tau^2 remainder has no
                        // specified constant and is not evaluated)
};

// Tabulates every integral of the estimate for one tau; never asserts the
// inequality itself.
CarlemanTerms carleman_terms(const WaveField& field, const SpacetimeSource& forcing,
                             const CoefficientSet& coeffs, const CarlemanParams& params,
                             double tau, const CarlemanConstants& constants);

// One row per tau; the list must be strictly increasing.
std::vector<CarlemanTerms> tau_sweep(const WaveField& field, const SpacetimeSource& forcing,
                                     const CoefficientSet& coeffs, const CarlemanParams& params,
                                     const std::vector<double>& taus,
                                     const CarlemanConstants& constants);

struct ObservabilityEntry {
  int member = 0;
  double e0 = 0.0;        // energy at t = 0
  double trace_sq = 0.0;  // squared trace norm on the observed part
  double g_sq = 0.0;      // squared forcing norm over Q
  double constant = 0.0;  // e0 / (trace_sq + g_sq); inf when degenerate
  bool degenerate = false;
};

struct ObservabilityReport {
  std::vector<ObservabilityEntry> entries;
  double max_constant = 0.0;  // over finite entries
  bool has_infinite = false;
  bool has_flagged = false;
};

// Solves the homogeneous-Dirichlet problem for every initial pair and records
// the empirical constants of the trace bound. Refuses to run when the
// geometry report fails or the horizon is not past the observation time.
ObservabilityReport observability_probe(const Grid& grid, const CoefficientSet& coeffs,
                                        const CarlemanParams& params,
                                        const GeometryReport& geometry,
                                        const std::vector<InitialPair>& members,
                                        const SpacetimeSource* forcing = nullptr);

}  // namespace cwave
