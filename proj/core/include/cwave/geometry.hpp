#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cwave/field.hpp"
#include "cwave/grid.hpp"

namespace cwave {

class AnchorError : public std::invalid_argument {
 public:
  AnchorError() : std::invalid_argument("anchor point lies inside or on the closed box") {}
};

// Weight machinery: anchor x0, convexity profile d = |x - x0|^2, the
// spacetime weight phi(x,t) = d(x) - alpha t^2 and the level parameters.
struct CarlemanParams {
  std::array<double, 3> x0{};
  ScalarField d;
  double alpha = 0.0;
  double delta = 0.0;
  double sigma = 0.0;
  double horizon = 0.0;  // T
  double t_obs = 0.0;    // T0 = 2 sqrt(max d)
  double m0 = 0.0;       // min d, positive
  double t0 = 0.0;       // [t0, t1] slab contained in the sigma level set
  double t1 = 0.0;
  double tau = 1.0;  // default large parameter for weighted probes
};

// d(x) = |x - x0|^2 sampled on the grid. The anchor must lie strictly outside
// the closed box.
ScalarField convexity_weight(const std::array<double, 3>& x0, const Grid& grid);

// T0 = 2 sqrt(max d).
double observation_time(const ScalarField& d);

// delta = (T^2 - 4 max d)/8 and alpha = midpoint of ((4 max d + 4 delta)/T^2, 1).
// Requires T strictly above the observation time.
std::pair<double, double> select_alpha_delta(double horizon, const ScalarField& d);

// Bundles the full construction; sigma = 0 selects the default m0/2.
CarlemanParams make_carleman_params(const Grid& grid, const std::array<double, 3>& x0,
                                    double sigma = 0.0);

double weight_phi(const CarlemanParams& params, const std::array<double, 3>& x, double t);
double weight_phi_at(const CarlemanParams& params, std::size_t point, double t);

// Indicator of { phi >= sigma } over the sampled spacetime, plus the flat
// slab [t0, t1] it must contain.
struct QSigmaMask {
  double sigma = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  int n_time = 0;
  std::size_t n_points = 0;
  std::vector<bool> mask;  // time-major

  bool at(int k, std::size_t p) const { return mask[std::size_t(k) * n_points + p]; }
};
QSigmaMask q_sigma(const CarlemanParams& params, const Grid& grid);

struct GeometryReport {
  double min_d = 0.0;
  double max_d = 0.0;
  double t_obs = 0.0;
  double min_grad_d = 0.0;
  double min_ratio_a2 = 0.0;        // min of c^2 |grad d|^2 / d, threshold 4
  double max_remark1_ratio = 0.0;   // max |grad c . (x - x0) / (2c)|
  bool a1i_pass = false;
  bool a1ii_pass = false;
  bool a2_pass = false;
  bool a2_boundary_case = false;    // ratio sits exactly at the threshold
  double rc = 0.9;
  // Max of dd/dnu over each gamma0 face; NaN for faces not in gamma0.
  std::array<double, 6> gamma0_face_max_dn{};

  bool all_pass() const { return a1i_pass && a1ii_pass && a2_pass; }
  std::string to_text() const;
};

// Pure report: (i) dd/dnu <= 0 on gamma0 (one-sided second-order stencil,
// tolerance 1e-10), (ii) the wave-speed surrogate ratio against rc,
// (iii) min |grad d| > 0 with the ratio c^2|grad d|^2/d reported against the
// threshold 4.
GeometryReport check_assumptions(const Grid& grid, const ScalarField& d, const ScalarField& c,
                                 const std::array<double, 3>& x0, double rc = 0.9);

}  // namespace cwave
