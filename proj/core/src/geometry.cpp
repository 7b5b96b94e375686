#include "cwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cwave/format.hpp"

namespace cwave {

ScalarField convexity_weight(const std::array<double, 3>& x0, const Grid& grid) {
  bool outside = false;
  for (int a = 0; a < grid.dim; ++a) {
    if (x0[a] < grid.lo[a] || x0[a] > grid.hi[a]) outside = true;
  }
  if (!outside) throw AnchorError();

  ScalarField d(grid.n_points());
  for (std::size_t p = 0; p < d.size(); ++p) {
    const auto x = grid.point(p);
    double s = 0.0;
    for (int b = 0; b < grid.dim; ++b) s += (x[b] - x0[b]) * (x[b] - x0[b]);
    d[p] = s;
  }
  return d;
}

double observation_time(const ScalarField& d) {
  return 2.0 * std::sqrt(*std::max_element(d.begin(), d.end()));
}

std::pair<double, double> select_alpha_delta(double horizon, const ScalarField& d) {
  const double max_d = *std::max_element(d.begin(), d.end());
  const double t_obs = 2.0 * std::sqrt(max_d);
  if (!(horizon > t_obs)) {
    throw std::invalid_argument("horizon " + std::to_string(horizon) +
                                " does not exceed the observation time " + std::to_string(t_obs));
  }
  const double delta = (horizon * horizon - 4.0 * max_d) / 8.0;
  const double lower = (4.0 * max_d + 4.0 * delta) / (horizon * horizon);
  const double alpha = 0.5 * (lower + 1.0);
  return {alpha, delta};
}

CarlemanParams make_carleman_params(const Grid& grid, const std::array<double, 3>& x0,
                                    double sigma) {
  CarlemanParams p;
  p.x0 = x0;
  p.d = convexity_weight(x0, grid);
  p.horizon = grid.horizon;
  p.t_obs = observation_time(p.d);
  const auto [alpha, delta] = select_alpha_delta(grid.horizon, p.d);
  p.alpha = alpha;
  p.delta = delta;
  p.m0 = *std::min_element(p.d.begin(), p.d.end());
  if (sigma == 0.0) sigma = 0.5 * p.m0;
  if (!(sigma > 0.0) || !(sigma < p.m0)) {
    throw std::invalid_argument("sigma must lie strictly between 0 and min d");
  }
  p.sigma = sigma;
  p.t1 = std::sqrt((p.m0 - p.sigma) / p.alpha);
  p.t0 = -p.t1;
  return p;
}

double weight_phi(const CarlemanParams& params, const std::array<double, 3>& x, double t) {
  // Unused axes must carry x = x0 = 0 so they contribute nothing.
  double s = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    const double dx = x[a] - params.x0[a];
    s += dx * dx;
  }
  return s - params.alpha * t * t;
}

double weight_phi_at(const CarlemanParams& params, std::size_t point, double t) {
  return params.d[point] - params.alpha * t * t;
}

QSigmaMask q_sigma(const CarlemanParams& params, const Grid& grid) {
  if (!(params.sigma > 0.0) || !(params.sigma < params.m0)) {
    throw std::invalid_argument("sigma must lie strictly between 0 and min d");
  }
  QSigmaMask m;
  m.sigma = params.sigma;
  m.t0 = params.t0;
  m.t1 = params.t1;
  m.n_time = grid.n_time_samples();
  m.n_points = grid.n_points();
  m.mask.assign(std::size_t(m.n_time) * m.n_points, false);
  for (int k = 0; k < m.n_time; ++k) {
    const double t = grid.time_at(k);
    const double threshold = params.sigma + params.alpha * t * t;
    const std::size_t base = std::size_t(k) * m.n_points;
    for (std::size_t p = 0; p < m.n_points; ++p) {
      m.mask[base + p] = params.d[p] >= threshold;
    }
  }
  // The flat slab must sit inside the mask.
  for (int k = 0; k < m.n_time; ++k) {
    const double t = grid.time_at(k);
    if (t < m.t0 || t > m.t1) continue;
    for (std::size_t p = 0; p < m.n_points; ++p) {
      if (!m.at(k, p)) {
        throw std::runtime_error("sigma level set does not contain the flat slab");
      }
    }
  }
  return m;
}

namespace {

// One-sided second-order outward normal derivative at a boundary point.
double normal_derivative(const Grid& grid, const ScalarField& f, const std::array<int, 3>& c,
                         const Face& face) {
  const std::size_t stride[3] = {1, std::size_t(grid.npts[0]),
                                 std::size_t(grid.npts[0]) * std::size_t(grid.npts[1])};
  const std::size_t p = grid.index(c[0], c[1], c[2]);
  // Inward neighbours are +stride on a low face, -stride on a high face; the
  // formula below is the outward derivative for both orientations.
  const std::size_t s = stride[face.axis];
  const double h = grid.h[face.axis];
  if (face.high) {
    return (3.0 * f[p] - 4.0 * f[p - s] + f[p - 2 * s]) / (2.0 * h);
  }
  return (3.0 * f[p] - 4.0 * f[p + s] + f[p + 2 * s]) / (2.0 * h);
}

template <typename Visit>
void for_each_face_point(const Grid& grid, const Face& face, Visit&& visit) {
  const int fixed = face.high ? grid.npts[face.axis] - 1 : 0;
  std::array<int, 3> c{0, 0, 0};
  c[face.axis] = fixed;
  const int a1 = (face.axis + 1) % 3;
  const int a2 = (face.axis + 2) % 3;
  const int n1 = grid.dim > a1 ? grid.npts[a1] : 1;
  const int n2 = grid.dim > a2 ? grid.npts[a2] : 1;
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      c[a1] = i;
      c[a2] = j;
      visit(c);
    }
  }
}

}  // namespace

GeometryReport check_assumptions(const Grid& grid, const ScalarField& d, const ScalarField& c,
                                 const std::array<double, 3>& x0, double rc) {
  GeometryReport r;
  r.rc = rc;
  r.min_d = *std::min_element(d.begin(), d.end());
  r.max_d = *std::max_element(d.begin(), d.end());
  r.t_obs = observation_time(d);
  r.gamma0_face_max_dn.fill(std::numeric_limits<double>::quiet_NaN());

  // (i): outward derivative of d on every gamma0 face.
  double max_dn = -std::numeric_limits<double>::infinity();
  bool have_gamma0 = false;
  for (const Face& face : grid.part_faces(BoundaryPart::gamma0)) {
    have_gamma0 = true;
    double face_max = -std::numeric_limits<double>::infinity();
    for_each_face_point(grid, face, [&](const std::array<int, 3>& pc) {
      face_max = std::max(face_max, normal_derivative(grid, d, pc, face));
    });
    r.gamma0_face_max_dn[face.id()] = face_max;
    max_dn = std::max(max_dn, face_max);
  }
  r.a1i_pass = !have_gamma0 || max_dn <= 1e-10;

  // (ii) surrogate: |grad c . (x - x0) / (2c)| bounded by rc.
  double remark1 = 0.0;
  for (std::size_t p = 0; p < c.size(); ++p) {
    const auto pc = grid.coords(p);
    const auto x = grid.point(p);
    double dot = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
      dot += derivative_any(grid, c, pc, a) * (x[a] - x0[a]);
    }
    remark1 = std::max(remark1, std::abs(dot / (2.0 * c[p])));
  }
  r.max_remark1_ratio = remark1;
  r.a1ii_pass = remark1 <= rc;

  // (iii): no critical point of d; ratio against the threshold 4 reported.
  double min_grad = std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < d.size(); ++p) {
    const auto pc = grid.coords(p);
    double g2 = 0.0;
    for (int a = 0; a < grid.dim; ++a) {
      const double da = derivative_any(grid, d, pc, a);
      g2 += da * da;
    }
    min_grad = std::min(min_grad, std::sqrt(g2));
    min_ratio = std::min(min_ratio, c[p] * c[p] * g2 / d[p]);
  }
  r.min_grad_d = min_grad;
  r.min_ratio_a2 = min_ratio;
  r.a2_pass = min_grad > 0.0;
  r.a2_boundary_case = std::abs(min_ratio - 4.0) <= 1e-9;
  return r;
}

std::string GeometryReport::to_text() const {
  std::ostringstream out;
  out << "min_d = " << format_double(min_d) << "\n";
  out << "max_d = " << format_double(max_d) << "\n";
  out << "T0 = " << format_double(t_obs) << "\n";
  out << "min_grad_d = " << format_double(min_grad_d) << "\n";
  out << "min_ratio_A2 = " << format_double(min_ratio_a2) << "\n";
  out << "max_remark1_ratio = " << format_double(max_remark1_ratio) << "\n";
  out << "a1i_pass = " << (a1i_pass ? "true" : "false") << "\n";
  out << "a1ii_pass = " << (a1ii_pass ? "true" : "false") << "\n";
  out << "a2_pass = " << (a2_pass ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace cwave
