#include "cwave/carleman.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cwave {

namespace {

struct BoundaryGeom {
  std::vector<BoundarySample> samples;
};

BoundaryGeom whole_boundary(const Grid& grid) {
  BoundaryGeom g;
  BoundaryLayout a = boundary_layout(grid, BoundaryPart::gamma0);
  BoundaryLayout b = boundary_layout(grid, BoundaryPart::gamma1);
  g.samples = std::move(a.samples);
  g.samples.insert(g.samples.end(), b.samples.begin(), b.samples.end());
  return g;
}

// w_t at a boundary point, centered in time away from the ends.
double boundary_time_derivative(const WaveField& field, int k, std::size_t p) {
  const double dt = field.grid().dt;
  if (k > field.first_index() && k < field.last_index()) {
    return (field.slice(k + 1)[p] - field.slice(k - 1)[p]) / (2.0 * dt);
  }
  const int dir = (k == field.first_index()) ? 1 : -1;
  const double f0 = field.slice(k)[p];
  const double f1 = field.slice(k + dir)[p];
  const double f2 = field.slice(k + 2 * dir)[p];
  return dir * (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * dt);
}

}  // namespace

BtTerms bt_terms(const WaveField& field, const CoefficientSet& coeffs,
                 const CarlemanParams& params, double tau) {
  const Grid& grid = field.grid();
  if (!field.covers_full_axis()) {
    throw std::invalid_argument("boundary terms need the field on the whole time axis");
  }
  const BoundaryGeom geom = whole_boundary(grid);

  // Conformal correction of the weighted Laplacian of d.
  ScalarField zfield(grid.n_points());
  for (std::size_t p = 0; p < zfield.size(); ++p) {
    zfield[p] = std::pow(coeffs.c[p], 2.0 - double(grid.dim));
  }
  const auto zgrad = gradient_field(grid, zfield);

  BtTerms out;
  const double alpha = params.alpha;
  for (int k = field.first_index(); k <= field.last_index(); ++k) {
    const double t = grid.time_at(k);
    const bool t_edge = (k == field.first_index()) || (k == field.last_index());
    const double tw = grid.dt * (t_edge ? 0.5 : 1.0);
    auto slice = field.slice(k);
    for (const BoundarySample& s : geom.samples) {
      const std::size_t p = s.flat;
      const auto c = grid.coords(p);
      const auto x = grid.point(p);
      const Face face = Face::from_id(s.face);
      const double nu_sign = face.high ? 1.0 : -1.0;

      const double w = slice[p];
      const double wt = boundary_time_derivative(field, k, p);
      std::array<double, 3> gw{0.0, 0.0, 0.0};
      for (int a = 0; a < grid.dim; ++a) gw[a] = derivative_any(grid, slice, c, a);
      const double dnw = nu_sign * gw[face.axis];

      std::array<double, 3> gd{0.0, 0.0, 0.0};
      double gd2 = 0.0;
      double gdgw = 0.0;
      for (int a = 0; a < grid.dim; ++a) {
        gd[a] = 2.0 * (x[a] - params.x0[a]);
        gd2 += gd[a] * gd[a];
        gdgw += gd[a] * gw[a];
      }
      const double dnd = nu_sign * gd[face.axis];

      const double cc = coeffs.c[p] * coeffs.c[p];
      double gw2 = 0.0;
      for (int a = 0; a < grid.dim; ++a) gw2 += gw[a] * gw[a];

      double zdot = 0.0;
      for (int a = 0; a < grid.dim; ++a) zdot += zgrad[a][p] * gd[a];
      const double lap_g_d =
          cc * 2.0 * grid.dim + std::pow(coeffs.c[p], double(grid.dim)) * zdot;

      const double phi = params.d[p] - alpha * t * t;
      const double e2 = std::exp(2.0 * tau * phi);
      const double qw = s.weight * tw * e2;

      const double dd2 = cc * gd2;            // |Dd|^2
      const double dw2 = cc * gw2;            // |Dw|^2
      const double ddnu = cc * dnd;           // <Dd, nu>
      const double dwnu = cc * dnw;           // <Dw, nu>
      const double ddDw = cc * gdgw;          // <Dd, Dw>
      const double t2 = 4.0 * alpha * alpha * t * t;

      out.term[0] += qw * 2.0 * tau * (wt * wt - dw2) * ddnu;
      out.term[1] += qw * 4.0 * tau * ddDw * dwnu;
      out.term[2] += qw * 8.0 * alpha * tau * t * wt * dwnu;
      out.term[3] += qw * (4.0 * tau * tau * (dd2 - t2) + 2.0 * tau * (lap_g_d - alpha - 1.0)) *
                     w * dwnu;
      out.term[4] += qw * 2.0 * tau * (2.0 * tau * tau * (dd2 - t2) + tau * (3.0 * alpha + 1.0)) *
                     w * w * ddnu;
    }
  }
  out.total = out.term[0] + out.term[1] + out.term[2] + out.term[3] + out.term[4];
  return out;
}

CarlemanTerms carleman_terms(const WaveField& field, const SpacetimeSource& forcing,
                             const CoefficientSet& coeffs, const CarlemanParams& params,
                             double tau, const CarlemanConstants& constants) {
  const Grid& grid = field.grid();
  if (!field.covers_full_axis()) {
    throw std::invalid_argument("weighted integrals need the field on the whole time axis");
  }
  CarlemanTerms out;
  out.tau = tau;
  out.bt = bt_terms(field, coeffs, params, tau);

  const ScalarField vol = volume_weights(grid);
  ScalarField expd(grid.n_points());
  for (std::size_t p = 0; p < expd.size(); ++p) expd[p] = std::exp(2.0 * tau * params.d[p]);

  ScalarField gslice(grid.n_points());
  ScalarField wt(grid.n_points());
  const double dt = grid.dt;

  double g2 = 0.0;
  double w2 = 0.0;
  double wenergy = 0.0;
  double wmass = 0.0;
  for (int k = field.first_index(); k <= field.last_index(); ++k) {
    const double t = grid.time_at(k);
    const bool edge = (k == field.first_index()) || (k == field.last_index());
    const double tw = dt * (edge ? 0.5 : 1.0);
    const double st = std::exp(-2.0 * tau * params.alpha * t * t);
    auto slice = field.slice(k);

    forcing.fill(grid, k, gslice);

    if (k > field.first_index() && k < field.last_index()) {
      auto fp = field.slice(k + 1);
      auto fm = field.slice(k - 1);
      for (std::size_t p = 0; p < wt.size(); ++p) wt[p] = (fp[p] - fm[p]) / (2.0 * dt);
    } else {
      const int dir = (k == field.first_index()) ? 1 : -1;
      auto f0 = field.slice(k);
      auto f1 = field.slice(k + dir);
      auto f2 = field.slice(k + 2 * dir);
      for (std::size_t p = 0; p < wt.size(); ++p) {
        wt[p] = dir * (-3.0 * f0[p] + 4.0 * f1[p] - f2[p]) / (2.0 * dt);
      }
    }

    const double sigma_threshold = params.sigma + params.alpha * t * t;
    for (std::size_t p = 0; p < vol.size(); ++p) {
      const double e2 = expd[p] * st;
      const double vw = vol[p] * tw;
      g2 += vw * e2 * gslice[p] * gslice[p];
      w2 += vw * slice[p] * slice[p];
      const auto c = grid.coords(p);
      double gw2 = 0.0;
      for (int a = 0; a < grid.dim; ++a) {
        const double d = derivative_any(grid, slice, c, a);
        gw2 += d * d;
      }
      const double cc = coeffs.c[p] * coeffs.c[p];
      wenergy += vw * e2 * (wt[p] * wt[p] + cc * gw2);
      if (params.d[p] >= sigma_threshold) {
        wmass += vw * e2 * slice[p] * slice[p];
      }
    }
  }

  out.int_g2_weighted = g2;
  out.int_w2_sigma_scaled = std::exp(2.0 * tau * params.sigma) * w2;
  const double e_lo = h1_energy_at(field, coeffs, field.first_index());
  const double e_hi = h1_energy_at(field, coeffs, field.last_index());
  out.endpoint_energy = tau * tau * tau * std::exp(-2.0 * tau * params.delta) * (e_lo + e_hi);
  out.weighted_energy = wenergy;
  out.weighted_mass_sigma = wmass;
  out.c1_tau = tau * constants.eps * (1.0 - params.alpha) - 2.0 * constants.big_c_t;
  out.c2_tau = 2.0 * tau * tau * tau * constants.beta - 2.0 * constants.big_c_t;
  out.lhs_candidate = out.bt.total + 2.0 * g2 + constants.c_1t * out.int_w2_sigma_scaled +
                      constants.c_t * out.endpoint_energy;
  out.rhs_candidate = out.c1_tau * wenergy + out.c2_tau * wmass;
  return out;
}

std::vector<CarlemanTerms> tau_sweep(const WaveField& field, const SpacetimeSource& forcing,
                                     const CoefficientSet& coeffs, const CarlemanParams& params,
                                     const std::vector<double>& taus,
                                     const CarlemanConstants& constants) {
  if (taus.empty()) throw std::invalid_argument("tau list must not be empty");
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (!(taus[i] > taus[i - 1])) {
      throw std::invalid_argument("tau list must increase");
    }
  }
  std::vector<CarlemanTerms> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    out.push_back(carleman_terms(field, forcing, coeffs, params, tau, constants));
  }
  return out;
}

ObservabilityReport observability_probe(const Grid& grid, const CoefficientSet& coeffs,
                                        const CarlemanParams& params,
                                        const GeometryReport& geometry,
                                        const std::vector<InitialPair>& members,
                                        const SpacetimeSource* forcing) {
  if (!geometry.all_pass()) {
    throw std::invalid_argument("geometry checks failed; the trace bound presupposes them");
  }
  if (!(grid.horizon > params.t_obs)) {
    throw std::invalid_argument("horizon below observation time");
  }
  if (members.empty()) throw std::invalid_argument("ensemble must not be empty");

  const ZeroSource zero;
  const SpacetimeSource& g = forcing != nullptr ? *forcing : zero;
  const bool have_gamma1 = !boundary_layout(grid, BoundaryPart::gamma1).samples.empty();

  // ||G||^2 over Q does not depend on the member.
  double g_sq = 0.0;
  {
    const ScalarField vol = volume_weights(grid);
    ScalarField gslice(grid.n_points());
    for (int k = 0; k < grid.n_time_samples(); ++k) {
      const bool edge = (k == 0) || (k == grid.n_time_samples() - 1);
      const double tw = grid.dt * (edge ? 0.5 : 1.0);
      g.fill(grid, k, gslice);
      double s = 0.0;
      for (std::size_t p = 0; p < vol.size(); ++p) s += vol[p] * gslice[p] * gslice[p];
      g_sq += tw * s;
    }
  }

  ObservabilityReport report;
  double max_finite = 0.0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const WaveField w = march(grid, coeffs, members[i].w0, members[i].w1, nullptr, g);
    ObservabilityEntry entry;
    entry.member = int(i);
    entry.e0 = h1_energy_at(w, coeffs, grid.center_index());
    entry.g_sq = g_sq;
    if (have_gamma1) {
      const TraceSeries trace = neumann_trace(w, BoundaryPart::gamma1);
      entry.trace_sq = trace_l2_sq(trace);
    }
    const double denom = entry.trace_sq + entry.g_sq;
    if (entry.e0 == 0.0) {
      entry.degenerate = true;
      entry.constant = 0.0;
      report.has_flagged = true;
    } else if (denom > 0.0) {
      entry.constant = entry.e0 / denom;
      max_finite = std::max(max_finite, entry.constant);
    } else {
      entry.constant = std::numeric_limits<double>::infinity();
      report.has_infinite = true;
    }
    report.entries.push_back(entry);
  }
  report.max_constant =
      report.has_infinite ? std::numeric_limits<double>::infinity() : max_finite;
  return report;
}

}  // namespace cwave
