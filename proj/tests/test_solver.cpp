#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cwave/solver.hpp"
#include "test_helpers.hpp"

using namespace cwave;
using namespace cwave::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("initial acceleration vanishes with the data") {
  const Grid g = build_grid(unit_square_spec(21, 0.005, 0.1));
  const CoefficientSet coeffs = constant_coefficients(g);
  const ScalarField zero(g.n_points(), 0.0);
  ScalarField w1(g.n_points(), 0.7);
  const ScalarField acc = initial_acceleration(g, coeffs, zero, w1);
  for (double v : acc) CHECK(v == 0.0);
}

TEST_CASE("initial acceleration matches the analytic laplacian") {
  const Grid g = build_grid(unit_square_spec(101, 0.002, 0.1));
  const CoefficientSet coeffs = constant_coefficients(g);
  const ScalarField w0 = standing_wave_position(g);
  const ScalarField zero(g.n_points(), 0.0);
  const ScalarField acc = initial_acceleration(g, coeffs, w0, zero);
  double max_err = 0.0;
  for (int iy = 1; iy < g.npts[1] - 1; ++iy) {
    for (int ix = 1; ix < g.npts[0] - 1; ++ix) {
      const std::size_t p = g.index(ix, iy);
      max_err = std::max(max_err, std::abs(acc[p] + 2.0 * kPi * kPi * w0[p]));
    }
  }
  CHECK(max_err < 2e-2);  // O(h^2) with the pi^4 curvature constant
}

TEST_CASE("initial acceleration with damping only") {
  const Grid g = build_grid(unit_square_spec(11, 0.005, 0.1));
  const CoefficientSet coeffs = constant_coefficients(g, 1.0, /*q1=*/1.0);
  const ScalarField w0(g.n_points(), 0.0);
  const ScalarField w1(g.n_points(), 1.0);
  const ScalarField acc = initial_acceleration(g, coeffs, w0, w1);
  for (double v : acc) CHECK(v == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("standing wave is reproduced to scheme accuracy") {
  const Grid g = build_grid(unit_square_spec(21, 0.0125, 1.0));
  const CoefficientSet coeffs = constant_coefficients(g);
  const WaveField w = solve(g, coeffs, standing_wave_position(g),
                            ScalarField(g.n_points(), 0.0), nullptr);
  const double err = max_error_at(w, g.n_time_samples() - 1, standing_wave);
  CHECK(err < 0.1);
  CHECK(err > 0.0);
}

TEST_CASE("zero data gives the zero solution exactly") {
  const Grid g = build_grid(unit_square_spec(21, 0.01, 0.5));
  const CoefficientSet coeffs = constant_coefficients(g, 1.0, 0.3, -0.2);
  const ScalarField zero(g.n_points(), 0.0);
  const WaveField w = solve(g, coeffs, zero, zero, nullptr);
  for (int k = 0; k < g.n_time_samples(); ++k) {
    for (double v : w.slice(k)) CHECK(v == 0.0);
  }
}

TEST_CASE("undamped even-in-time data gives a time-symmetric march") {
  const Grid g = build_grid(unit_square_spec(31, 0.005, 0.4));
  CoefficientSet coeffs = constant_coefficients(g, 1.0, 0.0, 0.5);
  const WaveField w = solve(g, coeffs, standing_wave_position(g),
                            ScalarField(g.n_points(), 0.0), nullptr);
  const int c = g.center_index();
  for (int k = 1; k <= g.half_steps; k += 7) {
    auto fwd = w.slice(c + k);
    auto bwd = w.slice(c - k);
    for (std::size_t p = 0; p < fwd.size(); ++p) CHECK(fwd[p] == bwd[p]);
  }
}

TEST_CASE("dirichlet values are enforced exactly at every step") {
  const Grid g = build_grid(unit_square_spec(17, 0.01, 0.3));
  const CoefficientSet coeffs = constant_coefficients(g);
  const BoundaryFn h = [](const std::array<double, 3>& x, double t) {
    return x[0] + 0.25 * t * t;
  };
  const ScalarField w0 = make_field(g, [](const std::array<double, 3>& x) { return x[0]; });
  const ScalarField w1(g.n_points(), 0.0);
  const WaveField w = solve(g, coeffs, w0, w1, h);
  for (int k = 0; k < g.n_time_samples(); ++k) {
    const double t = g.time_at(k);
    auto s = w.slice(k);
    for (std::size_t p = 0; p < s.size(); ++p) {
      const auto c = g.coords(p);
      if (!g.is_boundary(c)) continue;
      CHECK(s[p] == h(g.point(p), t));
    }
  }
}

TEST_CASE("incompatible boundary and initial data are rejected") {
  const Grid g = build_grid(unit_square_spec(11, 0.01, 0.2));
  const CoefficientSet coeffs = constant_coefficients(g);
  const ScalarField w0(g.n_points(), 1.0);  // nonzero on the boundary
  const ScalarField w1(g.n_points(), 0.0);
  CHECK_THROWS_AS(solve(g, coeffs, w0, w1, nullptr), std::invalid_argument);
}

TEST_CASE("solver rejects a coefficient set breaking the stability limit") {
  GridSpec spec = unit_square_spec(21, 0.017, 0.5);
  spec.cmax_hint = 1.0;
  const Grid g = build_grid(spec);  // dt close to the c = 1 limit
  CoefficientSet coeffs = constant_coefficients(g, 2.0);
  const ScalarField zero(g.n_points(), 0.0);
  CHECK_THROWS_AS(solve(g, coeffs, zero, zero, nullptr), CflError);
}

TEST_CASE("forced solve: zero forcing stays zero, superposition holds") {
  const Grid g = build_grid(unit_square_spec(21, 0.01, 0.4));
  const CoefficientSet coeffs = constant_coefficients(g, 1.0, 0.2, 0.1);

  const WaveField u0 = solve_with_source(g, coeffs, ZeroSource{});
  for (int k = 0; k < g.n_time_samples(); ++k) {
    for (double v : u0.slice(k)) CHECK(v == 0.0);
  }

  const CallableSource s1([](const std::array<double, 3>& x, double t) {
    return std::sin(kPi * x[0]) * std::cos(t);
  });
  const CallableSource s2([](const std::array<double, 3>& x, double t) {
    return x[0] * x[1] + 0.3 * t;
  });
  const CallableSource s12([](const std::array<double, 3>& x, double t) {
    return 2.0 * (std::sin(kPi * x[0]) * std::cos(t)) - 0.5 * (x[0] * x[1] + 0.3 * t);
  });
  const WaveField u1 = solve_with_source(g, coeffs, s1);
  const WaveField u2 = solve_with_source(g, coeffs, s2);
  const WaveField u3 = solve_with_source(g, coeffs, s12);
  double scale = 0.0;
  for (int k = 0; k < g.n_time_samples(); ++k) scale = std::max(scale, max_abs(u3.slice(k)));
  for (int k = 0; k < g.n_time_samples(); k += 3) {
    auto a = u1.slice(k);
    auto b = u2.slice(k);
    auto c = u3.slice(k);
    for (std::size_t p = 0; p < a.size(); ++p) {
      CHECK(std::abs(2.0 * a[p] - 0.5 * b[p] - c[p]) <= 1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("constant forcing gives the exact parabola before boundary influence") {
  const Grid g = build_grid(unit_square_spec(41, 0.004, 0.12));
  const CoefficientSet coeffs = constant_coefficients(g);
  const CallableSource two([](const std::array<double, 3>&, double) { return 2.0; });
  const WaveField u = solve_with_source(g, coeffs, two);
  const std::size_t probe = g.index(20, 20);  // center, distance 0.5 from the boundary
  for (int k = 0; k < g.n_time_samples(); ++k) {
    const double t = g.time_at(k);
    CHECK(std::abs(u.slice(k)[probe] - t * t) <= 1e-12);
  }
}

TEST_CASE("finite propagation speed with a safety margin") {
  const Grid g = build_grid(unit_square_spec(251, 0.0014, 0.12));
  const CoefficientSet coeffs = constant_coefficients(g);
  const double rho = 0.2;
  const ScalarField w0 = make_field(g, [rho](const std::array<double, 3>& x) {
    const double r2 = ((x[0] - 0.5) * (x[0] - 0.5) + (x[1] - 0.5) * (x[1] - 0.5)) / (rho * rho);
    return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
  });
  const ScalarField zero(g.n_points(), 0.0);
  const WaveField w = solve(g, coeffs, w0, zero, nullptr);
  const int last = g.n_time_samples() - 1;
  const double t = g.time_at(last);
  const double reach = rho + 1.0 * t + 2.0 * g.h[0];
  double outside = 0.0;
  auto s = w.slice(last);
  for (std::size_t p = 0; p < s.size(); ++p) {
    const auto x = g.point(p);
    const double r = std::hypot(x[0] - 0.5, x[1] - 0.5);
    if (r > reach) outside = std::max(outside, std::abs(s[p]));
  }
  CHECK(outside <= 1e-12);
}

TEST_CASE("normal traces of simple fields") {
  GridSpec spec = unit_square_spec(21, 0.01, 0.1, {1});  // observe the right face
  const Grid g = build_grid(spec);
  const WaveField linear =
      sampled_field(g, [](const std::array<double, 3>& x, double) { return x[0]; });
  const TraceSeries t1 = neumann_trace(linear);
  for (int k = t1.first_index; k < t1.first_index + t1.n_slices; ++k) {
    for (double v : t1.slice(k)) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
  }

  const WaveField constant =
      sampled_field(g, [](const std::array<double, 3>&, double) { return 3.5; });
  const TraceSeries t2 = neumann_trace(constant);
  for (double v : t2.values) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("normal trace of the standing wave matches the closed form") {
  GridSpec spec = unit_square_spec(51, 0.005, 0.25, {1});
  const Grid g = build_grid(spec);
  const WaveField w = sampled_field(g, standing_wave);
  const TraceSeries tr = neumann_trace(w);
  double max_err = 0.0;
  for (int k = tr.first_index; k < tr.first_index + tr.n_slices; ++k) {
    const double t = g.time_at(k);
    auto v = tr.slice(k);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto x = g.point(tr.samples[i].flat);
      const double want = -kPi * std::sin(kPi * x[1]) * std::cos(std::sqrt(2.0) * kPi * t);
      max_err = std::max(max_err, std::abs(v[i] - want));
    }
  }
  CHECK(max_err < 5e-3);
}

TEST_CASE("neumann trace requires observed faces") {
  GridSpec spec = unit_square_spec(11, 0.01, 0.1, {});
  const Grid g = build_grid(spec);
  const WaveField w = sampled_field(g, [](const std::array<double, 3>&, double) { return 0.0; });
  CHECK_THROWS_AS(neumann_trace(w), std::invalid_argument);
}

TEST_CASE("trace time differentiation") {
  GridSpec spec = unit_square_spec(11, 0.01, 0.3, {1});
  const Grid g = build_grid(spec);

  const WaveField constant_in_time =
      sampled_field(g, [](const std::array<double, 3>& x, double) { return x[0] * x[1]; });
  const TraceSeries flat = trace_time_derivative(neumann_trace(constant_in_time), 1);
  for (double v : flat.values) CHECK(v == doctest::Approx(0.0));

  // x * t^2: the normal trace on the right face is t^2; the centered second
  // difference is exact on quadratics.
  const WaveField quad =
      sampled_field(g, [](const std::array<double, 3>& x, double t) { return x[0] * t * t; });
  const TraceSeries d2 = trace_time_derivative(neumann_trace(quad), 2);
  CHECK(d2.first_index == 2);
  CHECK(d2.n_slices == g.n_time_samples() - 4);
  for (double v : d2.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-9));

  const WaveField osc = sampled_field(
      g, [](const std::array<double, 3>& x, double t) { return x[0] * std::cos(3.0 * t); });
  const TraceSeries dd = trace_time_derivative(neumann_trace(osc), 2);
  double max_err = 0.0;
  for (int k = dd.first_index; k < dd.first_index + dd.n_slices; ++k) {
    const double t = g.time_at(k);
    for (double v : dd.slice(k)) {
      max_err = std::max(max_err, std::abs(v + 9.0 * std::cos(3.0 * t)));
    }
  }
  CHECK(max_err < 1e-2);

  const TraceSeries d3 = trace_time_derivative(neumann_trace(quad), 3);
  for (double v : d3.values) CHECK(std::abs(v) < 1e-7);

  CHECK_THROWS_AS(trace_time_derivative(neumann_trace(quad), 4), std::invalid_argument);
}

TEST_CASE("energy of the zero field vanishes") {
  const Grid g = build_grid(unit_square_spec(15, 0.01, 0.2));
  const CoefficientSet coeffs = constant_coefficients(g);
  const WaveField w = sampled_field(g, [](const std::array<double, 3>&, double) { return 0.0; });
  const EnergySeries es = energy(w, coeffs);
  for (double v : es.h1) CHECK(v == 0.0);
  for (double v : es.physical) CHECK(v == 0.0);
}

TEST_CASE("initial energy of the standing wave matches the closed form") {
  const Grid g = build_grid(unit_square_spec(51, 0.005, 0.1));
  const CoefficientSet coeffs = constant_coefficients(g);
  const WaveField w = solve(g, coeffs, standing_wave_position(g),
                            ScalarField(g.n_points(), 0.0), nullptr);
  const double e0 = h1_energy_at(w, coeffs, g.center_index());
  CHECK(e0 == doctest::Approx(0.25 + kPi * kPi / 2.0).epsilon(2e-3));
}

TEST_CASE("physical energy of the undamped wave is conserved") {
  const Grid g = build_grid(unit_square_spec(101, 0.0025, 6.0));
  const CoefficientSet coeffs = constant_coefficients(g);
  const WaveField w = solve(g, coeffs, standing_wave_position(g),
                            ScalarField(g.n_points(), 0.0), nullptr);
  const EnergySeries es = energy(w, coeffs);
  double mn = es.physical[0];
  double mx = es.physical[0];
  for (double v : es.physical) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  CHECK((mx - mn) / mx <= 1e-3);
}

TEST_CASE("residual diagnostics") {
  // A marched field satisfies the discrete equation identically: the update
  // rule is the centered residual rearranged, so only rounding remains.
  const Grid coarse = build_grid(unit_square_spec(11, 0.025, 0.5));
  const CoefficientSet cc = constant_coefficients(coarse, 1.0, 0.1, 0.2);
  const CallableSource source([](const std::array<double, 3>& x, double t) {
    return std::sin(kPi * x[0]) * std::sin(kPi * x[1]) * std::cos(2.0 * t);
  });
  const WaveField uc = solve_with_source(coarse, cc, source);
  CHECK(residual_l2(uc, cc, source) < 1e-11);

  // Sampled continuum solutions carry the truncation defect instead, which
  // drops about fourfold per refinement.
  const Grid fine = build_grid(unit_square_spec(21, 0.0125, 0.5));
  const CoefficientSet plain_c = constant_coefficients(coarse);
  const CoefficientSet plain_f = constant_coefficients(fine);
  const double r_coarse = residual_l2(sampled_field(coarse, standing_wave), plain_c, ZeroSource{});
  const double r_fine = residual_l2(sampled_field(fine, standing_wave), plain_f, ZeroSource{});
  CHECK(r_fine < r_coarse);
  CHECK(r_coarse / r_fine > 2.5);
  CHECK(r_coarse / r_fine < 6.5);

  // All stencils are exact on t^2, so the parabola has zero defect.
  const WaveField parabola =
      sampled_field(coarse, [](const std::array<double, 3>&, double t) { return t * t; });
  const CallableSource two([](const std::array<double, 3>&, double) { return 2.0; });
  CHECK(residual_l2(parabola, plain_c, two) < 1e-11);

  const WaveField zero =
      sampled_field(coarse, [](const std::array<double, 3>&, double) { return 0.0; });
  CHECK(residual_l2(zero, plain_c, ZeroSource{}) == 0.0);
}
