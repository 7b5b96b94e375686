#include "cwave/family.hpp"

#include <cmath>
#include <stdexcept>

namespace cwave {

double TimeFactor::operator()(double t, int order) const {
  switch (order) {
    case 0:
      return value(t);
    case 1:
      return d1(t);
    case 2:
      return d2(t);
    case 3:
      return d3(t);
    default:
      throw std::invalid_argument("time derivative order must be 0..3");
  }
}

TimeFactor time_const(double c) {
  return TimeFactor{[c](double) { return c; }, [](double) { return 0.0; },
                    [](double) { return 0.0; }, [](double) { return 0.0; }};
}

TimeFactor time_poly(std::vector<double> coeffs) {
  auto eval = [](const std::vector<double>& c, double t) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
    return v;
  };
  auto derive = [](const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(double(i) * c[i]);
    return d;
  };
  const std::vector<double> c1 = derive(coeffs);
  const std::vector<double> c2 = derive(c1);
  const std::vector<double> c3 = derive(c2);
  return TimeFactor{[coeffs, eval](double t) { return eval(coeffs, t); },
                    [c1, eval](double t) { return eval(c1, t); },
                    [c2, eval](double t) { return eval(c2, t); },
                    [c3, eval](double t) { return eval(c3, t); }};
}

TimeFactor time_cos() {
  return TimeFactor{[](double t) { return std::cos(t); }, [](double t) { return -std::sin(t); },
                    [](double t) { return -std::cos(t); }, [](double t) { return std::sin(t); }};
}

TimeFactor time_sin() {
  return TimeFactor{[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                    [](double t) { return -std::sin(t); }, [](double t) { return -std::cos(t); }};
}

SpatialFactor sample_spatial(const Grid& grid, const PointFn& value, const GradFn& grad,
                             const PointFn& lap) {
  SpatialFactor s;
  s.phi = make_field(grid, value);
  for (int a = 0; a < grid.dim; ++a) s.grad[a].resize(grid.n_points());
  s.lap.resize(grid.n_points());
  for (std::size_t p = 0; p < grid.n_points(); ++p) {
    const auto x = grid.point(p);
    const auto g = grad(x);
    for (int a = 0; a < grid.dim; ++a) s.grad[a][p] = g[a];
    s.lap[p] = lap(x);
  }
  return s;
}

SpatialFactor spatial_from_samples(const Grid& grid, ScalarField values) {
  SpatialFactor s;
  s.grad = gradient_field(grid, values);
  s.lap = laplacian_field(grid, values);
  s.phi = std::move(values);
  return s;
}

SeparableMember::SeparableMember(std::vector<std::pair<TimeFactor, SpatialFactor>> terms)
    : terms_(std::move(terms)) {}

void SeparableMember::value_slice(const Grid& grid, int t_deriv, int k,
                                  std::span<double> out) const {
  const double t = grid.time_at(k);
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& [tf, sf] : terms_) {
    const double a = tf(t, t_deriv);
    if (a == 0.0) continue;
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += a * sf.phi[p];
  }
}

void SeparableMember::grad_slice(const Grid& grid, int axis, int k, std::span<double> out) const {
  const double t = grid.time_at(k);
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& [tf, sf] : terms_) {
    const double a = tf(t, 0);
    if (a == 0.0) continue;
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += a * sf.grad[axis][p];
  }
}

void SeparableMember::lap_slice(const Grid& grid, int k, std::span<double> out) const {
  const double t = grid.time_at(k);
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& [tf, sf] : terms_) {
    const double a = tf(t, 0);
    if (a == 0.0) continue;
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += a * sf.lap[p];
  }
}

MemberSnapshot SeparableMember::snapshot(const Grid& grid) const {
  const std::size_t n = grid.n_points();
  MemberSnapshot s;
  s.r0.assign(n, 0.0);
  s.r1.assign(n, 0.0);
  s.r2.assign(n, 0.0);
  s.lap0.assign(n, 0.0);
  s.lap1.assign(n, 0.0);
  for (int a = 0; a < grid.dim; ++a) {
    s.dr0[a].assign(n, 0.0);
    s.dr1[a].assign(n, 0.0);
  }
  for (const auto& [tf, sf] : terms_) {
    const double a0 = tf(0.0, 0);
    const double a1 = tf(0.0, 1);
    const double a2 = tf(0.0, 2);
    for (std::size_t p = 0; p < n; ++p) {
      s.r0[p] += a0 * sf.phi[p];
      s.r1[p] += a1 * sf.phi[p];
      s.r2[p] += a2 * sf.phi[p];
      s.lap0[p] += a0 * sf.lap[p];
      s.lap1[p] += a1 * sf.lap[p];
    }
    for (int ax = 0; ax < grid.dim; ++ax) {
      for (std::size_t p = 0; p < n; ++p) {
        s.dr0[ax][p] += a0 * sf.grad[ax][p];
        s.dr1[ax][p] += a1 * sf.grad[ax][p];
      }
    }
  }
  return s;
}

SolvedMember::SolvedMember(WaveField field, CoefficientSet coeffs, ScalarField w0, ScalarField w1)
    : field_(std::move(field)),
      coeffs_(std::move(coeffs)),
      w0_(std::move(w0)),
      w1_(std::move(w1)) {}

void SolvedMember::value_slice(const Grid& grid, int t_deriv, int k, std::span<double> out) const {
  const double dt = grid.dt;
  const std::size_t n = out.size();
  const int lo = field_.first_index();
  const int hi = field_.last_index();
  if (t_deriv == 0) {
    auto f = field_.slice(k);
    std::copy(f.begin(), f.end(), out.begin());
    return;
  }
  const int margin = t_deriv == 3 ? 2 : 1;
  const bool centered_ok = (k - lo >= margin) && (hi - k >= margin);
  if (t_deriv == 1) {
    if (centered_ok) {
      auto fp = field_.slice(k + 1);
      auto fm = field_.slice(k - 1);
      for (std::size_t p = 0; p < n; ++p) out[p] = (fp[p] - fm[p]) / (2.0 * dt);
    } else {
      const int dir = (k - lo < margin) ? 1 : -1;
      auto f0 = field_.slice(k);
      auto f1 = field_.slice(k + dir);
      auto f2 = field_.slice(k + 2 * dir);
      for (std::size_t p = 0; p < n; ++p) {
        out[p] = dir * (-3.0 * f0[p] + 4.0 * f1[p] - f2[p]) / (2.0 * dt);
      }
    }
  } else if (t_deriv == 2) {
    if (centered_ok) {
      auto fp = field_.slice(k + 1);
      auto f0 = field_.slice(k);
      auto fm = field_.slice(k - 1);
      for (std::size_t p = 0; p < n; ++p) out[p] = (fp[p] - 2.0 * f0[p] + fm[p]) / (dt * dt);
    } else {
      const int dir = (k - lo < margin) ? 1 : -1;
      auto f0 = field_.slice(k);
      auto f1 = field_.slice(k + dir);
      auto f2 = field_.slice(k + 2 * dir);
      auto f3 = field_.slice(k + 3 * dir);
      for (std::size_t p = 0; p < n; ++p) {
        out[p] = (2.0 * f0[p] - 5.0 * f1[p] + 4.0 * f2[p] - f3[p]) / (dt * dt);
      }
    }
  } else if (t_deriv == 3) {
    if (centered_ok) {
      auto fp2 = field_.slice(k + 2);
      auto fp1 = field_.slice(k + 1);
      auto fm1 = field_.slice(k - 1);
      auto fm2 = field_.slice(k - 2);
      for (std::size_t p = 0; p < n; ++p) {
        out[p] = (fp2[p] - 2.0 * fp1[p] + 2.0 * fm1[p] - fm2[p]) / (2.0 * dt * dt * dt);
      }
    } else {
      const int dir = (k - lo < margin) ? 1 : -1;
      auto f0 = field_.slice(k);
      auto f1 = field_.slice(k + dir);
      auto f2 = field_.slice(k + 2 * dir);
      auto f3 = field_.slice(k + 3 * dir);
      auto f4 = field_.slice(k + 4 * dir);
      for (std::size_t p = 0; p < n; ++p) {
        out[p] = dir *
                 (-2.5 * f0[p] + 9.0 * f1[p] - 12.0 * f2[p] + 7.0 * f3[p] - 1.5 * f4[p]) /
                 (dt * dt * dt);
      }
    }
  } else {
    throw std::invalid_argument("time derivative order must be 0..3");
  }
}

void SolvedMember::grad_slice(const Grid& grid, int axis, int k, std::span<double> out) const {
  auto f = field_.slice(k);
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = derivative_any(grid, f, grid.coords(p), axis);
  }
}

void SolvedMember::lap_slice(const Grid& grid, int k, std::span<double> out) const {
  auto f = field_.slice(k);
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = laplacian_any(grid, f, grid.coords(p));
  }
}

MemberSnapshot SolvedMember::snapshot(const Grid& grid) const {
  return snapshot_from_pair(grid, coeffs_, w0_, w1_);
}

MemberSnapshot snapshot_from_pair(const Grid& grid, const CoefficientSet& coeffs_guess,
                                  const ScalarField& w0, const ScalarField& w1) {
  MemberSnapshot s;
  s.r0 = w0;
  s.r1 = w1;
  s.r2 = initial_acceleration(grid, coeffs_guess, w0, w1);
  s.dr0 = gradient_field(grid, w0);
  s.dr1 = gradient_field(grid, w1);
  s.lap0 = laplacian_field(grid, w0);
  s.lap1 = laplacian_field(grid, w1);
  return s;
}

namespace {

SpatialFactor const_factor(const Grid& grid, double v) {
  return sample_spatial(
      grid, [v](const std::array<double, 3>&) { return v; },
      [](const std::array<double, 3>&) { return std::array<double, 3>{0.0, 0.0, 0.0}; },
      [](const std::array<double, 3>&) { return 0.0; });
}

SpatialFactor coordinate_factor(const Grid& grid, int axis) {
  return sample_spatial(
      grid, [axis](const std::array<double, 3>& x) { return x[axis]; },
      [axis](const std::array<double, 3>&) {
        std::array<double, 3> g{0.0, 0.0, 0.0};
        g[axis] = 1.0;
        return g;
      },
      [](const std::array<double, 3>&) { return 0.0; });
}

SpatialFactor half_square_factor(const Grid& grid, int axis) {
  return sample_spatial(
      grid, [axis](const std::array<double, 3>& x) { return 0.5 * x[axis] * x[axis]; },
      [axis](const std::array<double, 3>& x) {
        std::array<double, 3> g{0.0, 0.0, 0.0};
        g[axis] = x[axis];
        return g;
      },
      [](const std::array<double, 3>&) { return 1.0; });
}

SpatialFactor exp_factor(const Grid& grid, int axis, double scale) {
  return sample_spatial(
      grid, [axis, scale](const std::array<double, 3>& x) { return std::exp(scale * x[axis]); },
      [axis, scale](const std::array<double, 3>& x) {
        std::array<double, 3> g{0.0, 0.0, 0.0};
        g[axis] = scale * std::exp(scale * x[axis]);
        return g;
      },
      [axis, scale](const std::array<double, 3>& x) {
        return scale * scale * std::exp(scale * x[axis]);
      });
}

SpatialFactor example3_factor(const Grid& grid, const Example3Axis& f) {
  return sample_spatial(grid, f.value, f.grad, f.lap);
}

SpatialFactor example3_reflected_factor(const Grid& grid, const Example3Axis& f1, double a) {
  // phi(x) = f1(a x): grad phi = a (grad f1)(a x), Lap phi = a^2 (Lap f1)(a x).
  auto scale_point = [a](const std::array<double, 3>& x) {
    return std::array<double, 3>{a * x[0], a * x[1], a * x[2]};
  };
  return sample_spatial(
      grid, [&, scale_point](const std::array<double, 3>& x) { return f1.value(scale_point(x)); },
      [&, scale_point, a](const std::array<double, 3>& x) {
        auto g = f1.grad(scale_point(x));
        for (double& v : g) v *= a;
        return g;
      },
      [&, scale_point, a](const std::array<double, 3>& x) {
        return a * a * f1.lap(scale_point(x));
      });
}

void validate_example3(const Grid& grid, int n, const Example3Options& opts) {
  if (int(opts.f.size()) != n) {
    throw std::invalid_argument("kind-3 family needs one axis factor per dimension");
  }
  if (!(opts.a < 0.0)) throw std::invalid_argument("kind-3 reflection factor must be negative");
  const double g0 = opts.g(0.0, 0);
  const double g1 = opts.g(0.0, 1);
  const double h0 = opts.h(0.0, 0);
  const double h1 = opts.h(0.0, 1);
  if (std::abs(g0 - 1.0) > 1e-12 || std::abs(g1) > 1e-12 || std::abs(h0) > 1e-12 ||
      std::abs(h1 - 1.0) > 1e-12) {
    throw std::invalid_argument("kind-3 time profiles must satisfy g(0)=h'(0)=1, g'(0)=h(0)=0");
  }
  for (std::size_t p = 0; p < grid.n_points(); ++p) {
    const auto x = grid.point(p);
    const std::array<double, 3> ax{opts.a * x[0], opts.a * x[1], opts.a * x[2]};
    for (int j = 0; j < n; ++j) {
      const double dj = opts.f[std::size_t(j)].grad(x)[j];
      if (!(std::abs(dj) >= opts.f[std::size_t(j)].r_bound) ||
          !(opts.f[std::size_t(j)].r_bound > 0.0)) {
        throw std::invalid_argument("kind-3 axis factor violates its derivative bound");
      }
    }
    const double d1 = opts.f[0].grad(ax)[0];
    if (!(std::abs(d1) >= opts.f[0].r_bound)) {
      throw std::invalid_argument("kind-3 first factor violates its bound at reflected points");
    }
    if (!(opts.r1_tilde > 0.0) || !(std::abs(opts.f1_dxx(x)) >= opts.r1_tilde) ||
        !(std::abs(opts.f1_dxx(ax)) >= opts.r1_tilde)) {
      throw std::invalid_argument("kind-3 first factor violates the curvature bound");
    }
  }
}

}  // namespace

Example3Options example3_exponential(const Grid& grid, double a) {
  Example3Options opts;
  opts.a = a;
  opts.g = time_cos();
  opts.h = time_sin();
  for (int j = 0; j < grid.dim; ++j) {
    Example3Axis axis;
    axis.value = [j](const std::array<double, 3>& x) { return std::exp(x[j]); };
    axis.grad = [j](const std::array<double, 3>& x) {
      std::array<double, 3> g{0.0, 0.0, 0.0};
      g[j] = std::exp(x[j]);
      return g;
    };
    axis.lap = [j](const std::array<double, 3>& x) { return std::exp(x[j]); };
    // exp is increasing, so its derivative bound over the box and its
    // reflection is attained at the leftmost coordinate seen by either.
    const double leftmost = std::min({grid.lo[j], a * grid.lo[j], a * grid.hi[j]});
    axis.r_bound = std::exp(leftmost);
    opts.f.push_back(std::move(axis));
  }
  opts.f1_dx = [](const std::array<double, 3>& x) { return std::exp(x[0]); };
  opts.f1_dxx = [](const std::array<double, 3>& x) { return std::exp(x[0]); };
  opts.r1_tilde = opts.f[0].r_bound;
  return opts;
}

RFamily example_family(int kind, int n, const Grid& grid, const Example3Options* opts) {
  if (n != grid.dim) throw std::invalid_argument("family dimension does not match the grid");
  RFamily fam;
  fam.dim = n;
  const int m = n / 2;  // n = 2m (even) or n = 2m+1 (odd)
  const int count = m + 2;
  const bool odd = (n % 2) != 0;

  auto add = [&fam](std::vector<std::pair<TimeFactor, SpatialFactor>> terms) {
    fam.members.push_back(std::make_unique<SeparableMember>(std::move(terms)));
  };

  if (kind == 1) {
    add({{time_poly({0.0, 1.0}), const_factor(grid, 1.0)}});
    for (int i = 2; i <= m + 1; ++i) {
      std::vector<std::pair<TimeFactor, SpatialFactor>> terms;
      terms.emplace_back(time_const(1.0), coordinate_factor(grid, 2 * i - 4));
      terms.emplace_back(time_poly({0.0, 1.0}), coordinate_factor(grid, 2 * i - 3));
      add(std::move(terms));
    }
    if (odd) {
      std::vector<std::pair<TimeFactor, SpatialFactor>> terms;
      terms.emplace_back(time_const(1.0), coordinate_factor(grid, n - 1));
      terms.emplace_back(time_poly({0.0, 1.0}), half_square_factor(grid, 0));
      add(std::move(terms));
    } else {
      add({{time_const(1.0), half_square_factor(grid, 0)}});
    }
  } else if (kind == 2) {
    add({{time_sin(), const_factor(grid, 1.0)}});
    for (int i = 2; i <= m + 1; ++i) {
      std::vector<std::pair<TimeFactor, SpatialFactor>> terms;
      terms.emplace_back(time_cos(), exp_factor(grid, 2 * i - 4, 1.0));
      terms.emplace_back(time_sin(), exp_factor(grid, 2 * i - 3, 1.0));
      add(std::move(terms));
    }
    if (odd) {
      std::vector<std::pair<TimeFactor, SpatialFactor>> terms;
      terms.emplace_back(time_cos(), exp_factor(grid, n - 1, 1.0));
      terms.emplace_back(time_sin(), exp_factor(grid, 0, -1.0));
      add(std::move(terms));
    } else {
      add({{time_cos(), exp_factor(grid, 0, -1.0)}});
    }
  } else if (kind == 3) {
    if (opts == nullptr) throw std::invalid_argument("kind-3 family needs options");
    validate_example3(grid, n, *opts);
    add({{opts->h, const_factor(grid, 1.0)}});
    for (int i = 2; i <= m + 1; ++i) {
      std::vector<std::pair<TimeFactor, SpatialFactor>> terms;
      terms.emplace_back(opts->g, example3_factor(grid, opts->f[std::size_t(2 * i - 4)]));
      terms.emplace_back(opts->h, example3_factor(grid, opts->f[std::size_t(2 * i - 3)]));
      add(std::move(terms));
    }
    if (odd) {
      std::vector<std::pair<TimeFactor, SpatialFactor>> terms;
      terms.emplace_back(opts->g, example3_factor(grid, opts->f[std::size_t(n - 1)]));
      terms.emplace_back(opts->h, example3_reflected_factor(grid, opts->f[0], opts->a));
      add(std::move(terms));
    } else {
      add({{opts->g, example3_reflected_factor(grid, opts->f[0], opts->a)}});
    }
  } else {
    throw std::invalid_argument("family kind must be 1, 2 or 3");
  }

  if (int(fam.members.size()) != count) {
    throw std::logic_error("family member count mismatch");
  }
  return fam;
}

PointTimeFn example_member_fn(int kind, int n, int index, const Example3Options* opts) {
  const int m = n / 2;
  const bool odd = (n % 2) != 0;
  const int count = m + 2;
  if (index < 0 || index >= count) throw std::invalid_argument("member index out of range");

  if (kind == 1) {
    if (index == 0) return [](const std::array<double, 3>&, double t) { return t; };
    if (index <= m) {
      const int a0 = 2 * index - 2;
      const int a1 = 2 * index - 1;
      return [a0, a1](const std::array<double, 3>& x, double t) { return x[a0] + t * x[a1]; };
    }
    if (odd) {
      const int last = n - 1;
      return [last](const std::array<double, 3>& x, double t) {
        return x[last] + 0.5 * t * x[0] * x[0];
      };
    }
    return [](const std::array<double, 3>& x, double) { return 0.5 * x[0] * x[0]; };
  }
  if (kind == 2) {
    if (index == 0) return [](const std::array<double, 3>&, double t) { return std::sin(t); };
    if (index <= m) {
      const int a0 = 2 * index - 2;
      const int a1 = 2 * index - 1;
      return [a0, a1](const std::array<double, 3>& x, double t) {
        return std::cos(t) * std::exp(x[a0]) + std::sin(t) * std::exp(x[a1]);
      };
    }
    if (odd) {
      const int last = n - 1;
      return [last](const std::array<double, 3>& x, double t) {
        return std::cos(t) * std::exp(x[last]) + std::sin(t) * std::exp(-x[0]);
      };
    }
    return [](const std::array<double, 3>& x, double t) {
      return std::cos(t) * std::exp(-x[0]);
    };
  }
  if (kind == 3) {
    if (opts == nullptr) throw std::invalid_argument("kind-3 family needs options");
    const TimeFactor g = opts->g;
    const TimeFactor h = opts->h;
    const double a = opts->a;
    if (index == 0) return [h](const std::array<double, 3>&, double t) { return h(t, 0); };
    if (index <= m) {
      const PointFn f0 = opts->f[std::size_t(2 * index - 2)].value;
      const PointFn f1 = opts->f[std::size_t(2 * index - 1)].value;
      return [f0, f1, g, h](const std::array<double, 3>& x, double t) {
        return f0(x) * g(t, 0) + f1(x) * h(t, 0);
      };
    }
    const PointFn fn = opts->f[std::size_t(n - 1)].value;
    const PointFn f1 = opts->f[0].value;
    if (odd) {
      return [fn, f1, g, h, a](const std::array<double, 3>& x, double t) {
        return fn(x) * g(t, 0) + f1({a * x[0], a * x[1], a * x[2]}) * h(t, 0);
      };
    }
    return [f1, g, a](const std::array<double, 3>& x, double t) {
      return f1({a * x[0], a * x[1], a * x[2]}) * g(t, 0);
    };
  }
  throw std::invalid_argument("family kind must be 1, 2 or 3");
}

std::vector<InitialPair> example_initial_pairs(int kind, int n, const Grid& grid,
                                               const Example3Options* opts) {
  RFamily fam = example_family(kind, n, grid, opts);
  std::vector<InitialPair> pairs;
  pairs.reserve(fam.members.size());
  for (const auto& mem : fam.members) {
    MemberSnapshot s = mem->snapshot(grid);
    pairs.push_back(InitialPair{std::move(s.r0), std::move(s.r1)});
  }
  return pairs;
}

std::vector<BoundaryFn> example_dirichlet(int kind, int n, const Example3Options* opts) {
  const int m = n / 2;
  const int count = m + 2;
  std::vector<BoundaryFn> out;
  for (int i = 0; i < count; ++i) out.push_back(example_member_fn(kind, n, i, opts));
  return out;
}

RFamily family_from_solutions(const Grid& grid, const CoefficientSet& coeffs_guess,
                              const std::vector<InitialPair>& pairs,
                              const std::vector<BoundaryFn>& dirichlet) {
  RFamily fam;
  fam.dim = grid.dim;
  if (int(pairs.size()) != fam.expected_members()) {
    throw std::invalid_argument("family needs floor((n+4)/2) initial pairs");
  }
  if (!dirichlet.empty() && dirichlet.size() != 1 && dirichlet.size() != pairs.size()) {
    throw std::invalid_argument("boundary data must be shared or given per member");
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    BoundaryFn h;
    if (dirichlet.size() == 1) {
      h = dirichlet[0];
    } else if (!dirichlet.empty()) {
      h = dirichlet[i];
    }
    WaveField field = solve(grid, coeffs_guess, pairs[i].w0, pairs[i].w1, h);
    fam.members.push_back(
        std::make_unique<SolvedMember>(std::move(field), coeffs_guess, pairs[i].w0, pairs[i].w1));
  }
  return fam;
}

ProfileSource::ProfileSource(const Grid& grid, const ReferenceMember& member,
                             const SourceProfile& profile)
    : member_(member), profile_(profile) {
  buf_a_.resize(grid.n_points());
  buf_b_.resize(grid.n_points());
}

void ProfileSource::fill(const Grid& grid, int k, std::span<double> out) const {
  const std::size_t n = out.size();
  member_.value_slice(grid, 0, k, buf_a_);
  member_.value_slice(grid, 1, k, buf_b_);
  for (std::size_t p = 0; p < n; ++p) {
    out[p] = profile_.f0[p] * buf_a_[p] + profile_.f1[p] * buf_b_[p];
  }
  for (int a = 0; a < grid.dim; ++a) {
    member_.grad_slice(grid, a, k, buf_a_);
    for (std::size_t p = 0; p < n; ++p) out[p] += profile_.f.comp[a][p] * buf_a_[p];
  }
  member_.lap_slice(grid, k, buf_a_);
  for (std::size_t p = 0; p < n; ++p) out[p] += profile_.f2[p] * buf_a_[p];
}

ScalarField evaluate_source_slice(const Grid& grid, const ReferenceMember& member,
                                  const SourceProfile& profile, int k) {
  ScalarField out(grid.n_points());
  ProfileSource src(grid, member, profile);
  src.fill(grid, k, out);
  return out;
}

std::vector<SpatialFactor> poly_positions(int n, const Grid& grid) {
  std::vector<SpatialFactor> pos;
  pos.push_back(const_factor(grid, 1.0));
  for (int a = 0; a < n; ++a) pos.push_back(coordinate_factor(grid, a));
  pos.push_back(half_square_factor(grid, 0));
  // x_2^2/2 + 2 x_1 keeps the determinant away from zero on the whole box.
  {
    SpatialFactor s = sample_spatial(
        grid,
        [](const std::array<double, 3>& x) { return 0.5 * x[1] * x[1] + 2.0 * x[0]; },
        [](const std::array<double, 3>& x) {
          return std::array<double, 3>{2.0, x[1], 0.0};
        },
        [](const std::array<double, 3>&) { return 1.0; });
    pos.push_back(std::move(s));
  }
  if (int(pos.size()) != n + 3) throw std::logic_error("position count mismatch");
  return pos;
}

}  // namespace cwave
