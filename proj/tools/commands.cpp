#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>

#include "cwave/config.hpp"
#include "cwave/io.hpp"

namespace cwave::cli {

namespace {

struct Context {
  ExperimentConfig cfg;
  Grid grid;
  std::filesystem::path outdir;
};

Context load(const std::filesystem::path& config, const Overrides& ov) {
  Context ctx;
  ctx.cfg = load_experiment_config(config);
  if (ov.output) ctx.cfg.output_dir = *ov.output;
  if (ov.seed) ctx.cfg.inverse.seed = *ov.seed;
  ctx.grid = build_grid(ctx.cfg.grid);
  ctx.outdir = ctx.cfg.output_dir;
  std::filesystem::create_directories(ctx.outdir);
  return ctx;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const AnchorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CflError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const DetConditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// Returns 0 when the horizon clears the observation time, 3 otherwise.
int check_horizon(const Grid& grid, const ScalarField& d) {
  const double t0 = observation_time(d);
  if (!(grid.horizon > t0)) {
    std::cerr << "error: horizon below observation time (T = " << format_double(grid.horizon)
              << ", T0 = " << format_double(t0) << ")\n";
    return 3;
  }
  return 0;
}

FieldSpec simulate_field_spec(const Config& raw, const std::string& key,
                              const std::string& fallback) {
  std::vector<std::string> tokens;
  if (raw.has("simulate", key)) {
    tokens = raw.get_tokens("simulate", key);
  } else {
    std::istringstream in(fallback);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
  }
  return parse_field_spec(tokens, "simulate." + key);
}

int effective_pairs_kind(const FamilySpec& family) {
  switch (family.kind) {
    case FamilyKind::example1:
      return 1;
    case FamilyKind::example2:
      return 2;
    case FamilyKind::example3:
      return 3;
    case FamilyKind::solved:
      return family.pairs_kind;
  }
  return 1;
}

double default_r0(const Grid& grid, int pairs_kind, const Example3Options* opts) {
  double min_abs = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < grid.n_points(); ++p) {
    const double det = closed_form_det(pairs_kind, grid.dim, grid.point(p), opts);
    min_abs = std::min(min_abs, std::abs(det));
  }
  return 0.5 * min_abs;
}

void write_profile_fields(const std::filesystem::path& dir, const Grid& grid,
                          const SourceProfile& profile) {
  write_scalar_field(dir / "f0.field", grid, profile.f0);
  write_scalar_field(dir / "f1.field", grid, profile.f1);
  write_scalar_field(dir / "f2.field", grid, profile.f2);
  const char* names[3] = {"fx.field", "fy.field", "fz.field"};
  for (int a = 0; a < grid.dim; ++a) {
    write_scalar_field(dir / names[a], grid, profile.f.comp[a]);
  }
}

void write_coefficient_fields(const std::filesystem::path& dir, const Grid& grid,
                              const CoefficientSet& coeffs) {
  write_scalar_field(dir / "c.field", grid, coeffs.c);
  write_scalar_field(dir / "q1.field", grid, coeffs.q1);
  write_scalar_field(dir / "q0.field", grid, coeffs.q0);
  const char* names[3] = {"qx.field", "qy.field", "qz.field"};
  for (int a = 0; a < grid.dim; ++a) {
    write_scalar_field(dir / names[a], grid, coeffs.q.comp[a]);
  }
}

}  // namespace

int cmd_check_geometry(const std::filesystem::path& config, const Overrides& ov) {
  return guarded([&]() -> int {
    Context ctx = load(config, ov);
    const ScalarField d = convexity_weight(ctx.cfg.geometry.x0, ctx.grid);
    if (const int rc = check_horizon(ctx.grid, d); rc != 0) return rc;
    const CarlemanParams params =
        make_carleman_params(ctx.grid, ctx.cfg.geometry.x0, ctx.cfg.geometry.sigma);
    q_sigma(params, ctx.grid);  // verifies the slab containment
    const CoefficientSet truth = ctx.cfg.truth.realize(ctx.grid);
    const GeometryReport report =
        check_assumptions(ctx.grid, d, truth.c, ctx.cfg.geometry.x0, ctx.cfg.geometry.rc);
    write_geometry_report(ctx.outdir / "geometry_report.txt", report);

    std::cout << report.to_text();
    std::cout << "alpha = " << format_double(params.alpha) << "\n";
    std::cout << "delta = " << format_double(params.delta) << "\n";
    std::cout << "sigma = " << format_double(params.sigma) << "\n";
    std::cout << "t1 = " << format_double(params.t1) << "\n";
    for (const Face& f : ctx.grid.part_faces(BoundaryPart::gamma0)) {
      std::cout << "gamma0 " << face_name(f.id())
                << " max_dn = " << format_double(report.gamma0_face_max_dn[f.id()]) << "\n";
    }
    if (report.a2_boundary_case) {
      std::cout << "note: the convexity ratio sits exactly at the threshold 4\n";
    }
    return report.all_pass() ? 0 : 8;
  });
}

int cmd_simulate(const std::filesystem::path& config, const Overrides& ov) {
  return guarded([&]() -> int {
    const Config raw = Config::parse_file(config);
    Context ctx = load(config, ov);
    const CoefficientSet coeffs = ctx.cfg.truth.realize(ctx.grid);
    const ScalarField w0 = simulate_field_spec(raw, "w0", "sine 0 1").realize(ctx.grid);
    const ScalarField w1 = simulate_field_spec(raw, "w1", "constant 0").realize(ctx.grid);

    const WaveField field = solve(ctx.grid, coeffs, w0, w1, nullptr);
    int stride = raw.get_int_or("simulate", "output_stride", 0);
    if (stride <= 0) stride = std::max(1, field.n_slices() / 200);
    write_wave_field_strided(ctx.outdir / "field.field", field, stride);

    if (!ctx.grid.part_faces(BoundaryPart::gamma1).empty()) {
      const TraceSeries trace = neumann_trace(field, BoundaryPart::gamma1);
      write_trace_csv(ctx.outdir / "trace.csv", ctx.grid, trace);
      write_trace_binary(ctx.outdir / "trace.field", ctx.grid, trace);
    }
    const EnergySeries es = energy(field, coeffs);
    std::ostringstream report;
    report << "slices = " << field.n_slices() << "\n";
    report << "output_stride = " << stride << "\n";
    report << "energy_h1_t0 = "
           << format_double(es.h1[std::size_t(ctx.grid.center_index())]) << "\n";
    report << "energy_physical_drift = "
           << format_double(*std::max_element(es.physical.begin(), es.physical.end()) -
                            *std::min_element(es.physical.begin(), es.physical.end()))
           << "\n";
    write_text_file(ctx.outdir / "report.txt", report.str());
    std::cout << report.str();
    return 0;
  });
}

int cmd_recover(const std::filesystem::path& config, const Overrides& ov) {
  return guarded([&]() -> int {
    Context ctx = load(config, ov);
    const CoefficientSet truth = ctx.cfg.truth.realize(ctx.grid);
    const CoefficientSet guess = ctx.cfg.guess.realize(ctx.grid);
    const int n = ctx.grid.dim;

    const int pairs_kind = effective_pairs_kind(ctx.cfg.family);
    Example3Options opts3;
    const Example3Options* opts = nullptr;
    if (pairs_kind == 3) {
      opts3 = example3_exponential(ctx.grid, ctx.cfg.family.a);
      opts = &opts3;
    }

    SnapshotRHS rhs;
    MatrixField matrix;
    double r0 = 0.0;
    if (ctx.cfg.inverse.mode == InverseMode::standard) {
      const std::vector<InitialPair> pairs =
          example_initial_pairs(pairs_kind, n, ctx.grid, opts);
      std::vector<BoundaryFn> dirichlet;
      if (ctx.cfg.family.matched_boundary) dirichlet = example_dirichlet(pairs_kind, n, opts);

      std::vector<MemberSnapshot> snapshots;
      for (const InitialPair& pr : pairs) {
        snapshots.push_back(snapshot_from_pair(ctx.grid, guess, pr.w0, pr.w1));
      }
      matrix = assemble_matrix(ctx.grid, snapshots, MatrixLayout::damping_shifted, &truth.q1);
      r0 = ctx.cfg.inverse.r0.value_or(default_r0(ctx.grid, pairs_kind, opts));

      std::vector<WaveField> fields;
      std::vector<const WaveField*> ptrs;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        BoundaryFn h;
        if (!dirichlet.empty()) h = dirichlet[i];
        fields.push_back(difference_field(ctx.grid, truth, guess, pairs[i].w0, pairs[i].w1, h,
                                          MarchOptions{2}));
      }
      for (const WaveField& f : fields) ptrs.push_back(&f);
      rhs = snapshot_rhs(ctx.grid, ptrs);
    } else {
      const std::vector<SpatialFactor> positions = poly_positions(n, ctx.grid);
      const ScalarField w1 = constant_field(ctx.grid, 1.0);
      matrix = assemble_remark1(ctx.grid, positions, w1);
      r0 = ctx.cfg.inverse.r0.value_or(0.5);

      std::vector<WaveField> fields;
      std::vector<const WaveField*> ptrs;
      for (const SpatialFactor& pos : positions) {
        // Boundary data frozen at the initial position keeps the data
        // compatible for both coefficient sets.
        const ScalarField& phi = pos.phi;
        const Grid& grid = ctx.grid;
        BoundaryFn h = [&grid, &phi](const std::array<double, 3>& x, double) {
          const int ix = int(std::lround((x[0] - grid.lo[0]) / grid.h[0]));
          const int iy = int(std::lround((x[1] - grid.lo[1]) / grid.h[1]));
          const int iz = grid.dim > 2 ? int(std::lround((x[2] - grid.lo[2]) / grid.h[2])) : 0;
          return phi[grid.index(ix, iy, iz)];
        };
        fields.push_back(
            difference_field(ctx.grid, truth, guess, pos.phi, w1, h, MarchOptions{1}));
      }
      for (const WaveField& f : fields) ptrs.push_back(&f);
      rhs = snapshot_rhs_single(ctx.grid, ptrs);
    }

    const DeterminantField dets = determinant_field(ctx.grid, matrix, r0);
    write_det_summary_csv(ctx.outdir / "det_summary.csv", ctx.grid, dets);

    const RecoveryResult result = recover_profile(ctx.grid, rhs, matrix, r0);
    const CoefficientSet recovered = apply_recovery(ctx.grid, guess, result.profile);

    write_profile_fields(ctx.outdir, ctx.grid, result.profile);
    write_coefficient_fields(ctx.outdir, ctx.grid, recovered);

    const SourceProfile expected = linearize(truth, guess);
    std::ostringstream report;
    report << "min_abs_det = " << format_double(result.min_abs_det) << "\n";
    report << "r0 = " << format_double(r0) << "\n";
    report << "max_cond = " << format_double(result.max_cond) << "\n";
    report << "cond_warnings = " << result.cond_warnings << "\n";
    auto field_errors = [&](const std::string& name, const ScalarField& got,
                            const ScalarField& want) {
      report << name << "_max_err = " << format_double(max_abs_diff(got, want)) << "\n";
      ScalarField diff(got.size());
      for (std::size_t p = 0; p < got.size(); ++p) diff[p] = got[p] - want[p];
      report << name << "_l2_err = " << format_double(std::sqrt(l2_norm_sq(ctx.grid, diff)))
             << "\n";
    };
    field_errors("f0", result.profile.f0, expected.f0);
    field_errors("f1", result.profile.f1, expected.f1);
    field_errors("f2", result.profile.f2, expected.f2);
    const char* comp_names[3] = {"fx", "fy", "fz"};
    for (int a = 0; a < n; ++a) {
      field_errors(comp_names[a], result.profile.f.comp[a], expected.f.comp[a]);
    }
    field_errors("c", recovered.c, truth.c);
    field_errors("q1", recovered.q1, truth.q1);
    field_errors("q0", recovered.q0, truth.q0);
    const char* q_names[3] = {"qx", "qy", "qz"};
    for (int a = 0; a < n; ++a) {
      field_errors(q_names[a], recovered.q.comp[a], truth.q.comp[a]);
    }
    write_text_file(ctx.outdir / "errors.txt", report.str());
    std::cout << report.str();
    return 0;
  });
}

int cmd_stability_probe(const std::filesystem::path& config, const Overrides& ov) {
  return guarded([&]() -> int {
    Context ctx = load(config, ov);
    if (ctx.cfg.inverse.ensemble < 1) {
      std::cerr << "error: empty ensemble\n";
      return 6;
    }
    const CoefficientSet truth = ctx.cfg.truth.realize(ctx.grid);
    const int n = ctx.grid.dim;
    const int pairs_kind = effective_pairs_kind(ctx.cfg.family);
    Example3Options opts3;
    const Example3Options* opts = nullptr;
    if (pairs_kind == 3) {
      opts3 = example3_exponential(ctx.grid, ctx.cfg.family.a);
      opts = &opts3;
    }

    RFamily family;
    if (ctx.cfg.family.kind == FamilyKind::solved) {
      const CoefficientSet guess = ctx.cfg.guess.realize(ctx.grid);
      const std::vector<InitialPair> pairs =
          example_initial_pairs(pairs_kind, n, ctx.grid, opts);
      std::vector<BoundaryFn> dirichlet;
      if (ctx.cfg.family.matched_boundary) dirichlet = example_dirichlet(pairs_kind, n, opts);
      family = family_from_solutions(ctx.grid, guess, pairs, dirichlet);
    } else {
      family = example_family(pairs_kind, n, ctx.grid, opts);
    }

    EnsembleSpec spec;
    spec.size = ctx.cfg.inverse.ensemble;
    spec.seed = ctx.cfg.inverse.seed;
    spec.amplitude = ctx.cfg.inverse.amplitude;
    spec.modes = ctx.cfg.inverse.modes;
    const StabilityReport report = stability_probe(ctx.grid, truth, family, spec);
    write_stability_csv(ctx.outdir / "stability.csv", report);
    write_stability_report(ctx.outdir / "report.txt", report);
    std::cout << "max_ratio = " << format_double(report.max_ratio) << "\n";
    std::cout << "min_abs_det = " << format_double(report.min_abs_det) << "\n";
    return 0;
  });
}

int cmd_carleman(const std::filesystem::path& config, const Overrides& ov) {
  return guarded([&]() -> int {
    const Config raw = Config::parse_file(config);
    Context ctx = load(config, ov);
    const std::vector<double>& taus = ctx.cfg.carleman.taus;
    if (taus.empty()) {
      std::cerr << "config error: carleman.tau is required\n";
      return 1;
    }
    for (std::size_t i = 1; i < taus.size(); ++i) {
      if (!(taus[i] > taus[i - 1])) {
        std::cerr << "error: tau list must increase\n";
        return 7;
      }
    }
    const ScalarField d = convexity_weight(ctx.cfg.geometry.x0, ctx.grid);
    if (const int rc = check_horizon(ctx.grid, d); rc != 0) return rc;
    const CarlemanParams params =
        make_carleman_params(ctx.grid, ctx.cfg.geometry.x0, ctx.cfg.geometry.sigma);

    const CoefficientSet coeffs = ctx.cfg.truth.realize(ctx.grid);
    const ScalarField w0 = simulate_field_spec(raw, "w0", "sine 0 1").realize(ctx.grid);
    const ScalarField w1 = simulate_field_spec(raw, "w1", "constant 0").realize(ctx.grid);
    const WaveField field = solve(ctx.grid, coeffs, w0, w1, nullptr);

    const ZeroSource zero;
    const std::vector<CarlemanTerms> rows =
        tau_sweep(field, zero, coeffs, params, taus, ctx.cfg.carleman.constants);
    write_tau_sweep_csv(ctx.outdir / "tau_sweep.csv", rows);
    std::cout << "rows = " << rows.size() << "\n";
    return 0;
  });
}

int cmd_observability(const std::filesystem::path& config, const Overrides& ov) {
  return guarded([&]() -> int {
    const Config raw = Config::parse_file(config);
    Context ctx = load(config, ov);
    const ScalarField d = convexity_weight(ctx.cfg.geometry.x0, ctx.grid);
    if (const int rc = check_horizon(ctx.grid, d); rc != 0) return rc;
    const CarlemanParams params =
        make_carleman_params(ctx.grid, ctx.cfg.geometry.x0, ctx.cfg.geometry.sigma);
    const CoefficientSet coeffs = ctx.cfg.truth.realize(ctx.grid);
    const GeometryReport geometry =
        check_assumptions(ctx.grid, d, coeffs.c, ctx.cfg.geometry.x0, ctx.cfg.geometry.rc);
    if (!geometry.all_pass()) {
      std::cerr << "error: geometry checks failed; see check-geometry\n";
      return 8;
    }

    const int members = raw.get_int_or("observability", "members", 4);
    if (members < 1) {
      std::cerr << "error: empty ensemble\n";
      return 6;
    }
    std::vector<InitialPair> pairs;
    for (int k = 1; k <= members; ++k) {
      FieldSpec spec;
      spec.kind = FieldSpec::Kind::sine;
      spec.base = 0.0;
      spec.amplitude = 1.0;
      spec.mode = k;
      pairs.push_back(InitialPair{spec.realize(ctx.grid), constant_field(ctx.grid, 0.0)});
    }
    const ObservabilityReport report =
        observability_probe(ctx.grid, coeffs, params, geometry, pairs);
    write_observability_csv(ctx.outdir / "observability.csv", report);
    std::ostringstream txt;
    txt << "members = " << report.entries.size() << "\n";
    txt << "max_constant = " << format_double(report.max_constant) << "\n";
    txt << "has_infinite = " << (report.has_infinite ? "true" : "false") << "\n";
    txt << "has_flagged = " << (report.has_flagged ? "true" : "false") << "\n";
    write_text_file(ctx.outdir / "report.txt", txt.str());
    std::cout << txt.str();
    return report.has_infinite ? 8 : 0;
  });
}

}  // namespace cwave::cli
