#include "cwave/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; this build targets LE hosts");

namespace cwave {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::size_t FieldFileHeader::values_per_slice() const {
  if (kind == 1) return aux;
  return std::size_t(npts[0]) * std::size_t(npts[1]) * std::size_t(npts[2]);
}

namespace {

constexpr char kMagic[8] = {'C', 'W', 'A', 'V', 'E', 'B', 'I', 'N'};

void encode_header(const FieldFileHeader& h, char out[64]) {
  std::memset(out, 0, 64);
  std::memcpy(out, kMagic, 8);
  std::memcpy(out + 8, &h.version, 2);
  std::memcpy(out + 10, &h.kind, 2);
  std::memcpy(out + 12, &h.dim, 2);
  std::memcpy(out + 14, &h.aux, 2);
  std::memcpy(out + 16, h.npts.data(), 6);
  std::memcpy(out + 24, h.h.data(), 24);
  std::memcpy(out + 48, &h.dt, 8);
  std::memcpy(out + 56, &h.first_time_index, 4);
  std::memcpy(out + 60, &h.n_slices, 4);
}

FieldFileHeader decode_header(const char in[64]) {
  if (std::memcmp(in, kMagic, 8) != 0) throw std::runtime_error("not a field file");
  FieldFileHeader h;
  std::memcpy(&h.version, in + 8, 2);
  std::memcpy(&h.kind, in + 10, 2);
  std::memcpy(&h.dim, in + 12, 2);
  std::memcpy(&h.aux, in + 14, 2);
  std::memcpy(h.npts.data(), in + 16, 6);
  std::memcpy(h.h.data(), in + 24, 24);
  std::memcpy(&h.dt, in + 48, 8);
  std::memcpy(&h.first_time_index, in + 56, 4);
  std::memcpy(&h.n_slices, in + 60, 4);
  if (h.version != 1) throw std::runtime_error("unsupported field file version");
  return h;
}

void write_binary(const std::filesystem::path& path, const FieldFileHeader& header,
                  std::span<const double> payload) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  char buf[64];
  encode_header(header, buf);
  out.write(buf, 64);
  out.write(reinterpret_cast<const char*>(payload.data()),
            std::streamsize(payload.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

FieldFileHeader header_for_grid(const Grid& grid) {
  FieldFileHeader h;
  h.kind = 0;
  h.dim = std::uint16_t(grid.dim);
  for (int a = 0; a < 3; ++a) {
    h.npts[a] = std::uint16_t(grid.npts[a]);
    h.h[a] = grid.h[a];
  }
  h.dt = grid.dt;
  return h;
}

}  // namespace

void write_wave_field(const std::filesystem::path& path, const WaveField& field) {
  FieldFileHeader h = header_for_grid(field.grid());
  h.first_time_index = field.first_index() - field.grid().center_index();
  h.n_slices = std::uint32_t(field.n_slices());
  std::vector<double> payload;
  payload.reserve(std::size_t(field.n_slices()) * field.grid().n_points());
  for (int k = field.first_index(); k <= field.last_index(); ++k) {
    auto s = field.slice(k);
    payload.insert(payload.end(), s.begin(), s.end());
  }
  write_binary(path, h, payload);
}

void write_wave_field_strided(const std::filesystem::path& path, const WaveField& field,
                              int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be positive");
  const Grid& grid = field.grid();
  const int center = grid.center_index();
  int below = 0;
  while (field.covers(center - (below + 1) * stride)) ++below;
  int above = 0;
  while (field.covers(center + (above + 1) * stride)) ++above;

  FieldFileHeader h = header_for_grid(grid);
  h.dt = grid.dt * stride;
  h.first_time_index = -below;
  h.n_slices = std::uint32_t(below + above + 1);
  std::vector<double> payload;
  payload.reserve(std::size_t(h.n_slices) * grid.n_points());
  for (int j = -below; j <= above; ++j) {
    auto s = field.slice(center + j * stride);
    payload.insert(payload.end(), s.begin(), s.end());
  }
  write_binary(path, h, payload);
}

void write_scalar_field(const std::filesystem::path& path, const Grid& grid,
                        const ScalarField& values) {
  if (values.size() != grid.n_points()) {
    throw std::invalid_argument("field size does not match the grid");
  }
  FieldFileHeader h = header_for_grid(grid);
  h.first_time_index = 0;
  h.n_slices = 1;
  write_binary(path, h, values);
}

void write_trace_binary(const std::filesystem::path& path, const Grid& grid,
                        const TraceSeries& trace) {
  FieldFileHeader h = header_for_grid(grid);
  h.kind = 1;
  h.aux = std::uint16_t(trace.samples.size());
  h.first_time_index = trace.first_index - grid.center_index();
  h.n_slices = std::uint32_t(trace.n_slices);
  write_binary(path, h, trace.values);
}

LoadedField read_field_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  char buf[64];
  in.read(buf, 64);
  if (in.gcount() != 64) throw std::runtime_error("truncated field file header");
  LoadedField lf;
  lf.header = decode_header(buf);
  const std::size_t count = lf.header.values_per_slice() * lf.header.n_slices;
  lf.data.resize(count);
  in.read(reinterpret_cast<char*>(lf.data.data()), std::streamsize(count * sizeof(double)));
  if (std::size_t(in.gcount()) != count * sizeof(double)) {
    throw std::runtime_error("truncated field file payload");
  }
  return lf;
}

ScalarField read_scalar_field(const std::filesystem::path& path, const Grid& grid) {
  LoadedField lf = read_field_file(path);
  if (lf.header.kind != 0 || lf.header.n_slices != 1) {
    throw std::runtime_error("expected a one-slice grid field: " + path.string());
  }
  for (int a = 0; a < grid.dim; ++a) {
    if (lf.header.npts[a] != grid.npts[a]) {
      throw std::runtime_error("field resolution does not match the grid: " + path.string());
    }
  }
  return lf.data;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_trace_csv(const std::filesystem::path& path, const Grid& grid,
                     const TraceSeries& trace) {
  std::ostringstream out;
  out << "t,sample,value\n";
  for (int k = trace.first_index; k < trace.first_index + trace.n_slices; ++k) {
    const double t = grid.time_at(k);
    auto v = trace.slice(k);
    for (std::size_t i = 0; i < v.size(); ++i) {
      out << format_double(t) << ',' << i << ',' << format_double(v[i]) << '\n';
    }
  }
  write_text_file(path, out.str());
}

void write_det_summary_csv(const std::filesystem::path& path, const Grid& grid,
                           const DeterminantField& dets) {
  std::ostringstream out;
  out << "x0,x1";
  if (grid.dim > 2) out << ",x2";
  out << ",det,cond,pass\n";
  for (std::size_t p = 0; p < dets.det.size(); ++p) {
    const auto x = grid.point(p);
    out << format_double(x[0]) << ',' << format_double(x[1]);
    if (grid.dim > 2) out << ',' << format_double(x[2]);
    const bool pass = std::abs(dets.det[p]) >= dets.r0;
    out << ',' << format_double(dets.det[p]) << ',' << format_double(dets.cond[p]) << ','
        << (pass ? "1" : "0") << '\n';
  }
  write_text_file(path, out.str());
}

void write_geometry_report(const std::filesystem::path& path, const GeometryReport& report) {
  write_text_file(path, report.to_text());
}

void write_stability_csv(const std::filesystem::path& path, const StabilityReport& report) {
  std::ostringstream out;
  out << "member,LHS,RHS,ratio\n";
  for (const StabilityEntry& e : report.entries) {
    out << e.member << ',' << format_double(e.lhs) << ',' << format_double(e.rhs) << ','
        << format_double(e.ratio) << '\n';
  }
  write_text_file(path, out.str());
}

void write_stability_report(const std::filesystem::path& path, const StabilityReport& report) {
  std::ostringstream out;
  out << "seed = " << report.seed << "\n";
  out << "amplitude = " << format_double(report.amplitude) << "\n";
  out << "modes = " << report.modes << "\n";
  out << "members = " << report.entries.size() << "\n";
  out << "min_ratio = " << format_double(report.min_ratio) << "\n";
  out << "max_ratio = " << format_double(report.max_ratio) << "\n";
  out << "mean_ratio = " << format_double(report.mean_ratio) << "\n";
  out << "min_abs_det = " << format_double(report.min_abs_det) << "\n";
  int flagged = 0;
  for (const auto& e : report.entries) flagged += e.degenerate ? 1 : 0;
  out << "flagged = " << flagged << "\n";
  for (const auto& e : report.entries) {
    if (e.degenerate) out << "note_" << e.member << " = " << e.note << "\n";
  }
  write_text_file(path, out.str());
}

void write_tau_sweep_csv(const std::filesystem::path& path,
                         std::span<const CarlemanTerms> rows) {
  std::ostringstream out;
  out << "# convention: |Dw|^2 = c^2 |grad w|^2, <Dd,nu> = c^2 dd/dnu, "
         "Lap_g d = c^2 Lap d + c^n grad(c^(2-n)).grad d\n";
  out << "tau,bt_1,bt_2,bt_3,bt_4,bt_5,bt_total,int_g2_weighted,int_w2_sigma_scaled,"
         "endpoint_energy,weighted_energy,weighted_mass_sigma,lhs_candidate,rhs_candidate,"
         "c1_tau,c2_tau\n";
  for (const CarlemanTerms& r : rows) {
    out << format_double(r.tau);
    for (int i = 0; i < 5; ++i) out << ',' << format_double(r.bt.term[i]);
    out << ',' << format_double(r.bt.total) << ',' << format_double(r.int_g2_weighted) << ','
        << format_double(r.int_w2_sigma_scaled) << ',' << format_double(r.endpoint_energy) << ','
        << format_double(r.weighted_energy) << ',' << format_double(r.weighted_mass_sigma) << ','
        << format_double(r.lhs_candidate) << ',' << format_double(r.rhs_candidate) << ','
        << format_double(r.c1_tau) << ',' << format_double(r.c2_tau) << '\n';
  }
  write_text_file(path, out.str());
}

void write_observability_csv(const std::filesystem::path& path,
                             const ObservabilityReport& report) {
  std::ostringstream out;
  out << "member,E0,trace_sq,G_sq,empirical_constant\n";
  for (const ObservabilityEntry& e : report.entries) {
    out << e.member << ',' << format_double(e.e0) << ',' << format_double(e.trace_sq) << ','
        << format_double(e.g_sq) << ',' << format_double(e.constant) << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace cwave
