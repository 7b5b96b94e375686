#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cwave/carleman.hpp"
#include "cwave/field.hpp"
#include "cwave/format.hpp"
#include "cwave/geometry.hpp"
#include "cwave/grid.hpp"
#include "cwave/matrix.hpp"
#include "cwave/recovery.hpp"
#include "cwave/solver.hpp"

namespace cwave {

// 64-byte little-endian header followed by 64-bit float slices, time-major,
// row-major within a slice.
//
//   offset  field
//   0       magic "CWAVEBIN"
//   8       u16 version (1)
//   10      u16 kind (0 grid field, 1 boundary trace)
//   12      u16 dim
//   14      u16 aux: boundary sample count for traces, 0 for fields
//   16      u16 npts[3] (unused axes 1)
//   22      u16 pad (0)
//   24      f64 h[3] (unused axes 0)
//   48      f64 dt
//   56      i32 first_time_index, relative to the axis center (t = index*dt)
//   60      u32 slice count
struct FieldFileHeader {
  std::uint16_t version = 1;
  std::uint16_t kind = 0;
  std::uint16_t dim = 0;
  std::uint16_t aux = 0;
  std::array<std::uint16_t, 3> npts{1, 1, 1};
  std::array<double, 3> h{0.0, 0.0, 0.0};
  double dt = 0.0;
  std::int32_t first_time_index = 0;
  std::uint32_t n_slices = 0;

  std::size_t values_per_slice() const;
};

struct LoadedField {
  FieldFileHeader header;
  std::vector<double> data;

  std::span<const double> slice(std::size_t i) const {
    const std::size_t n = header.values_per_slice();
    return {data.data() + i * n, n};
  }
};

void write_wave_field(const std::filesystem::path& path, const WaveField& field);
// Keeps every stride-th slice around t = 0; the header carries the coarsened
// step so the file stays self-describing.
void write_wave_field_strided(const std::filesystem::path& path, const WaveField& field,
                              int stride);
void write_scalar_field(const std::filesystem::path& path, const Grid& grid,
                        const ScalarField& values);
void write_trace_binary(const std::filesystem::path& path, const Grid& grid,
                        const TraceSeries& trace);
LoadedField read_field_file(const std::filesystem::path& path);
// Reads a one-slice grid field and checks it matches the grid.
ScalarField read_scalar_field(const std::filesystem::path& path, const Grid& grid);

// CSV outputs. Doubles are shortest round-trip; rows end with \n.
void write_trace_csv(const std::filesystem::path& path, const Grid& grid,
                     const TraceSeries& trace);
void write_det_summary_csv(const std::filesystem::path& path, const Grid& grid,
                           const DeterminantField& dets);
void write_geometry_report(const std::filesystem::path& path, const GeometryReport& report);
void write_stability_csv(const std::filesystem::path& path, const StabilityReport& report);
void write_stability_report(const std::filesystem::path& path, const StabilityReport& report);
void write_tau_sweep_csv(const std::filesystem::path& path,
                         std::span<const CarlemanTerms> rows);
void write_observability_csv(const std::filesystem::path& path,
                             const ObservabilityReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace cwave
