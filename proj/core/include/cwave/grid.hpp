#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cwave {

// Fraction of the plain stability limit h_min / (c_max * sqrt(dim)) the time
// step must stay under.
inline constexpr double kCflSafety = 0.5;

class CflError : public std::runtime_error {
 public:
  CflError(double dt, double limit)
      : std::runtime_error("time step " + std::to_string(dt) +
                           " exceeds the stability limit " + std::to_string(limit)),
        dt_(dt),
        limit_(limit) {}
  double dt() const { return dt_; }
  double limit() const { return limit_; }

 private:
  double dt_;
  double limit_;
};

enum class BoundaryPart : std::uint8_t { gamma0 = 0, gamma1 = 1 };

// Axis-aligned box face; id = 2*axis + (high ? 1 : 0).
struct Face {
  int axis = 0;
  bool high = false;

  int id() const { return 2 * axis + (high ? 1 : 0); }
  static Face from_id(int id) { return Face{id / 2, (id % 2) != 0}; }
};

// Face name tokens: x_low, x_high, y_low, y_high, z_low, z_high.
std::string face_name(int face_id);
int face_id_from_name(const std::string& name);

struct GridSpec {
  int dim = 2;
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
  std::array<int, 3> npts{0, 0, 0};
  std::vector<int> gamma1_faces;  // observed faces; every other face is gamma0
  double dt = 0.0;
  double horizon = 0.0;  // time axis spans [-horizon, horizon]
  double cmax_hint = 1.0;
};

// Uniform tensor grid on an axis-aligned box, with a face-granular boundary
// partition and a centered time axis: t_k = (k - half_steps)*dt for
// k = 0 .. 2*half_steps, so t = 0 lies exactly on the axis.
struct Grid {
  int dim = 2;
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  std::array<int, 3> npts{1, 1, 1};
  std::array<double, 3> h{0.0, 0.0, 0.0};
  std::array<BoundaryPart, 6> face_label{};
  double dt = 0.0;
  double horizon = 0.0;
  int half_steps = 0;

  std::size_t n_points() const {
    return std::size_t(npts[0]) * std::size_t(npts[1]) * std::size_t(npts[2]);
  }
  int n_time_samples() const { return 2 * half_steps + 1; }
  int center_index() const { return half_steps; }
  double time_at(int k) const { return (k - half_steps) * dt; }

  std::size_t index(int ix, int iy, int iz = 0) const {
    return std::size_t(ix) +
           std::size_t(npts[0]) * (std::size_t(iy) + std::size_t(npts[1]) * std::size_t(iz));
  }
  std::array<int, 3> coords(std::size_t idx) const {
    const int nx = npts[0];
    const int ny = npts[1];
    const int ix = int(idx % std::size_t(nx));
    const std::size_t rest = idx / std::size_t(nx);
    const int iy = int(rest % std::size_t(ny));
    const int iz = int(rest / std::size_t(ny));
    return {ix, iy, iz};
  }
  std::array<double, 3> point(int ix, int iy, int iz = 0) const {
    return {lo[0] + ix * h[0], lo[1] + iy * h[1], dim > 2 ? lo[2] + iz * h[2] : 0.0};
  }
  std::array<double, 3> point(std::size_t idx) const {
    const auto c = coords(idx);
    return point(c[0], c[1], c[2]);
  }
  bool is_boundary(const std::array<int, 3>& c) const {
    for (int a = 0; a < dim; ++a) {
      if (c[a] == 0 || c[a] == npts[a] - 1) return true;
    }
    return false;
  }
  double min_spacing() const {
    double m = h[0];
    for (int a = 1; a < dim; ++a) m = m < h[a] ? m : h[a];
    return m;
  }
  double cfl_limit(double cmax) const;

  std::vector<Face> faces() const;
  std::vector<Face> part_faces(BoundaryPart part) const;
};

// Validates the spec and fixes the time axis: the step is shrunk, if needed,
// to the nearest value dividing the horizon exactly, which keeps t = 0 on the
// axis and an odd sample count. Throws CflError when the effective step
// violates the stability limit for cmax_hint, std::invalid_argument on
// inconsistent face labels or malformed extents.
Grid build_grid(const GridSpec& spec);

}  // namespace cwave
