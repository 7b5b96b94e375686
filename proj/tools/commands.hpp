#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace cwave::cli {

// Exit codes shared by every subcommand:
//   0  success
//   1  configuration or input error
//   2  anchor point inside the domain
//   3  horizon below observation time
//   4  time step violates the stability limit
//   5  determinant condition failed
//   6  empty ensemble
//   7  tau list must increase
//   8  geometry checks failed
struct Overrides {
  std::optional<std::filesystem::path> output;
  std::optional<std::uint64_t> seed;
};

int cmd_check_geometry(const std::filesystem::path& config, const Overrides& ov);
int cmd_simulate(const std::filesystem::path& config, const Overrides& ov);
int cmd_recover(const std::filesystem::path& config, const Overrides& ov);
int cmd_stability_probe(const std::filesystem::path& config, const Overrides& ov);
int cmd_carleman(const std::filesystem::path& config, const Overrides& ov);
int cmd_observability(const std::filesystem::path& config, const Overrides& ov);

}  // namespace cwave::cli
