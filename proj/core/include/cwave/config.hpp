#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cwave/carleman.hpp"
#include "cwave/family.hpp"
#include "cwave/field.hpp"
#include "cwave/grid.hpp"
#include "cwave/recovery.hpp"

namespace cwave {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Structured text: [section] headers, key = value lines, # comments.
class Config {
 public:
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_string(const std::string& text);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int_or(const std::string& section, const std::string& key, int fallback) const;
  std::uint64_t get_seed_or(const std::string& section, const std::string& key,
                            std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& section, const std::string& key) const;
  std::vector<std::string> get_tokens(const std::string& section, const std::string& key) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// One coefficient or profile component: a named preset or a sampled file.
struct FieldSpec {
  enum class Kind { constant, bump, sine, file };
  Kind kind = Kind::constant;
  double base = 0.0;
  double amplitude = 0.0;
  int mode = 1;
  std::filesystem::path path;

  ScalarField realize(const Grid& grid) const;
};
FieldSpec parse_field_spec(const std::vector<std::string>& tokens, const std::string& where);

struct CoefficientsSpec {
  FieldSpec c;
  FieldSpec q1;
  FieldSpec q0;
  std::array<FieldSpec, 3> q;

  CoefficientSet realize(const Grid& grid) const;
};

enum class FamilyKind { example1, example2, example3, solved };
enum class InverseMode { standard, remark1 };

struct FamilySpec {
  FamilyKind kind = FamilyKind::example1;
  double a = -1.0;             // kind-3 reflection factor
  int pairs_kind = 1;          // solved mode: which closed-form pairs seed the solves
  bool matched_boundary = true;  // solved mode: member traces as boundary data
};

struct InverseSpec {
  InverseMode mode = InverseMode::standard;
  std::optional<double> r0;  // absent: half the smallest closed-form |det|
  int ensemble = 10;
  std::uint64_t seed = 1;
  double amplitude = 1.0;
  int modes = 4;
};

struct GeometrySpec {
  std::array<double, 3> x0{};
  double rc = 0.9;
  double sigma = 0.0;  // 0: default m0/2
};

struct CarlemanSpec {
  std::vector<double> taus;
  CarlemanConstants constants;
};

struct ExperimentConfig {
  GridSpec grid;
  GeometrySpec geometry;
  CoefficientsSpec truth;
  CoefficientsSpec guess;
  FamilySpec family;
  InverseSpec inverse;
  CarlemanSpec carleman;
  std::filesystem::path output_dir;
};

// Parses and validates every block the experiments need; throws ConfigError
// with the offending section.key in the message.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
ExperimentConfig experiment_from_config(const Config& cfg);

}  // namespace cwave
