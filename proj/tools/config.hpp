#ifndef CORRSET_TOOLS_CONFIG_HPP
#define CORRSET_TOOLS_CONFIG_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "corrset/cylinder.hpp"
#include "corrset/measure.hpp"
#include "corrset/numbers.hpp"
#include "corrset/reclab.hpp"

namespace corrset::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct SynthesizeParams {
  int stages = 0;
  std::optional<std::uint64_t> bits;  // default: full S_stages
  bool ascii = false;
};

struct VerifyParams {
  std::vector<std::uint64_t> n_grid;    // explicit, strictly increasing
  std::optional<int> stage_boundaries;  // or: boundaries S_1..S_J
  std::vector<std::vector<std::uint64_t>> tuples;
  std::optional<std::string> prefix_file;
};

struct DensitiesParams {
  enum class Folner { initial, shifted_squares };
  Folner folner = Folner::initial;
  int n_max = 0;
  std::vector<std::uint64_t> defect_t;
  std::optional<std::string> prefix_file;
  std::optional<std::uint64_t> bits;  // stream length when no file is given
};

struct ReclabParams {
  std::string experiment;  // recurrence|nice_recurrence|nice_intersectivity|r3|transfer
  std::optional<ShiftSet> r_set;
  std::optional<Rat> eps;
  std::uint64_t r_max = 0;
  std::uint64_t n = 0;      // finite-N window for set-side densities
  std::uint64_t n_max = 0;  // r3 range
  std::optional<Cylinder> target;
  std::optional<std::string> prefix_file;
};

struct DecomposeParams {};

struct RunConfig {
  std::string command;
  unsigned precision = kDefaultRealDigits;
  std::optional<ShiftMeasure> measure;
  json measure_echo;  // verbatim copy for deterministic manifests
  std::variant<SynthesizeParams, VerifyParams, DensitiesParams, ReclabParams,
               DecomposeParams>
      params;
};

// Parses and validates a config document. command_hint, when nonempty, must
// agree with the config's own "command" field (which is then optional).
RunConfig parse_config(const std::string& text, const std::string& command_hint = "");

ShiftMeasure measure_from_json(const json& j, unsigned precision);
json measure_to_json(const ShiftMeasure& nu, unsigned precision);

}  // namespace corrset::cli

#endif
