#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "corrset/errors.hpp"

namespace {

using corrset::cli::json;

void print_error(const std::string& kind, const std::string& message) {
  json j;
  j["schema_version"] = corrset::cli::kSchemaVersion;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  std::cout << j.dump(2) << "\n";
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw corrset::ValidationError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrset: explicit sets realizing shift-measure correlations"};
  app.require_subcommand(1);

  std::string config_path;
  corrset::cli::RunOptions options;
  std::uint64_t max_bits = 0;

  const std::vector<std::string> commands{"synthesize", "verify", "densities",
                                          "reclab", "decompose"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", options.out_dir, "output directory (default: .)");
    sub->add_option("--format", options.format, "csv | json | both (default: both)");
    sub->add_option("--max-bits", max_bits, "stream length budget in bits");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  if (max_bits > 0) options.max_bits = max_bits;

  try {
    corrset::set_real_precision(corrset::kDefaultRealDigits);
    auto config = corrset::cli::parse_config(slurp(config_path), command);
    corrset::set_real_precision(config.precision);
    corrset::cli::run_command(config, options);
    return 0;
  } catch (const corrset::ValidationError& e) {
    print_error("validation", e.what());
    return 1;
  } catch (const corrset::ResourceError& e) {
    print_error("resource", e.what());
    return 2;
  } catch (const corrset::InternalError& e) {
    print_error("internal", e.what());
    return 3;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 3;
  }
}
