#ifndef CORRSET_TOOLS_COMMANDS_HPP
#define CORRSET_TOOLS_COMMANDS_HPP

#include <filesystem>
#include <optional>
#include <string>

#include "config.hpp"

namespace corrset::cli {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::string format = "both";  // csv | json | both
  std::optional<std::uint64_t> max_bits;
};

// Executes the configured command, writing artifacts into out_dir.
void run_command(const RunConfig& config, const RunOptions& options);

}  // namespace corrset::cli

#endif
