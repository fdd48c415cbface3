#pragma once

#include <filesystem>

#include "gestdyn/run_config.hpp"

namespace gestdyn {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDiverged = 3;

struct CommandOptions {
  Json config;  // merged config document (file + --set overrides)
  std::filesystem::path out_dir = ".";
  int jobs = 0;  // <= 0: hardware parallelism
};

int cmd_simulate(const CommandOptions& opts);
int cmd_sweep(const CommandOptions& opts);
int cmd_forces(const CommandOptions& opts);
int cmd_powerlaw(const CommandOptions& opts);
int cmd_fit(const CommandOptions& opts);
int cmd_reproduce(const CommandOptions& opts, int figure);

}  // namespace gestdyn
